#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"
#include "dnls/profiles.hpp"

namespace dnls {

struct ConservedSet {
  double mass = 0;
  double energy = 0;
  double momentum = 0;
  double action = 0;  // E + (omega/2) M + (c/2) P
};

ConservedSet conserved_set(const ComplexGrid& u, const WaveContext& ctx);

// 4 g eta3 sqrt((k^2 + beta^2) / ((1 + beta^2) beta^2)); equals 8 identically.
double mass_prefactor(const TorusProfile& p);
// G(mu, k) = K E(mu, k') - K F(mu, k') + E F(mu, k'), mu = asin(beta / sqrt(beta^2 + k^2))
double mass_G(double mu, const Modulus& k);
double mass_G(const TorusProfile& p);
double torus_mass_closed(const TorusProfile& p);
// soliton_mass - torus_mass, accurate when both round to the same double.
double torus_mass_gap(const TorusProfile& p);

double quadrature_mass(const RealGrid& phi);
double quadrature_mass(const ComplexGrid& u);
double soliton_mass(const WaveContext& ctx);
// 2 * integral_L^inf Phi^2, adaptive Gauss-Kronrod.
double soliton_tail_mass(const WaveContext& ctx, double L);

// d = Phi^L - Phi and its first three derivatives on the periodic grid.
// d'' = Q(Phi^L, Phi) d exactly, so no spectral noise enters the gaps.
std::array<RealGrid, 4> gap_derivative_grids(const TorusProfile& p, std::size_t n);

struct ConvergenceRow {
  double L = 0;
  double eta3 = 0;
  double gap = 0;  // alpha1 - eta3
  double k = 0;
  double k_prime = 0;
  double beta_sq = 0;
  double mass_torus = 0;
  double mass_gap = 0;  // |mass_torus - soliton mass|
  std::array<double, 4> pointwise{};  // Phi^L - Phi at x = 0, 0.5, 1, 2
  std::array<double, 4> h_m_gaps{};   // m = 0..3
  std::array<double, 3> sup_gaps{};   // m = 0..2
  std::array<double, 4> h_m_norms{};  // ||Phi^L||_{H^m}, m = 0..3
  double ode_residual = 0;
  std::size_t n = 0;
  bool error = false;
  std::string message;
};

inline constexpr std::array<double, 4> kPointwiseX{0.0, 0.5, 1.0, 2.0};

ConvergenceRow convergence_row(const WaveContext& ctx, double L, int m_max, std::size_t n);
std::vector<ConvergenceRow> convergence_study(const WaveContext& ctx, const std::vector<double>& L_list,
                                              int m_max, std::size_t n = 2048, unsigned jobs = 1);

// G_a(u) = exp(i a J(u)) u, J(u) the mean-zero primitive of |u|^2 - mean |u|^2.
ComplexGrid gauge_transform(const ComplexGrid& u, double a);
RealGrid gauge_primitive(const ComplexGrid& u);

struct GaugeErrorRecord {
  double mu = 0;
  double psi_v = 0;
  std::array<double, 3> e_norms{};  // H^0..H^2
};

GaugeErrorRecord gauge_error(const ComplexGrid& v, double L);

}  // namespace dnls
