#pragma once

#include <array>
#include <cstddef>

#include "dnls/elliptic.hpp"
#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

enum class SolitonBranch { generic, massless };

struct SolitonProfile {
  WaveContext ctx;
  SolitonBranch branch;
};

SolitonProfile make_soliton(const WaveContext& ctx);
double soliton_sq(const SolitonProfile& s, double x);
double soliton_eval(const SolitonProfile& s, double x);
// Phi and its first three x-derivatives, analytic.
std::array<double, 4> soliton_derivatives(const SolitonProfile& s, double x);

// Holds the Jacobi evaluator for one profile; cheap repeated evaluation.
class TorusEvaluator {
 public:
  explicit TorusEvaluator(const TorusProfile& p);

  double psi(double x) const;
  double phi(double x) const;
  double psi_derivative(double x) const;
  const TorusProfile& profile() const { return p_; }

 private:
  TorusProfile p_;
  elliptic::JacobiEvaluator jac_;
};

double torus_profile_eval(const TorusProfile& p, double x);
double first_integral_residual(const TorusProfile& p, double x);

// Phi^L(x) - Phi(x) for |x| <= L, accurate even when both round to the same
// double (generic branch, k' tiny).
double profile_gap(const TorusProfile& p, double x);

class GapEvaluator {
 public:
  explicit GapEvaluator(const TorusProfile& p);
  double operator()(double x) const;
  const TorusEvaluator& torus() const { return ev_; }
  const SolitonProfile& soliton() const { return sol_; }

 private:
  TorusEvaluator ev_;
  SolitonProfile sol_;
  double B_ = 0, beta_minus_B_ = 0, rate_gap_ = 0, q_ = 0;
};

RealGrid sample_torus(const TorusProfile& p, std::size_t n);
RealGrid sample_soliton(const SolitonProfile& s, double half_length, std::size_t n);

double snap_speed(double c, double L);
cplx traveling_wave_eval(const TorusProfile& p, double c_L, double t, double x);
ComplexGrid sample_traveling_wave(const TorusProfile& p, double c_L, double t, std::size_t n);

// max |-Phi'' + (omega - c^2/4) Phi + (c/2) Phi^3 - (3/16) Phi^5| on the grid,
// Phi'' spectral.
double ell_residual(const WaveContext& ctx, const RealGrid& phi);
double ode_residual(const TorusProfile& p, const RealGrid& grid);

struct AdaptiveResidual {
  std::size_t n;
  double residual;
};
// Doubles n from n_start until the residual stops improving tenfold or n_max.
AdaptiveResidual adaptive_ode_residual(const TorusProfile& p, std::size_t n_start = 2048,
                                       std::size_t n_max = 65536);

}  // namespace dnls
