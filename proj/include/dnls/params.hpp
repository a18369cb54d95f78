#pragma once

#include <array>

#include "dnls/elliptic.hpp"
#include "dnls/errors.hpp"

namespace dnls {

using elliptic::Modulus;

// Within this relative distance of omega = c^2/4 (c > 0) the context is
// treated as massless and s is pinned to 1.
inline constexpr double kMasslessTolerance = 1e-12;
// Within this distance of alpha1 the massless modulus uses the
// cancellation-free square-root form.
inline constexpr double kMasslessSafeGap = 1e-6;

struct WaveContext {
  double omega = 0;
  double c = 0;      // pinned to 2 sqrt(omega) when massless
  double s = 0;      // c = 2 s sqrt(omega)
  double sigma = 0;  // 4 sqrt(omega), the amplitude scale
  double alpha0 = 0;
  double alpha1 = 0;
  double beta0 = 0;
  double beta1 = 0;
  double beta_span = 0;  // beta1 - beta0, computed without cancellation
  double L0 = 0;
  double T0 = 0;
  bool massless = false;

  double amplitude_span() const { return sigma * beta_span; }  // alpha1 - alpha0
};

WaveContext make_context(double omega, double c);

struct Roots {
  double eta1;
  double eta2;
  double A;
};

struct Shape {
  Modulus k;
  double g;
  double beta_sq;
};

// The profile is parameterized internally by gap = alpha1 - eta3, which stays
// representable long after eta3 itself has rounded to alpha1.
struct TorusProfile {
  WaveContext ctx;
  double gap = 0;
  double eta1 = 0;
  double eta2 = 0;
  double eta3 = 0;
  double A = 0;
  Modulus k;
  double K = 0;  // K(k), cached
  double g = 0;
  double beta_sq = 0;
  double T = 0;
  double L = 0;
  double C_psi = 0;
};

Roots roots_from_eta3(const WaveContext& ctx, double eta3);
Shape shape_from_eta3(const WaveContext& ctx, double eta3);
double period_from_eta3(const WaveContext& ctx, double eta3);

Roots roots_from_gap(const WaveContext& ctx, double gap);
Shape shape_from_gap(const WaveContext& ctx, double gap);
double period_from_gap(const WaveContext& ctx, double gap);

// Profile with the given gap; L is set to T/2.
TorusProfile profile_from_gap(const WaveContext& ctx, double gap);
TorusProfile solve_eta3(const WaveContext& ctx, double L);

// Relative residuals of the three symmetric-function identities.
std::array<double, 3> vieta_residuals(const TorusProfile& p);

enum class Sign { negative = -1, zero = 0, positive = 1 };

// k^2 in normalized variables (eta = eta3 / (4 sqrt(omega))).
double modulus_sq_normalized(double s, double eta);
double modulus_slope(double s, double eta);
double period_slope_bracket(double s, double eta);
Sign period_slope_sign(double s, double eta);
// (4/9)(-s^4 + (3+s^2)^{3/2} s + 9)
double slope_bound_h(double s);
double normalized_beta0(double s);

struct LongPeriodLimits {
  double eta1;
  double eta2;
  double inv_2g;
  double k;
  double beta_sq;  // 0 and unused when beta_sq_unbounded
  bool beta_sq_unbounded;
  double mu1;
};

LongPeriodLimits long_period_limits(const WaveContext& ctx);

namespace detail {

// Roots in units of sigma, as functions of eps = gap / sigma.
struct Normalized {
  double eps;
  double eta;
  double sf;        // sqrt(f_s(eta)) = e2 - e1
  double dsf;       // sf - (1 - s)
  double e1, e2;
  double de1;       // e1 - (s - 1)
  double eta_m_e1;
  double eta_m_e2;
};

Normalized normalized(const WaveContext& ctx, double gap);

}  // namespace detail

}  // namespace dnls
