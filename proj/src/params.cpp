#include "dnls/params.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

void check_gap(const WaveContext& ctx, double gap) {
  if (!(gap > 0.0 && gap < ctx.amplitude_span()))
    throw RangeError(fmt("eta3 must lie strictly inside (alpha0, alpha1) = (%.17g, %.17g)",
                         ctx.alpha0, ctx.alpha1));
}

double gap_of(const WaveContext& ctx, double eta3) {
  if (!(eta3 > ctx.alpha0 && eta3 < ctx.alpha1))
    throw RangeError(fmt("eta3 = %.17g outside (alpha0, alpha1) = (%.17g, %.17g)", eta3,
                         ctx.alpha0, ctx.alpha1));
  return ctx.alpha1 - eta3;
}

double span_of(double s) { return 2 * (1 + s) / (3 + s + std::sqrt(3 + s * s)); }

void check_normalized(double s, double eta) {
  if (!(s > -1.0 && s <= 1.0)) throw RangeError("s must lie in (-1, 1]");
  const double b0 = normalized_beta0(s);
  if (!(eta > b0 && eta < 1.0 + s))
    throw RangeError(fmt("eta = %.17g outside (beta0, beta1) = (%.17g, %.17g)", eta, b0, 1 + s));
}

}  // namespace

double normalized_beta0(double s) { return (2 * s + std::sqrt(3 + s * s)) / 3; }

WaveContext make_context(double omega, double c) {
  if (!std::isfinite(omega) || !std::isfinite(c))
    throw AdmissibilityError("omega and c must be finite");
  if (!(omega > 0.0))
    throw AdmissibilityError("admissibility (WC) requires omega > 0");
  const double excess = omega - 0.25 * c * c;
  WaveContext ctx;
  ctx.omega = omega;
  const double rw = std::sqrt(omega);
  if (std::abs(excess) <= kMasslessTolerance * omega) {
    if (!(c > 0.0))
      throw AdmissibilityError("admissibility (WC): omega = c^2/4 requires c > 0");
    ctx.massless = true;
    ctx.s = 1.0;
    ctx.c = 2 * rw;
  } else if (excess < 0.0) {
    throw AdmissibilityError(
        fmt("admissibility (WC) violated: omega = %.17g < c^2/4 = %.17g", omega, 0.25 * c * c));
  } else {
    ctx.c = c;
    ctx.s = c / (2 * rw);
  }
  const double s = ctx.s;
  ctx.sigma = 4 * rw;
  ctx.beta1 = 1 + s;
  ctx.beta0 = normalized_beta0(s);
  ctx.beta_span = span_of(s);
  ctx.alpha1 = ctx.sigma * ctx.beta1;
  ctx.alpha0 = ctx.sigma * ctx.beta0;
  // f_s(beta0) = 3 + s^2 exactly, so alpha0 sqrt(A(alpha0)) = sigma^2 beta0 r
  const double r = std::sqrt(3 + s * s);
  const double b0r = s > 0 ? (2 * s + r) * r / 3 : r * (1 - s * s) / (r - 2 * s);
  ctx.L0 = 2 * kPi / (ctx.sigma * std::sqrt(b0r));
  ctx.T0 = 2 * ctx.L0;
  return ctx;
}

namespace detail {

Normalized normalized(const WaveContext& ctx, double gap) {
  check_gap(ctx, gap);
  const double s = ctx.s;
  Normalized n;
  n.eps = gap / ctx.sigma;
  n.eta = ctx.beta1 - n.eps;
  const double t = n.eps * (6 + 2 * s - 3 * n.eps);
  n.sf = std::sqrt((1 - s) * (1 - s) + t);
  n.dsf = t / (n.sf + (1 - s));
  n.e2 = 0.5 * (n.eps + n.dsf);
  n.e1 = -0.5 * ((1 - s) + n.sf - n.eps);
  n.de1 = 0.5 * (n.eps - n.dsf);
  n.eta_m_e1 = 0.5 * (3 * n.eta - 2 * s + n.sf);
  // (eta - e1)(eta - e2) = 3 (eta - beta0)(eta - beta0^-)
  const double eta_m_b0 = ctx.beta_span - n.eps;
  const double eta_m_b0m = n.eta - (2 * s - std::sqrt(s * s + 3)) / 3;
  n.eta_m_e2 = 3 * eta_m_b0 * eta_m_b0m / n.eta_m_e1;
  return n;
}

}  // namespace detail

Roots roots_from_gap(const WaveContext& ctx, double gap) {
  const auto n = detail::normalized(ctx, gap);
  return {ctx.sigma * n.e1, ctx.sigma * n.e2, ctx.sigma * ctx.sigma * n.sf * n.sf};
}

Shape shape_from_gap(const WaveContext& ctx, double gap) {
  const auto n = detail::normalized(ctx, gap);
  Modulus k;
  if (ctx.massless && gap < kMasslessSafeGap) {
    const double r = 3 * std::sqrt(n.eps) / (2 * std::sqrt(8 - 3 * n.eps));
    k = Modulus::from_squares(0.5 - r, 0.5 + r);
  } else {
    k = Modulus::from_squares(-n.e1 * n.eta_m_e2, n.e2 * n.eta_m_e1);
  }
  const double g = 2 / (ctx.sigma * std::sqrt(n.eta * n.sf));
  return {k, g, n.eta_m_e2 / n.sf};
}

double period_from_gap(const WaveContext& ctx, double gap) {
  const Shape sh = shape_from_gap(ctx, gap);
  return 4 * sh.g * elliptic::complete_K(sh.k);
}

Roots roots_from_eta3(const WaveContext& ctx, double eta3) {
  return roots_from_gap(ctx, gap_of(ctx, eta3));
}
Shape shape_from_eta3(const WaveContext& ctx, double eta3) {
  return shape_from_gap(ctx, gap_of(ctx, eta3));
}
double period_from_eta3(const WaveContext& ctx, double eta3) {
  return period_from_gap(ctx, gap_of(ctx, eta3));
}

TorusProfile profile_from_gap(const WaveContext& ctx, double gap) {
  const auto n = detail::normalized(ctx, gap);
  const Shape sh = shape_from_gap(ctx, gap);
  TorusProfile p;
  p.ctx = ctx;
  p.gap = gap;
  p.eta1 = ctx.sigma * n.e1;
  p.eta2 = ctx.sigma * n.e2;
  p.eta3 = ctx.alpha1 - gap;
  p.A = ctx.sigma * ctx.sigma * n.sf * n.sf;
  p.k = sh.k;
  p.K = elliptic::complete_K(sh.k);
  p.g = sh.g;
  p.beta_sq = sh.beta_sq;
  p.T = 4 * p.g * p.K;
  p.L = 0.5 * p.T;
  p.C_psi = p.eta1 * p.eta2 * p.eta3 / 32;
  return p;
}

TorusProfile solve_eta3(const WaveContext& ctx, double L) {
  if (!std::isfinite(L) || !(L > ctx.L0))
    throw NoSingleBumpError(
        fmt("no single-bump profile: L = %.17g must exceed L0 = %.17g", L, ctx.L0), L, ctx.L0);
  const double target = 2 * L;
  const double span = ctx.amplitude_span();
  auto residual = [&](double gap) {
    return gap >= span ? ctx.T0 - target : period_from_gap(ctx, gap) - target;
  };

  // T decreases from +inf to T0 as gap runs over (0, span).
  double hi = span;
  double lo = span * 1e-16;
  double f_lo = residual(lo);
  while (f_lo <= 0) {
    hi = lo;
    lo *= 1e-16;
    if (!(lo > std::numeric_limits<double>::min()))
      throw RangeError(fmt("L = %.17g is beyond the binary64 range of alpha1 - eta3", L));
    f_lo = residual(lo);
  }
  double f_hi = residual(hi);

  // Bisection in log(gap) until the bracket is narrow, then Illinois steps.
  double y_lo = std::log(lo), y_hi = std::log(hi);
  while (y_hi - y_lo > 1e-6 * std::max(1.0, std::abs(y_lo))) {
    const double y = 0.5 * (y_lo + y_hi);
    const double f = residual(std::exp(y));
    if (f > 0) {
      y_lo = y;
      f_lo = f;
    } else {
      y_hi = y;
      f_hi = f;
    }
  }
  int side = 0;
  double best = f_lo < -f_hi ? y_lo : y_hi;
  double f_best = std::min(f_lo, -f_hi);
  for (int it = 0; it < 200 && f_best > 1e-15 * target; ++it) {
    double y = (y_lo * f_hi - y_hi * f_lo) / (f_hi - f_lo);
    if (!(y > y_lo && y < y_hi)) y = 0.5 * (y_lo + y_hi);
    if (y <= y_lo || y >= y_hi) break;  // bracket exhausted
    const double f = residual(std::exp(y));
    if (std::abs(f) < f_best) {
      f_best = std::abs(f);
      best = y;
    }
    if (f > 0) {
      y_lo = y;
      f_lo = f;
      if (side == 1) f_hi *= 0.5;
      side = 1;
    } else {
      y_hi = y;
      f_hi = f;
      if (side == -1) f_lo *= 0.5;
      side = -1;
    }
  }
  const double gap = std::min(std::exp(best), std::nextafter(span, 0.0));
  TorusProfile p = profile_from_gap(ctx, gap);
  p.L = L;
  return p;
}

std::array<double, 3> vieta_residuals(const TorusProfile& p) {
  const double e1 = p.eta1, e2 = p.eta2, e3 = p.eta3;
  const WaveContext& c = p.ctx;
  const double quad = 16 * c.omega * (1 - c.s) * (1 + c.s);  // 16 (omega - c^2/4)
  const double r_sum =
      std::abs(e1 + e2 + e3 - 4 * c.c) / (std::abs(e1) + std::abs(e2) + std::abs(e3));
  const double pair = e2 * e3 + e1 * e3 + e1 * e2;
  const double r_pair =
      std::abs(pair + quad) / (std::abs(e2 * e3) + std::abs(e1 * e3) + std::abs(e1 * e2));
  const double prod = e1 * e2 * e3;
  const double r_prod = std::abs(prod - 32 * p.C_psi) / std::abs(prod);
  return {r_sum, r_pair, r_prod};
}

double modulus_sq_normalized(double s, double eta) {
  check_normalized(s, eta);
  const double sf = std::sqrt(-3 * eta * eta + 4 * s * eta + 4);
  return (3 * eta * eta + (sf - 6 * s) * eta + 2 * (s * s - 1)) / (2 * eta * sf);
}

double modulus_slope(double s, double eta) {
  check_normalized(s, eta);
  const double f = -3 * eta * eta + 4 * s * eta + 4;
  const double b = eta * eta * f;
  const double gs = -(eta - (s - 1)) * (eta - (s + 1));
  return eta / (b * std::sqrt(b)) * (6 * s * eta * gs + 4 * (1 - s * s));
}

double period_slope_bracket(double s, double eta) {
  check_normalized(s, eta);
  // modulus from the normalized roots (unit omega, gap measured from beta1)
  const double eps = 1 + s - eta;
  const double t = eps * (6 + 2 * s - 3 * eps);
  const double sf = std::sqrt((1 - s) * (1 - s) + t);
  const double e1 = -0.5 * ((1 - s) + sf - eps);
  const double e2 = 0.5 * (eps + t / (sf + (1 - s)));
  const Modulus m = Modulus::from_squares(-e1 * (eta - e2), e2 * (eta - e1));
  const double f = sf * sf;
  const double b = eta * eta * f;
  const double dk = modulus_slope(s, eta) / (2 * m.k);
  const double as = -3 * eta * eta + 3 * s * eta + 2;
  return elliptic::complete_K_derivative(m) * dk * b - elliptic::complete_K(m) * eta * as;
}

Sign period_slope_sign(double s, double eta) {
  const double v = period_slope_bracket(s, eta);
  return v > 0 ? Sign::positive : (v < 0 ? Sign::negative : Sign::zero);
}

double slope_bound_h(double s) {
  const double q = 3 + s * s;
  return 4.0 / 9.0 * (-s * s * s * s + q * std::sqrt(q) * s + 9);
}

LongPeriodLimits long_period_limits(const WaveContext& ctx) {
  LongPeriodLimits lim;
  const double rw = std::sqrt(ctx.omega);
  lim.eta1 = ctx.sigma * (ctx.s - 1);
  lim.eta2 = 0.0;
  if (ctx.massless) {
    lim.inv_2g = 0.0;
    lim.k = 1 / std::sqrt(2.0);
    lim.beta_sq = 0.0;
    lim.beta_sq_unbounded = true;
    lim.mu1 = kPi / 2;
  } else {
    lim.inv_2g = rw * std::sqrt((1 - ctx.s) * (1 + ctx.s));
    lim.k = 1.0;
    lim.beta_sq = (1 + ctx.s) / (1 - ctx.s);
    lim.beta_sq_unbounded = false;
    lim.mu1 = std::atan(std::sqrt(lim.beta_sq));
  }
  return lim;
}

}  // namespace dnls
