#include "dnls/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this m1 * e^{2u} the first-order expansion of sn, dn about k = 1
// beats direct subtraction.
constexpr double kPerturbativeScale = 1e-8;

// 4 omega - c^2 without cancellation near the massless line
double soliton_kappa_sq(const WaveContext& c) {
  return 4 * c.omega * (1 - c.s) * (1 + c.s);
}

}  // namespace

SolitonProfile make_soliton(const WaveContext& ctx) {
  return {ctx, ctx.massless ? SolitonBranch::massless : SolitonBranch::generic};
}

double soliton_sq(const SolitonProfile& sp, double x) {
  const WaveContext& c = sp.ctx;
  if (sp.branch == SolitonBranch::massless) {
    const double cx = c.c * x;
    return 4 * c.c / (cx * cx + 1);
  }
  // cosh(kx) - s = (1 + t^2 - 2 s t) / (2t), t = e^{-k|x|}
  const double kappa = std::sqrt(soliton_kappa_sq(c));
  const double t = std::exp(-kappa * std::abs(x));
  const double den = (1 - t) * (1 - t) + 2 * t * (1 - c.s);
  return soliton_kappa_sq(c) / std::sqrt(c.omega) * 2 * t / den;
}

double soliton_eval(const SolitonProfile& sp, double x) { return std::sqrt(soliton_sq(sp, x)); }

std::array<double, 4> soliton_derivatives(const SolitonProfile& sp, double x) {
  // Phi = sqrt(a) D^{-1/2}; r_j = D^{(j)} / D
  const WaveContext& c = sp.ctx;
  const double phi = soliton_eval(sp, x);
  double r1, r2, r3;
  if (sp.branch == SolitonBranch::massless) {
    const double c2 = c.c * c.c;
    const double D = c2 * x * x + 1;
    r1 = 2 * c2 * x / D;
    r2 = 2 * c2 / D;
    r3 = 0;
  } else {
    const double kappa = std::sqrt(soliton_kappa_sq(c));
    const double t = std::exp(-kappa * std::abs(x));
    const double den = (1 - t) * (1 - t) + 2 * t * (1 - c.s);
    const double sg = x < 0 ? -1.0 : 1.0;
    const double odd = sg * (1 - t * t) / den;  // sinh / (cosh - s)
    const double even = (1 + t * t) / den;      // cosh / (cosh - s)
    r1 = kappa * odd;
    r2 = kappa * kappa * even;
    r3 = kappa * kappa * kappa * odd;
  }
  const double d1 = -0.5 * phi * r1;
  const double d2 = phi * (0.75 * r1 * r1 - 0.5 * r2);
  const double d3 = phi * (-1.875 * r1 * r1 * r1 + 2.25 * r1 * r2 - 0.5 * r3);
  return {phi, d1, d2, d3};
}

TorusEvaluator::TorusEvaluator(const TorusProfile& p) : p_(p), jac_(p.k) {}

double TorusEvaluator::psi(double x) const {
  const double xr = std::remainder(x, 2 * p_.L);
  const auto t = jac_(xr / (2 * p_.g));
  return p_.eta3 * t.dn * t.dn / (1 + p_.beta_sq * t.sn * t.sn);
}

double TorusEvaluator::phi(double x) const { return std::sqrt(psi(x)); }

double TorusEvaluator::psi_derivative(double x) const {
  const double xr = std::remainder(x, 2 * p_.L);
  const auto t = jac_(xr / (2 * p_.g));
  const double S = t.sn * t.sn, D = t.dn * t.dn;
  const double den = 1 + p_.beta_sq * S;
  // d/du [D / (1 + b S)] with D' = -2k^2 sn cn dn, S' = 2 sn cn dn
  const double dpsi_du = -2 * p_.eta3 * t.sn * t.cn * t.dn * (p_.k.k_sq() * den + p_.beta_sq * D) / (den * den);
  return dpsi_du / (2 * p_.g);
}

double torus_profile_eval(const TorusProfile& p, double x) { return TorusEvaluator(p).phi(x); }

double first_integral_residual(const TorusProfile& p, double x) {
  const TorusEvaluator ev(p);
  const double psi = ev.psi(x);
  const double dpsi = ev.psi_derivative(x);
  const double P = psi * (psi - p.eta1) * (psi - p.eta2) * (p.eta3 - psi);
  return std::abs(dpsi * dpsi - 0.25 * P);
}

GapEvaluator::GapEvaluator(const TorusProfile& p) : ev_(p), sol_(make_soliton(p.ctx)) {
  const WaveContext& c = p.ctx;
  if (c.massless) return;
  const auto n = detail::normalized(c, p.gap);
  const double s = c.s, rw = std::sqrt(c.omega);
  B_ = (1 + s) / (1 - s);
  beta_minus_B_ = ((1 - s) * (-n.eps - n.e2) - (1 + s) * n.dsf) / (n.sf * (1 - s));
  // 1/(2g) - q
  const double lim = (1 - s) * (1 + s);
  rate_gap_ = rw * ((1 + s) * n.dsf - n.eps * n.sf) / (std::sqrt(n.eta * n.sf) + std::sqrt(lim));
  q_ = rw * std::sqrt(lim);
}

double GapEvaluator::operator()(double x) const {
  const TorusProfile& p = ev_.profile();
  const double direct_torus = ev_.phi(x);
  const double direct_sol = soliton_eval(sol_, x);
  const double m1 = p.k.k_prime_sq();
  const double u = x / (2 * p.g);
  if (p.ctx.massless || std::abs(x) > p.L || m1 * std::exp(2 * std::abs(u)) >= kPerturbativeScale)
    return direct_torus - direct_sol;

  // psi_L - psi = T1 + T2 + T3 + T4: amplitude, beta^2 vs B, Jacobi vs
  // hyperbolic at k = 1, and the rate 1/(2g) vs q.
  const double B = B_;
  const double y = q_ * x;
  const double ch = std::cosh(u), sh = std::sinh(u), th = std::tanh(u), se = 1 / ch;
  const double dsn = 0.25 * m1 * (sh * ch - u) * se * se;
  const double ddn = 0.25 * m1 * (sh * ch + u) * th * se;
  const double sn = th + dsn, dn = se + ddn;
  const double Sk = sn * sn, Dk = dn * dn, S1 = th * th, D1 = se * se;
  const double dD = ddn * (dn + se), dS = dsn * (sn + th);
  const double bk = 1 + p.beta_sq * Sk, Bk = 1 + B * Sk, B1 = 1 + B * S1;
  const double a1 = p.ctx.alpha1;

  const double t1 = -p.gap * Dk / bk;
  const double t2 = -a1 * Dk * beta_minus_B_ * Sk / (bk * Bk);
  const double t3 = a1 * (dD * B1 - D1 * B * dS) / (Bk * B1);
  auto h = [B](double v) {
    const double cv = std::cosh(v), sv = std::sinh(v);
    return 1 / (cv * cv + B * sv * sv);
  };
  const double t4 = a1 * (1 + B) * std::sinh(-rate_gap_ * x) * std::sinh(y + u) * h(u) * h(y);
  const double out = (t1 + t2 + t3 + t4) / (direct_torus + direct_sol);
  return std::isfinite(out) ? out : direct_torus - direct_sol;
}

double profile_gap(const TorusProfile& p, double x) { return GapEvaluator(p)(x); }

RealGrid sample_torus(const TorusProfile& p, std::size_t n) {
  const TorusEvaluator ev(p);
  return RealGrid::sample(p.L, n, [&](double x) { return ev.phi(x); });
}

RealGrid sample_soliton(const SolitonProfile& s, double half_length, std::size_t n) {
  return RealGrid::sample(half_length, n, [&](double x) { return soliton_eval(s, x); });
}

double snap_speed(double c, double L) {
  if (!(L > 0.0) || !std::isfinite(L) || !std::isfinite(c))
    throw std::invalid_argument("snap_speed needs finite c and L > 0");
  const double step = 2 * kPi / L;
  return std::floor(c / step + 0.5) * step;
}

namespace {

void check_speed(const TorusProfile& p, double c_L) {
  const double q = c_L * p.L / (2 * kPi);
  if (std::abs(q - std::round(q)) > 1e-12 * std::max(1.0, std::abs(q)))
    throw LatticeError("speed is not on the lattice (2 pi / L) Z");
  if (std::abs(p.ctx.c - c_L) > 1e-12 * std::max(1.0, std::abs(c_L)))
    throw ConsistencyError("profile was built for a different speed than c_L");
}

}  // namespace

cplx traveling_wave_eval(const TorusProfile& p, double c_L, double t, double x) {
  check_speed(p, c_L);
  const double xi = x - c_L * t;
  const double phase = p.ctx.omega * t + 0.5 * c_L * xi;
  return std::polar(torus_profile_eval(p, xi), phase);
}

ComplexGrid sample_traveling_wave(const TorusProfile& p, double c_L, double t, std::size_t n) {
  check_speed(p, c_L);
  const TorusEvaluator ev(p);
  return ComplexGrid::sample(p.L, n, [&](double x) {
    const double xi = x - c_L * t;
    return std::polar(ev.phi(xi), p.ctx.omega * t + 0.5 * c_L * xi);
  });
}

double ell_residual(const WaveContext& ctx, const RealGrid& phi) {
  const RealGrid d2 = derivative_grid(phi, 2);
  const double lin = ctx.omega * (1 - ctx.s) * (1 + ctx.s);
  double worst = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double f = phi[j], f2 = f * f;
    const double r = -d2[j] + f * (lin + f2 * (0.5 * ctx.c - 0.1875 * f2));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double ode_residual(const TorusProfile& p, const RealGrid& grid) {
  require_same_grid(grid.half_length(), grid.size(), p.L, grid.size());
  const TorusEvaluator ev(p);
  const double tol = 1e-12 * std::sqrt(p.eta3);
  for (std::size_t j : {std::size_t{0}, grid.size() / 4, grid.size() / 2})
    if (std::abs(grid[j] - ev.phi(grid.x(j))) > tol)
      throw ConsistencyError("grid samples do not match the profile");
  return ell_residual(p.ctx, grid);
}

AdaptiveResidual adaptive_ode_residual(const TorusProfile& p, std::size_t n_start, std::size_t n_max) {
  AdaptiveResidual best{n_start, ode_residual(p, sample_torus(p, n_start))};
  for (std::size_t n = 2 * n_start; n <= n_max; n *= 2) {
    const double r = ode_residual(p, sample_torus(p, n));
    const bool improved = r < 0.1 * best.residual;
    if (r < best.residual) best = {n, r};
    if (!improved) break;
  }
  return best;
}

}  // namespace dnls
