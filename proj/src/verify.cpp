#include "dnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dnls/elliptic.hpp"
#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/profiles.hpp"

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* pattern, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// Tracks the worst value and where it happened.
struct Worst {
  double value = 0;
  std::string where;
  void take(double v, const std::string& at) {
    if (!(v <= value)) {  // NaN wins too
      value = v;
      where = at;
    }
  }
};

SuiteResult finish(const char* name, const Worst& w, double threshold) {
  return {name, w.value, threshold, false, w.where};
}

std::vector<std::pair<double, double>> contexts_for(const VerifyOptions& o) {
  if (o.context) return {*o.context};
  return standard_contexts();
}

// Every (context, L) profile on the standard grid.
struct GridProfile {
  double omega, c, L;
  TorusProfile p;
};

std::vector<GridProfile> grid_profiles(const VerifyOptions& o) {
  std::vector<GridProfile> out;
  for (auto [w, c] : contexts_for(o)) {
    const WaveContext ctx = make_context(w, c);
    for (double L : standard_lengths(ctx.L0)) out.push_back({w, c, L, solve_eta3(ctx, L)});
  }
  return out;
}

std::string at(const GridProfile& g) { return fmt("omega=%g c=%g L=%g", g.omega, g.c, g.L); }

SuiteResult suite_legendre(const VerifyOptions&) {
  Worst w;
  for (int i = 0; i < 50; ++i) {
    const double kp = std::pow(10.0, -6 + 5.9 * i / 49.0);
    const auto m = elliptic::Modulus::from_complement(kp);
    const auto c = m.complement();
    const double K = elliptic::complete_K(m), E = elliptic::complete_E(m);
    const double Kc = elliptic::complete_K(c), Ec = elliptic::complete_E(c);
    w.take(std::abs(E * Kc + Ec * K - K * Kc - kPi / 2), fmt("k'=%.3e", kp));
  }
  return finish("legendre", w, 1e-12);
}

std::vector<elliptic::Modulus> identity_moduli() {
  using elliptic::Modulus;
  return {Modulus::from_k(0.0),   Modulus::from_k(1e-9),  Modulus::from_k(0.1),  Modulus::from_k(0.3),
          Modulus::from_k(0.5),   Modulus::from_k(0.7),   Modulus::from_k(0.9),  Modulus::from_complement(1e-2),
          Modulus::from_complement(1e-9), Modulus::from_complement(0.0)};
}

SuiteResult suite_jacobi(const VerifyOptions&) {
  Worst w;
  for (const auto& m : identity_moduli()) {
    const elliptic::JacobiEvaluator ev(m);
    for (int i = 0; i < 1000; ++i) {
      const double u = -25 + 50 * (i + 0.5) / 1000;
      const auto t = ev(u);
      const double r1 = std::abs(t.sn * t.sn + t.cn * t.cn - 1);
      const double r2 = std::abs(t.dn * t.dn + m.k_sq() * t.sn * t.sn - 1);
      w.take(std::max(r1, r2), fmt("k=%.17g u=%g", m.k, u));
    }
  }
  return finish("jacobi-identities", w, 1e-13);
}

SuiteResult suite_extremal(const VerifyOptions&) {
  using elliptic::Modulus;
  Worst w;
  for (int i = 0; i <= 200; ++i) {
    const double u = -10 + 20 * i / 200.0;
    for (const auto& m : {Modulus::from_k(0.0), Modulus::from_k(1e-10)}) {
      const auto t = elliptic::jacobi(u, m);
      w.take(std::max({std::abs(t.sn - std::sin(u)), std::abs(t.cn - std::cos(u)), std::abs(t.dn - 1)}),
             fmt("k=%g u=%g", m.k, u));
    }
    const double se = 1 / std::cosh(u);
    for (const auto& m : {Modulus::from_complement(0.0), Modulus::from_complement(1e-10)}) {
      const auto t = elliptic::jacobi(u, m);
      w.take(std::max({std::abs(t.sn - std::tanh(u)), std::abs(t.cn - se), std::abs(t.dn - se)}),
             fmt("k'=%g u=%g", m.k_prime, u));
    }
  }
  w.take(std::abs(elliptic::complete_K(0.0) - kPi / 2), "K(0)");
  w.take(std::abs(elliptic::complete_E(0.0) - kPi / 2), "E(0)");
  w.take(std::abs(elliptic::complete_E(1.0) - 1), "E(1)");
  return finish("extremal", w, 1e-12);
}

SuiteResult suite_k_quadrature(const VerifyOptions&) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  Worst w;
  for (int i = 0; i < 20; ++i) {
    const double k = 0.999 * i / 19.0;
    const double k2 = k * k;
    const double Kq = GK::integrate([k2](double t) { return 1 / std::sqrt(1 - k2 * std::sin(t) * std::sin(t)); },
                                    0.0, kPi / 2, 15, 1e-15);
    const double Eq = GK::integrate([k2](double t) { return std::sqrt(1 - k2 * std::sin(t) * std::sin(t)); },
                                    0.0, kPi / 2, 15, 1e-15);
    w.take(std::abs(elliptic::complete_K(k) - Kq) / Kq, fmt("K k=%g", k));
    w.take(std::abs(elliptic::complete_E(k) - Eq) / Eq, fmt("E k=%g", k));
  }
  return finish("k-quadrature", w, 1e-12);
}

SuiteResult suite_vieta(const VerifyOptions& o) {
  Worst w;
  for (const auto& g : grid_profiles(o)) {
    const auto r = vieta_residuals(g.p);
    w.take(std::max({r[0], r[1], r[2]}), at(g));
  }
  return finish("vieta", w, 1e-10);
}

// eta grid strictly inside (beta0, beta1) for each of 20 speeds s in (-1, 1]
template <class F>
void sweep_normalized(F&& f) {
  for (int i = 0; i < 20; ++i) {
    const double s = -1 + 0.1 * (i + 1);
    const double b0 = normalized_beta0(s), b1 = 1 + s;
    for (int j = 0; j < 200; ++j) f(s, b0 + (b1 - b0) * (j + 0.5) / 200, b0, b1, j);
  }
}

SuiteResult suite_monotonicity(const VerifyOptions&) {
  Worst w;
  double violations = 0;
  std::string first;
  auto bad = [&](const std::string& what) {
    if (violations == 0) first = what;
    violations += 1;
  };
  for (int i = 0; i < 20; ++i) {
    const double s = -1 + 0.1 * (i + 1);
    const WaveContext ctx = make_context(1, 2 * s);
    const double b0 = ctx.beta0, b1 = ctx.beta1;
    double prev_eta2 = kInf;
    for (int j = 0; j < 200; ++j) {
      const double eta = b0 + (b1 - b0) * (j + 0.5) / 200;
      if (!(modulus_slope(s, eta) > 0)) bad(fmt("modulus slope s=%g eta=%g", s, eta));
      if (period_slope_sign(s, eta) != Sign::positive) bad(fmt("period slope s=%g eta=%g", s, eta));
      const double gap = ctx.sigma * (b1 - eta);
      const double eta2 = roots_from_gap(ctx, gap).eta2;
      if (!(eta2 < prev_eta2)) bad(fmt("eta2 not decreasing s=%g eta=%g", s, eta));
      prev_eta2 = eta2;
    }
  }
  w.value = violations;
  w.where = violations > 0 ? first : "none";
  return finish("monotonicity", w, 0);
}

}  // namespace

double central_difference(const std::function<double(double)>& f, double x, double h) {
  // one Richardson step: the boundary layer near eta = beta1 makes O(h^2) too coarse
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

namespace {

SuiteResult suite_slope_fd(const VerifyOptions&) {
  Worst w;
  sweep_normalized([&](double s, double eta, double b0, double b1, int) {
    const double h = std::min({1e-5, 0.1 * (eta - b0), 0.1 * (b1 - eta)});
    const double fd = central_difference([s](double e) { return modulus_sq_normalized(s, e); }, eta, h);
    w.take(std::abs(modulus_slope(s, eta) - fd), fmt("s=%g eta=%.17g", s, eta));
  });
  return finish("slope-fd", w, 1e-6);
}

SuiteResult suite_roundtrip(const VerifyOptions& o) {
  Worst w;
  for (const auto& g : grid_profiles(o)) {
    const double T = period_from_gap(g.p.ctx, g.p.gap);
    w.take(std::abs(T - 2 * g.L) / (2 * g.L), at(g));
  }
  return finish("roundtrip", w, 1e-12);
}

SuiteResult suite_ode(const VerifyOptions& o) {
  Worst w;
  for (const auto& g : grid_profiles(o)) {
    const double r = ode_residual(g.p, sample_torus(g.p, 2048));
    const double scale = (1 + g.p.ctx.omega + std::abs(g.p.ctx.c)) * std::pow(g.p.eta3, 2.5);
    w.take(r / scale, at(g));
  }
  return finish("ode-residual", w, 1e-7);
}

SuiteResult suite_first_integral(const VerifyOptions& o) {
  Worst w;
  for (const auto& g : grid_profiles(o)) {
    const double e4 = std::pow(g.p.eta3, 4);
    for (double f : {0.0, 1.0 / 3, 0.5, 0.9, 1.0})
      w.take(first_integral_residual(g.p, f * g.L) / e4, at(g) + fmt(" x/L=%.3f", f));
  }
  return finish("first-integral", w, 1e-9);
}

SuiteResult suite_mass_identity(const VerifyOptions& o) {
  Worst w;
  for (const auto& g : grid_profiles(o)) {
    const double a = torus_mass_closed(g.p), b = quadrature_mass(sample_torus(g.p, 2048));
    w.take(std::abs(a - b) / std::abs(b), at(g));
  }
  return finish("mass-identity", w, 1e-9);
}

SuiteResult suite_mass_limit(const VerifyOptions&) {
  const WaveContext ctx = make_context(1, 0);
  Worst w;
  double prev = kInf;
  for (double L : {5.0, 10.0, 20.0, 40.0, 50.0}) {
    const double gap = std::abs(torus_mass_gap(solve_eta3(ctx, L)));
    if (!(gap < prev)) w.take(kInf, fmt("gap not decreasing at L=%g", L));
    prev = gap;
  }
  const double m50 = torus_mass_closed(solve_eta3(ctx, 50));
  w.take(std::abs(m50 - 2 * kPi), "|M(50) - 2 pi|");
  return finish("mass-limit", w, 5e-3);
}

SuiteResult suite_mass_limit_massless(const VerifyOptions&) {
  const WaveContext ctx = make_context(1, 2);
  Worst w;
  double prev = kInf;
  for (double L : {5.0, 10.0, 20.0, 40.0, 50.0}) {
    const double gap = std::abs(torus_mass_gap(solve_eta3(ctx, L)));
    if (!(gap < prev)) w.take(kInf, fmt("gap not decreasing at L=%g", L));
    prev = gap;
    // within a factor 2 of the tail oracle <=> |log2 ratio| <= 1
    w.take(std::abs(std::log2(gap / soliton_tail_mass(ctx, L))), fmt("gap/tail at L=%g", L));
  }
  return finish("mass-limit-massless", w, 1.0);
}

SuiteResult suite_legendre_endpoint(const VerifyOptions&) {
  Worst w;
  w.take(std::abs(mass_G(kPi / 2, elliptic::Modulus::from_k(1 / std::sqrt(2.0))) - kPi / 2), "G(pi/2, 1/sqrt 2)");
  return finish("legendre-endpoint", w, 1e-12);
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"legendre", suite_legendre},
      {"jacobi-identities", suite_jacobi},
      {"extremal", suite_extremal},
      {"k-quadrature", suite_k_quadrature},
      {"vieta", suite_vieta},
      {"monotonicity", suite_monotonicity},
      {"slope-fd", suite_slope_fd},
      {"roundtrip", suite_roundtrip},
      {"ode-residual", suite_ode},
      {"first-integral", suite_first_integral},
      {"mass-identity", suite_mass_identity},
      {"mass-limit", suite_mass_limit},
      {"mass-limit-massless", suite_mass_limit_massless},
      {"legendre-endpoint", suite_legendre_endpoint},
  };
  return r;
}

}  // namespace

std::vector<std::pair<double, double>> standard_contexts() { return {{1, 0}, {1, 1}, {1, -1}, {4, 2}, {1, 2}}; }

std::vector<double> standard_lengths(double L0) {
  std::vector<double> out;
  for (double L : {1.5 * L0, 5.0, 10.0, 25.0, 50.0})
    if (L > L0) out.push_back(L);
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  for (const auto& [n, f] : registry()) {
    if (n != name) continue;
    SuiteResult r;
    try {
      r = f(opts);
    } catch (const std::exception& e) {
      r = {name, kInf, 0, false, std::string("exception: ") + e.what()};
    }
    if (opts.tolerance) r.threshold = *opts.tolerance;
    r.pass = r.max_residual <= r.threshold;
    return r;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_verify(const VerifyOptions& opts) {
  const auto& wanted = opts.suites.empty() ? suite_names() : opts.suites;
  std::vector<SuiteResult> out;
  for (const auto& n : wanted) out.push_back(run_suite(n, opts));
  return out;
}

}  // namespace dnls
