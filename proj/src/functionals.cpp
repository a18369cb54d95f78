#include "dnls/functionals.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dnls/elliptic.hpp"

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;

// F(a) - F(b) = (a - b) Q(a, b) for F(f) = (omega - c^2/4) f + (c/2) f^3 - (3/16) f^5
struct Nonlinearity {
  double lin, c;
  double Q(double a, double b) const {
    const double a2 = a * a, b2 = b * b, ab = a * b;
    return lin + 0.5 * c * (a2 + ab + b2) - 0.1875 * (a2 * a2 + ab * (a2 + b2) + a2 * b2 + b2 * b2);
  }
  double Qa(double a, double b) const {
    return 0.5 * c * (2 * a + b) - 0.1875 * (4 * a * a * a + 3 * a * a * b + 2 * a * b * b + b * b * b);
  }
};

Nonlinearity nonlinearity(const WaveContext& ctx) {
  return {ctx.omega * (1 - ctx.s) * (1 + ctx.s), ctx.c};
}

}  // namespace

ConservedSet conserved_set(const ComplexGrid& u, const WaveContext& ctx) {
  const ComplexGrid ux = derivative_grid(u, 1);
  double grad = 0, m = 0, p4 = 0, p6 = 0, cross = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double a2 = std::norm(u[j]);
    grad += std::norm(ux[j]);
    m += a2;
    p4 += a2 * a2;
    p6 += a2 * a2 * a2;
    cross -= (ux[j] * std::conj(u[j])).imag();  // Re(i z) = -Im z
  }
  const double h = u.spacing();
  ConservedSet r;
  r.mass = m * h;
  r.energy = (0.5 * grad - p6 / 32) * h;
  r.momentum = (cross + 0.25 * p4) * h;
  r.action = r.energy + 0.5 * ctx.omega * r.mass + 0.5 * ctx.c * r.momentum;
  return r;
}

double mass_prefactor(const TorusProfile& p) {
  const double k2 = p.k.k_sq(), b2 = p.beta_sq;
  return 4 * p.g * p.eta3 * std::sqrt((k2 / b2 + 1) / (1 + b2));
}

namespace {

double mu_of(const TorusProfile& p) { return std::atan2(std::sqrt(p.beta_sq), p.k.k); }

}  // namespace

double mass_G(double mu, const Modulus& k) {
  const auto kc = k.complement();
  return elliptic::complete_K(k) * elliptic::incomplete_E_minus_F(mu, kc) +
         elliptic::complete_E(k) * elliptic::incomplete_F(mu, kc);
}

double mass_G(const TorusProfile& p) { return mass_G(mu_of(p), p.k); }

double torus_mass_closed(const TorusProfile& p) { return mass_prefactor(p) * mass_G(p); }

double torus_mass_gap(const TorusProfile& p) {
  const WaveContext& c = p.ctx;
  if (c.massless) return 8 * (kPi / 2 - mass_G(p));
  const auto kc = p.k.complement();
  const double mu = mu_of(p);
  const double F = elliptic::incomplete_F(mu, kc);
  // G - mu1 = K (E' - F') + (E - 1) F' + (F' - mu) + (mu - mu1)
  const auto n = detail::normalized(c, p.gap);
  const double s = c.s;
  const double a = std::sqrt(n.eta / -n.e1), b = std::sqrt((1 + s) / (1 - s));
  const double a2_b2 = (-n.eps * (1 - s) + (1 + s) * n.de1) / (-n.e1 * (1 - s));
  const double dmu = std::atan(a2_b2 / (a + b) / (1 + a * b));
  const double G_mu1 = p.K * elliptic::incomplete_E_minus_F(mu, kc) + elliptic::complete_E_minus_one(p.k) * F +
                       elliptic::incomplete_F_minus_phi(mu, kc) + dmu;
  return -8 * G_mu1;
}

double quadrature_mass(const RealGrid& phi) { return l2_norm_sq(phi); }
double quadrature_mass(const ComplexGrid& u) { return l2_norm_sq(u); }

double soliton_mass(const WaveContext& ctx) {
  if (ctx.massless) return 4 * kPi;
  return 8 * std::atan2(std::sqrt(1 + ctx.s), std::sqrt(1 - ctx.s));
}

double soliton_tail_mass(const WaveContext& ctx, double L) {
  const auto sol = make_soliton(ctx);
  auto f = [&](double x) { return soliton_sq(sol, x); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return 2 * GK::integrate(f, L, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

std::array<RealGrid, 4> gap_derivative_grids(const TorusProfile& p, std::size_t n) {
  const GapEvaluator gap(p);
  const auto& tor = gap.torus();
  const auto& sol = gap.soliton();
  const Nonlinearity nl = nonlinearity(p.ctx);
  auto qd = [&](double x) { return nl.Q(tor.phi(x), soliton_eval(sol, x)) * gap(x); };

  const RealGrid d = RealGrid::sample(p.L, n, [&](double x) { return gap(x); });
  // d'(x) = int_0^x Q d, cell by cell outward from 0; odd in x.
  const std::size_t half = n / 2;
  const double h = d.spacing();
  std::vector<double> right(half + 1, 0.0);
  using GL = boost::math::quadrature::gauss<double, 10>;
  for (std::size_t m = 1; m <= half; ++m) {
    const double x0 = static_cast<double>(m - 1) * h, x1 = static_cast<double>(m) * h;
    right[m] = right[m - 1] + GL::integrate(qd, x0, x1);
  }
  std::vector<double> d1(n), d2(n), d3(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = d.x(j);
    d1[j] = j >= half ? right[j - half] : -right[half - j];
    const double a = tor.phi(x), b = soliton_eval(sol, x);
    const double da = tor.psi_derivative(x) / (2 * a), db = soliton_derivatives(sol, x)[1];
    const double Q = nl.Q(a, b);
    d2[j] = Q * d[j];
    d3[j] = (nl.Qa(a, b) * da + nl.Qa(b, a) * db) * d[j] + Q * d1[j];
  }
  return {d, RealGrid(p.L, std::move(d1)), RealGrid(p.L, std::move(d2)), RealGrid(p.L, std::move(d3))};
}

ConvergenceRow convergence_row(const WaveContext& ctx, double L, int m_max, std::size_t n) {
  if (m_max < 0 || m_max > 3) throw std::invalid_argument("m_max must be in 0..3");
  ConvergenceRow row;
  row.L = L;
  try {
    const TorusProfile p = solve_eta3(ctx, L);
    row.eta3 = p.eta3;
    row.gap = p.gap;
    row.k = p.k.k;
    row.k_prime = p.k.k_prime;
    row.beta_sq = p.beta_sq;
    row.mass_torus = torus_mass_closed(p);
    row.mass_gap = std::abs(torus_mass_gap(p));
    const GapEvaluator gap(p);
    for (std::size_t i = 0; i < kPointwiseX.size(); ++i) row.pointwise[i] = gap(kPointwiseX[i]);

    const auto dg = gap_derivative_grids(p, n);
    double acc = 0;
    for (int m = 0; m <= m_max; ++m) {
      acc += l2_norm_sq(dg[static_cast<std::size_t>(m)]);
      row.h_m_gaps[static_cast<std::size_t>(m)] = std::sqrt(acc);
      if (m <= 2) row.sup_gaps[static_cast<std::size_t>(m)] = sup_norm(dg[static_cast<std::size_t>(m)]);
    }
    const RealGrid phi = sample_torus(p, n);
    for (int m = 0; m <= m_max; ++m) row.h_m_norms[static_cast<std::size_t>(m)] = hm_norm(phi, m);
    const auto res = adaptive_ode_residual(p, n);
    row.ode_residual = res.residual;
    row.n = res.n;
  } catch (const std::exception& e) {
    row.error = true;
    row.message = e.what();
  }
  return row;
}

std::vector<ConvergenceRow> convergence_study(const WaveContext& ctx, const std::vector<double>& L_list,
                                              int m_max, std::size_t n, unsigned jobs) {
  if (m_max < 0 || m_max > 3) throw std::invalid_argument("m_max must be in 0..3");
  std::vector<ConvergenceRow> rows(L_list.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = convergence_row(ctx, L_list[i], m_max, n);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

RealGrid gauge_primitive(const ComplexGrid& u) {
  std::vector<double> dens(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) dens[j] = std::norm(u[j]);
  return periodic_primitive(RealGrid(u.half_length(), std::move(dens)));
}

ComplexGrid gauge_transform(const ComplexGrid& u, double a) {
  const RealGrid J = gauge_primitive(u);
  std::vector<cplx> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) v[j] = std::polar(1.0, a * J[j]) * u[j];
  return ComplexGrid(u.half_length(), std::move(v));
}

GaugeErrorRecord gauge_error(const ComplexGrid& v, double L) {
  require_same_grid(v.half_length(), v.size(), L, v.size());
  GaugeErrorRecord r;
  const double h = v.spacing();
  r.mu = l2_norm_sq(v) / (2 * L);
  const ComplexGrid vx = derivative_grid(v, 1);
  double I = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a2 = std::norm(v[j]);
    I += 2 * (std::conj(v[j]) * vx[j]).imag() + a2 * a2 / 8;
  }
  r.psi_v = -I * h / (8 * L) + r.mu * r.mu / 16;
  std::vector<cplx> e(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) e[j] = (r.psi_v + 0.25 * r.mu * std::norm(v[j])) * v[j];
  const ComplexGrid eg(L, std::move(e));
  for (int m = 0; m <= 2; ++m) r.e_norms[static_cast<std::size_t>(m)] = hm_norm(eg, m);
  return r;
}

}  // namespace dnls
