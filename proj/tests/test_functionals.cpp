#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dnls/functionals.hpp"
#include "oracles/reference_values.hpp"

using namespace dnls;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<double, double>> kContexts = {{1, 0}, {1, 1}, {1, -1}, {4, 2}, {1, 2}, {2, -2.5}};

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }
}  // namespace

TEST_SUITE("mass") {
  TEST_CASE("soliton mass values and monotonicity in s") {
    CHECK(soliton_mass(make_context(1, 0)) == Approx(2 * kPi).epsilon(1e-15));
    CHECK(soliton_mass(make_context(1, 2)) == 4 * kPi);
    CHECK(soliton_mass(make_context(4, 0)) == Approx(2 * kPi).epsilon(1e-15));
    double prev = 0;
    for (int i = -19; i <= 19; ++i) {
      const double m = soliton_mass(make_context(1, 2 * i / 20.0));
      CHECK(m > prev);
      prev = m;
    }
    CHECK(prev < 4 * kPi);
  }
  TEST_CASE("prefactor is 8") {
    for (auto [w, c] : kContexts) {
      const auto ctx = make_context(w, c);
      for (double L : {1.2 * ctx.L0, 5.0, 20.0, 50.0}) {
        if (L <= ctx.L0) continue;
        CHECK(mass_prefactor(solve_eta3(ctx, L)) == Approx(8.0).epsilon(1e-12));
      }
    }
  }
  TEST_CASE("closed form against periodic quadrature") {
    for (auto [w, c] : kContexts) {
      const auto ctx = make_context(w, c);
      for (double L : {1.5 * ctx.L0, 5.0, 10.0, 25.0}) {
        if (L <= ctx.L0) continue;
        const auto p = solve_eta3(ctx, L);
        const double q = quadrature_mass(sample_torus(p, 2048));
        INFO("omega=" << w << " c=" << c << " L=" << L);
        CHECK(rel_close(torus_mass_closed(p), q, 1e-9));
      }
    }
  }
  TEST_CASE("closed form and gap against the high-precision reference") {
    for (const auto& r : ref::kRows) {
      const auto p = profile_from_gap(make_context(r.omega, r.c), r.gap);
      INFO("omega=" << r.omega << " c=" << r.c << " L=" << r.L);
      CHECK(rel_close(torus_mass_closed(p), r.mass, 1e-12));
      CHECK(std::abs(torus_mass_gap(p) - r.mass_gap) <= 1e-7 * std::abs(r.mass_gap) + 1e-15);
    }
  }
  TEST_CASE("gap matches direct subtraction where that is well conditioned") {
    const auto p = solve_eta3(make_context(1, 0.5), 3.0);
    CHECK(torus_mass_gap(p) == Approx(soliton_mass(p.ctx) - torus_mass_closed(p)).epsilon(1e-9));
  }
  TEST_CASE("Legendre endpoint G(pi/2, 1/sqrt 2) = pi/2") {
    const auto k = Modulus::from_k(1 / std::sqrt(2.0));
    CHECK(std::abs(mass_G(kPi / 2, k) - kPi / 2) <= 1e-12);
  }
  TEST_CASE("constant grid") {
    const RealGrid c(3.0, std::vector<double>(32, 0.5));
    CHECK(quadrature_mass(c) == Approx(6 * 0.25));
  }
  TEST_CASE("quadrature converges spectrally") {
    const auto p = solve_eta3(make_context(1, 1), 10.0);
    const double a = quadrature_mass(sample_torus(p, 2048)), b = quadrature_mass(sample_torus(p, 4096));
    CHECK(rel_close(a, b, 1e-12));
  }
  TEST_CASE("soliton tail quadrature matches closed forms") {
    for (double L : {1.0, 5.0, 20.0}) {
      // (1,0): Phi^2 = 4 sech(2x)
      CHECK(soliton_tail_mass(make_context(1, 0), L) == Approx(4 * (kPi / 2 - std::atan(std::sinh(2 * L)))).epsilon(1e-10));
      // (1,2) massless: Phi^2 = 8 / (4x^2 + 1)
      CHECK(soliton_tail_mass(make_context(1, 2), L) == Approx(8 * (kPi / 2 - std::atan(2 * L))).epsilon(1e-10));
    }
  }
}

TEST_SUITE("conserved quantities") {
  TEST_CASE("zero field") {
    const ComplexGrid z(2.0, std::vector<cplx>(64));
    const auto r = conserved_set(z, make_context(1, 0));
    CHECK(r.mass == 0);
    CHECK(r.energy == 0);
    CHECK(r.momentum == 0);
    CHECK(r.action == 0);
  }
  TEST_CASE("traveling wave: mass and time independence") {
    const double L = 4 * kPi;
    const double cL = snap_speed(0.8, L);
    const auto ctx = make_context(1, cL);
    const auto p = solve_eta3(ctx, L);
    const auto u0 = sample_traveling_wave(p, cL, 0.0, 2048);
    const auto u1 = sample_traveling_wave(p, cL, 0.3, 2048);
    const auto a = conserved_set(u0, ctx), b = conserved_set(u1, ctx);
    CHECK(rel_close(a.mass, torus_mass_closed(p), 1e-9));
    CHECK(std::abs(a.action - b.action) <= 1e-9);
    CHECK(std::abs(a.energy - b.energy) <= 1e-9);
    CHECK(std::abs(a.momentum - b.momentum) <= 1e-9);
  }
  TEST_CASE("plane wave momentum") {
    // u = e^{i 2x}: P = Re int i (2i) + 1/4 = (-2 + 1/4) * 2L
    const ComplexGrid u = ComplexGrid::sample(kPi, 64, [](double x) { return std::exp(cplx(0, 2 * x)); });
    const auto r = conserved_set(u, make_context(1, 0));
    CHECK(r.momentum == Approx((-2 + 0.25) * 2 * kPi).epsilon(1e-12));
    CHECK(r.energy == Approx((0.5 * 4 - 1.0 / 32) * 2 * kPi).epsilon(1e-12));
  }
}

TEST_SUITE("convergence") {
  TEST_CASE("gap derivative grids agree with spectral differentiation at moderate L") {
    for (auto [w, c] : std::vector<std::pair<double, double>>{{1, 0.5}, {1, 2}}) {
      const auto p = solve_eta3(make_context(w, c), 6.0);
      const auto dg = gap_derivative_grids(p, 1024);
      const RealGrid phi = sample_torus(p, 1024);
      const auto sol = make_soliton(p.ctx);
      for (int m = 1; m <= 3; ++m) {
        const RealGrid dm = derivative_grid(phi, m);
        double err = 0, scale = 0;
        for (std::size_t j = 0; j < phi.size(); j += 7) {
          const double ref = dm[j] - soliton_derivatives(sol, phi.x(j))[static_cast<std::size_t>(m)];
          err = std::max(err, std::abs(dg[static_cast<std::size_t>(m)][j] - ref));
          scale = std::max(scale, std::abs(ref));
        }
        INFO("c=" << c << " m=" << m);
        CHECK(err <= 1e-8 * std::max(scale, 1.0));
      }
    }
  }
  TEST_CASE("(1,0) columns decrease and mass gap is small at L = 40") {
    const auto rows = convergence_study(make_context(1, 0), {5, 10, 20, 40}, 3);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(!rows[i].error);
      CHECK(rows[i].mass_gap < rows[i - 1].mass_gap);
      for (int m = 0; m <= 3; ++m) CHECK(rows[i].h_m_gaps[m] < rows[i - 1].h_m_gaps[m]);
      for (int m = 0; m <= 2; ++m) CHECK(rows[i].sup_gaps[m] < rows[i - 1].sup_gaps[m]);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(rows[i].pointwise[j]) < std::abs(rows[i - 1].pointwise[j]));
    }
    CHECK(rows[3].mass_gap <= 1e-3);
    CHECK(rows[3].h_m_gaps[0] <= 1e-2);
    CHECK(rows[3].ode_residual <= 1e-8);
  }
  TEST_CASE("parallel rows equal serial rows") {
    const auto ctx = make_context(1, 1);
    const auto a = convergence_study(ctx, {4, 8, 12}, 2, 512, 1);
    const auto b = convergence_study(ctx, {4, 8, 12}, 2, 512, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].mass_gap == b[i].mass_gap);
      CHECK(a[i].h_m_gaps == b[i].h_m_gaps);
      CHECK(a[i].ode_residual == b[i].ode_residual);
    }
  }
  TEST_CASE("L below the minimal half-period flags the row") {
    const auto rows = convergence_study(make_context(1, 0), {1.0, 5.0}, 1, 256);
    CHECK(rows[0].error);
    CHECK(!rows[0].message.empty());
    CHECK(!rows[1].error);
    CHECK_THROWS(convergence_study(make_context(1, 0), {5.0}, 4));
  }
}

TEST_SUITE("gauge error") {
  TEST_CASE("zero field") {
    const ComplexGrid z(3.0, std::vector<cplx>(64));
    const auto r = gauge_error(z, 3.0);
    CHECK(r.mu == 0);
    CHECK(r.psi_v == 0);
    for (double e : r.e_norms) CHECK(e == 0);
  }
  TEST_CASE("primitive is mean zero, periodic and inverts the density") {
    const double cL = snap_speed(0.5, 5.0);
    const auto q = solve_eta3(make_context(1, cL), 5.0);
    const auto u = sample_traveling_wave(q, cL, 0.2, 512);
    const RealGrid J = gauge_primitive(u);
    CHECK(std::abs(integrate(J)) <= 1e-10);
    const RealGrid dJ = derivative_grid(J, 1);
    const double mu = l2_norm_sq(u) / (2 * u.half_length());
    double err = 0;
    for (std::size_t j = 0; j < u.size(); ++j) err = std::max(err, std::abs(dJ[j] - (std::norm(u[j]) - mu)));
    CHECK(err <= 1e-10);
    const auto v = gauge_transform(u, -0.25);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(v[j]) == Approx(std::abs(u[j])));
  }
  TEST_CASE("length mismatch") {
    const ComplexGrid z(3.0, std::vector<cplx>(64));
    CHECK_THROWS_AS(gauge_error(z, 4.0), ConsistencyError);
  }
  TEST_CASE("(1,0) error decays in L") {
    double prev = INFINITY;
    for (double L : {5.0, 10.0, 20.0, 40.0}) {
      const auto p = solve_eta3(make_context(1, 0), L);
      const auto v = gauge_transform(sample_traveling_wave(p, 0.0, 0.0, 2048), -0.25);
      const auto r = gauge_error(v, L);
      CHECK(r.mu >= 0);
      CHECK(r.e_norms[0] < prev);
      prev = r.e_norms[0];
    }
  }
}
