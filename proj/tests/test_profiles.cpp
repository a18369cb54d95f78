#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/profiles.hpp"
#include "oracles/reference_values.hpp"

using namespace dnls;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

double fd(double (*f)(const SolitonProfile&, double), const SolitonProfile& s, double x, double h) {
  return (f(s, x + h) - f(s, x - h)) / (2 * h);
}
}  // namespace

TEST_SUITE("soliton") {
  TEST_CASE("peak and decay") {
    const auto s = make_soliton(make_context(1, 0));
    CHECK(soliton_sq(s, 0) == Approx(4.0));  // alpha1 = 4 for (1,0)
    CHECK(soliton_eval(s, 30) < 1e-12);
    CHECK(soliton_eval(s, -3) == soliton_eval(s, 3));
    const auto m = make_soliton(make_context(1, 2));
    CHECK(m.branch == SolitonBranch::massless);
    CHECK(soliton_sq(m, 0) == Approx(8.0));
    CHECK(soliton_sq(m, 1) == Approx(8.0 / 5.0));
  }
  TEST_CASE("closed form against the cosh expression") {
    for (double c : {-1.5, 0.0, 1.0, 1.9}) {
      const auto ctx = make_context(1, c);
      const auto s = make_soliton(ctx);
      for (double x : {0.0, 0.3, 2.0, 7.0}) {
        const double kap = std::sqrt(4 - c * c);
        const double ref = (4 - c * c) / (std::cosh(kap * x) - c / 2);
        CHECK(soliton_sq(s, x) == Approx(ref).epsilon(1e-13));
      }
    }
  }
  TEST_CASE("analytic derivatives match differences") {
    for (double c : {-1.0, 0.0, 1.5, 2.0}) {
      const auto s = make_soliton(make_context(1, c));
      for (double x : {-2.0, -0.4, 0.7, 3.0}) {
        const auto d = soliton_derivatives(s, x);
        CHECK(d[0] == Approx(soliton_eval(s, x)));
        CHECK(d[1] == Approx(fd(soliton_eval, s, x, 1e-5)).epsilon(1e-8));
        const double h = 1e-4;
        const auto p = soliton_derivatives(s, x + h), m = soliton_derivatives(s, x - h);
        CHECK(d[2] == Approx((p[1] - m[1]) / (2 * h)).epsilon(1e-6));
        CHECK(d[3] == Approx((p[2] - m[2]) / (2 * h)).epsilon(1e-6));
      }
    }
  }
  TEST_CASE("solves the profile equation") {
    for (double c : {-1.0, 0.0, 1.2, 2.0}) {
      const auto ctx = make_context(1, c);
      const auto s = make_soliton(ctx);
      for (double x : {0.0, 0.5, 1.7, 4.0}) {
        const auto d = soliton_derivatives(s, x);
        const double f = d[0];
        const double r = -d[2] + (1 - c * c / 4) * f + 0.5 * c * f * f * f - 0.1875 * std::pow(f, 5);
        CHECK(std::abs(r) <= 1e-12);
      }
    }
  }
}

TEST_SUITE("torus profile") {
  TEST_CASE("peak, trough and period") {
    const auto ctx = make_context(1, 0.5);
    const auto p = solve_eta3(ctx, 6.0);
    const TorusEvaluator ev(p);
    CHECK(ev.psi(0) == Approx(p.eta3).epsilon(1e-15));
    CHECK(ev.psi(p.L) == Approx(p.eta2).epsilon(1e-10));
    CHECK(ev.phi(1.3) == Approx(ev.phi(1.3 + 2 * p.L)).epsilon(1e-12));
    CHECK(ev.phi(-0.9) == Approx(ev.phi(0.9)).epsilon(1e-14));
    CHECK(torus_profile_eval(p, 0.4) == ev.phi(0.4));
  }
  TEST_CASE("first integral holds pointwise") {
    for (double c : {-1.0, 0.0, 1.0, 2.0}) {
      const auto p = solve_eta3(make_context(1, c), 8.0);
      for (double x : {0.0, 0.3, 1.1, 4.0, 7.9}) CHECK(first_integral_residual(p, x) <= 1e-12 * p.eta3 * p.eta3);
    }
  }
  TEST_CASE("psi derivative matches differences") {
    const auto p = solve_eta3(make_context(2, 1), 4.0);
    const TorusEvaluator ev(p);
    for (double x : {0.2, 1.0, 3.0}) {
      const double h = 1e-5;
      CHECK(ev.psi_derivative(x) == Approx((ev.psi(x + h) - ev.psi(x - h)) / (2 * h)).epsilon(1e-8));
    }
  }
  TEST_CASE("spectral ODE residual is small") {
    for (double c : {-1.0, 0.0, 1.0, 2.0}) {
      const auto p = solve_eta3(make_context(1, c), 10.0);
      CHECK(ode_residual(p, sample_torus(p, 2048)) <= 1e-9);
    }
    const auto p = solve_eta3(make_context(1, 0), 20.0);
    const auto a = adaptive_ode_residual(p, 512, 8192);
    CHECK(a.residual <= 1e-9);
    CHECK(a.n >= 512);
  }
  TEST_CASE("ODE residual refuses a foreign grid") {
    const auto p = solve_eta3(make_context(1, 0), 5.0);
    const auto q = solve_eta3(make_context(1, 0.5), 5.0);
    CHECK_THROWS_AS(ode_residual(p, sample_torus(q, 256)), ConsistencyError);
    const RealGrid wrong_L = RealGrid::sample(6.0, 256, [](double) { return 1.0; });
    CHECK_THROWS_AS(ode_residual(p, wrong_L), ConsistencyError);
  }
}

TEST_SUITE("pointwise gap") {
  TEST_CASE("agrees with the high-precision reference") {
    const double xs[4] = {0, 0.5, 1, 2};
    for (const auto& r : ref::kRows) {
      const auto p = profile_from_gap(make_context(r.omega, r.c), r.gap);
      for (int i = 0; i < 4; ++i) {
        if (xs[i] > p.L) continue;
        const double got = profile_gap(p, xs[i]);
        INFO("omega=" << r.omega << " c=" << r.c << " L=" << r.L << " x=" << xs[i]);
        CHECK(std::abs(got - r.pointwise[i]) <= 1e-6 * std::abs(r.pointwise[i]) + 1e-15);
      }
    }
  }
  TEST_CASE("direct difference where it is representable") {
    const auto p = solve_eta3(make_context(1, 1), 3.0);
    const auto s = make_soliton(p.ctx);
    for (double x : {0.0, 1.0, 2.5})
      CHECK(profile_gap(p, x) == Approx(torus_profile_eval(p, x) - soliton_eval(s, x)).epsilon(1e-9));
  }
}

TEST_SUITE("traveling wave") {
  TEST_CASE("snap to the lattice") {
    CHECK(snap_speed(1.0, kPi) == 2.0);  // tie goes up
    CHECK(snap_speed(0.9, kPi) == 0.0);
    CHECK(snap_speed(-1.0, kPi) == 0.0);
    CHECK(snap_speed(-1.1, kPi) == -2.0);
    CHECK_THROWS(snap_speed(1.0, 0.0));
  }
  TEST_CASE("modulus is the profile and speed must be on the lattice") {
    const double L = 4 * kPi;
    const double cL = snap_speed(1.1, L);
    CHECK(cL == Approx(1.0));
    const auto p = solve_eta3(make_context(1, cL), L);
    const cplx u = traveling_wave_eval(p, cL, 0.7, 1.3);
    CHECK(std::abs(u) == Approx(torus_profile_eval(p, 1.3 - cL * 0.7)).epsilon(1e-14));
    CHECK(std::arg(traveling_wave_eval(p, cL, 0, 0)) == Approx(0.0));
    CHECK_THROWS_AS(traveling_wave_eval(p, 1.1, 0, 0), LatticeError);
    const auto q = solve_eta3(make_context(1, 0.5), L);
    CHECK_THROWS_AS(traveling_wave_eval(q, 1.0, 0, 0), ConsistencyError);
  }
  TEST_CASE("periodic in x on the lattice") {
    const double L = 3 * kPi;
    const double cL = snap_speed(0.7, L);
    const auto p = solve_eta3(make_context(1, cL), L);
    const auto a = traveling_wave_eval(p, cL, 0.3, -1.0), b = traveling_wave_eval(p, cL, 0.3, -1.0 + 2 * L);
    CHECK(std::abs(a - b) <= 1e-12);
    const auto g = sample_traveling_wave(p, cL, 0.3, 64);
    CHECK(std::abs(g[5] - traveling_wave_eval(p, cL, 0.3, g.x(5))) <= 1e-14);
  }
}
