#pragma once

// Test-side oracles built on Boost.Math only; nothing here calls into dnls.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

template <class F>
double integrate(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

// F(pi/2, k) straight from the integral definition.
inline double K_quadrature(double k) {
  return integrate([k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

inline double E_quadrature(double k) {
  return integrate([k](double t) { return std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

// T = 4 int_{eta2}^{eta3} dt / sqrt(t (t-eta1)(t-eta2)(eta3-t)); with
// t = eta2 + (eta3-eta2) sin^2(th) the endpoint singularities disappear.
inline double period_quadrature(double omega, double c, double eta3) {
  const double A = 64 * omega - 3 * eta3 * eta3 + 8 * c * eta3;
  const double eta1 = (-eta3 + 4 * c - std::sqrt(A)) / 2;
  const double eta2 = (-eta3 + 4 * c + std::sqrt(A)) / 2;
  auto f = [=](double th) {
    const double s = std::sin(th);
    const double t = eta2 + (eta3 - eta2) * s * s;
    return 1.0 / std::sqrt(t * (t - eta1));
  };
  return 8.0 * integrate(f, 0.0, std::numbers::pi / 2);
}

// k^2 as a function of the normalized peak, written exactly as the
// closed-form modulus in normalized units.
inline double modulus_sq_normalized(double s, double eta) {
  const double f = -3 * eta * eta + 4 * s * eta + 4;
  const double sf = std::sqrt(f);
  return (3 * eta * eta + (sf - 6 * s) * eta + 2 * (s * s - 1)) / (2 * eta * sf);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
