#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using cplx = std::complex<double>;

// Uniform periodic samples x_j = -L + j (2L/n), j = 0..n-1.
template <class T>
class GridFunction {
 public:
  GridFunction(double half_length, std::vector<T> samples)
      : L_(half_length), v_(std::move(samples)) {
    if (!(L_ > 0.0) || !(L_ < 1e300)) throw std::invalid_argument("grid half-length must be positive and finite");
    const std::size_t n = v_.size();
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("grid size must be a power of two >= 2");
  }

  template <class F>
  static GridFunction sample(double half_length, std::size_t n, F&& f) {
    std::vector<T> v(n);
    const double h = 2 * half_length / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(-half_length + static_cast<double>(j) * h);
    return GridFunction(half_length, std::move(v));
  }

  std::size_t size() const { return v_.size(); }
  double half_length() const { return L_; }
  double spacing() const { return 2 * L_ / static_cast<double>(v_.size()); }
  double x(std::size_t j) const { return -L_ + static_cast<double>(j) * spacing(); }
  const std::vector<T>& samples() const { return v_; }
  const T& operator[](std::size_t j) const { return v_[j]; }

 private:
  double L_;
  std::vector<T> v_;
};

using RealGrid = GridFunction<double>;
using ComplexGrid = GridFunction<cplx>;

// Spectral m-th derivative, 1 <= m <= 4. The Nyquist mode is dropped for odd m.
RealGrid derivative_grid(const RealGrid& f, int m);
ComplexGrid derivative_grid(const ComplexGrid& f, int m);

// Mean-zero periodic primitive of a grid function (its mean is discarded).
RealGrid periodic_primitive(const RealGrid& f);

// Trapezoidal quadrature on the periodic grid.
double integrate(const RealGrid& f);
double l2_norm_sq(const RealGrid& f);
double l2_norm_sq(const ComplexGrid& f);
double sup_norm(const RealGrid& f);

// sqrt(sum_{j<=m} ||d^j f||^2), spectral derivatives.
double hm_norm(const RealGrid& f, int m);
double hm_norm(const ComplexGrid& f, int m);

// Pointwise helpers kept here so callers do not loop by hand.
RealGrid operator-(const RealGrid& a, const RealGrid& b);
void require_same_grid(double L1, std::size_t n1, double L2, std::size_t n2);

}  // namespace dnls
