#include "dnls/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace dnls {

namespace {

// FFTW planning is not re-entrant; execution on distinct plans is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using fftw_buffer = std::unique_ptr<T[], FftwFree>;

template <class T>
fftw_buffer<T> alloc(std::size_t n) {
  return fftw_buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : p_(p) {}
  ~Plan() {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(p_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  void run() const { fftw_execute(p_); }

 private:
  fftw_plan p_;
};

void check_order(int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("derivative order must be in 1..4");
}

// (i k)^m with k = pi j / L
cplx ik_power(double k, int m) {
  const cplx ik(0.0, k);
  cplx r = 1.0;
  for (int i = 0; i < m; ++i) r *= ik;
  return r;
}

// Applies multiplier(j, k) to the half spectrum of a real grid.
template <class Mult>
RealGrid real_spectral(const RealGrid& f, Mult mult) {
  const std::size_t n = f.size(), nh = n / 2 + 1;
  auto in = alloc<double>(n);
  auto spec = alloc<fftw_complex>(nh);
  std::unique_ptr<Plan> fwd, bwd;
  {
    std::lock_guard lock(plan_mutex());
    const int ni = static_cast<int>(n);
    fwd = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(ni, in.get(), spec.get(), FFTW_ESTIMATE));
    bwd = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(ni, spec.get(), in.get(), FFTW_ESTIMATE));
  }
  std::copy(f.samples().begin(), f.samples().end(), in.get());
  fwd->run();
  const double base = std::numbers::pi / f.half_length();
  for (std::size_t j = 0; j < nh; ++j) {
    const cplx z = cplx(spec[j][0], spec[j][1]) * mult(j, base * static_cast<double>(j), j == n / 2);
    spec[j][0] = z.real();
    spec[j][1] = z.imag();
  }
  bwd->run();
  std::vector<double> out(in.get(), in.get() + n);
  for (double& v : out) v /= static_cast<double>(n);
  return RealGrid(f.half_length(), std::move(out));
}

}  // namespace

RealGrid derivative_grid(const RealGrid& f, int m) {
  check_order(m);
  return real_spectral(f, [m](std::size_t, double k, bool nyquist) {
    return (nyquist && m % 2 == 1) ? cplx(0.0) : ik_power(k, m);
  });
}

ComplexGrid derivative_grid(const ComplexGrid& f, int m) {
  check_order(m);
  const std::size_t n = f.size();
  auto buf = alloc<fftw_complex>(n);
  std::unique_ptr<Plan> fwd, bwd;
  {
    std::lock_guard lock(plan_mutex());
    const int ni = static_cast<int>(n);
    fwd = std::make_unique<Plan>(fftw_plan_dft_1d(ni, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    bwd = std::make_unique<Plan>(fftw_plan_dft_1d(ni, buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  for (std::size_t j = 0; j < n; ++j) {
    buf[j][0] = f[j].real();
    buf[j][1] = f[j].imag();
  }
  fwd->run();
  const double base = std::numbers::pi / f.half_length();
  for (std::size_t j = 0; j < n; ++j) {
    const bool nyquist = (j == n / 2);
    const double idx = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    const cplx mult = (nyquist && m % 2 == 1) ? cplx(0.0) : ik_power(base * idx, m);
    const cplx z = cplx(buf[j][0], buf[j][1]) * mult;
    buf[j][0] = z.real();
    buf[j][1] = z.imag();
  }
  bwd->run();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = cplx(buf[j][0], buf[j][1]) / static_cast<double>(n);
  return ComplexGrid(f.half_length(), std::move(out));
}

RealGrid periodic_primitive(const RealGrid& f) {
  return real_spectral(f, [](std::size_t j, double k, bool nyquist) {
    if (j == 0 || nyquist) return cplx(0.0);
    return cplx(0.0, -1.0 / k);  // 1 / (i k)
  });
}

double integrate(const RealGrid& f) {
  double s = 0;
  for (double v : f.samples()) s += v;
  return s * f.spacing();
}

double l2_norm_sq(const RealGrid& f) {
  double s = 0;
  for (double v : f.samples()) s += v * v;
  return s * f.spacing();
}

double l2_norm_sq(const ComplexGrid& f) {
  double s = 0;
  for (const cplx& v : f.samples()) s += std::norm(v);
  return s * f.spacing();
}

double sup_norm(const RealGrid& f) {
  double s = 0;
  for (double v : f.samples()) s = std::max(s, std::abs(v));
  return s;
}

double hm_norm(const RealGrid& f, int m) {
  if (m < 0 || m > 4) throw std::invalid_argument("Sobolev order must be in 0..4");
  double s = l2_norm_sq(f);
  for (int j = 1; j <= m; ++j) s += l2_norm_sq(derivative_grid(f, j));
  return std::sqrt(s);
}

double hm_norm(const ComplexGrid& f, int m) {
  if (m < 0 || m > 4) throw std::invalid_argument("Sobolev order must be in 0..4");
  double s = l2_norm_sq(f);
  for (int j = 1; j <= m; ++j) s += l2_norm_sq(derivative_grid(f, j));
  return std::sqrt(s);
}

void require_same_grid(double L1, std::size_t n1, double L2, std::size_t n2) {
  if (n1 != n2 || std::abs(L1 - L2) > 1e-12 * std::max(std::abs(L1), std::abs(L2)))
    throw ConsistencyError("grids differ in size or half-length");
}

RealGrid operator-(const RealGrid& a, const RealGrid& b) {
  require_same_grid(a.half_length(), a.size(), b.half_length(), b.size());
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] - b[j];
  return RealGrid(a.half_length(), std::move(v));
}

}  // namespace dnls
