#include "dnls/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dnls::elliptic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = std::numbers::pi / 2;

void check_phi(double phi) {
  if (!(phi >= 0.0 && phi <= kHalfPi))
    throw DomainError("amplitude must lie in [0, pi/2]");
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 2 * kEps * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

// sin/cos of phi, with cos forced to 0 at the representable pi/2.
std::pair<double, double> sin_cos(double phi) {
  if (phi == kHalfPi) return {1.0, 0.0};
  return {std::sin(phi), std::cos(phi)};
}

}  // namespace

Modulus Modulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("modulus must lie in [0, 1]");
  return {k, std::sqrt((1.0 - k) * (1.0 + k))};
}

Modulus Modulus::from_complement(double kp) {
  if (!(kp >= 0.0 && kp <= 1.0))
    throw DomainError("complementary modulus must lie in [0, 1]");
  return {std::sqrt((1.0 - kp) * (1.0 + kp)), kp};
}

Modulus Modulus::from_squares(double k_sq, double kp_sq) {
  if (!(k_sq >= 0.0 && kp_sq >= 0.0 && k_sq + kp_sq > 0.0) || !std::isfinite(k_sq + kp_sq))
    throw DomainError("modulus squares must be nonnegative and finite");
  const double sum = k_sq + kp_sq;
  return {std::sqrt(k_sq / sum), std::sqrt(kp_sq / sum)};
}

// Carlson's duplication algorithm (Numer. Algorithms 10, 1995).
double carlson_rf(double x, double y, double z) {
  if (!(x >= 0 && y >= 0 && z >= 0) || (x == 0) + (y == 0) + (z == 0) > 1)
    throw DomainError("R_F needs nonnegative arguments with at most one zero");
  const double a0 = (x + y + z) / 3;
  double q = std::pow(3 * kEps, -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0, xn = x, yn = y, zn = z, fac = 1.0;
  while (q >= std::abs(a)) {
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * sy + sy * sz + sz * sx;
    a = 0.25 * (a + lam);
    xn = 0.25 * (xn + lam);
    yn = 0.25 * (yn + lam);
    zn = 0.25 * (zn + lam);
    q *= 0.25;
    fac *= 0.25;
  }
  const double X = (a0 - x) * fac / a;
  const double Y = (a0 - y) * fac / a;
  const double Z = -(X + Y);
  const double e2 = X * Y - Z * Z, e3 = X * Y * Z;
  return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z) {
  if (!(x >= 0 && y >= 0 && z > 0) || (x == 0 && y == 0))
    throw DomainError("R_D needs x, y >= 0 (not both zero) and z > 0");
  const double a0 = (x + y + 3 * z) / 5;
  double q = std::pow(0.25 * kEps, -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0, xn = x, yn = y, zn = z, fac = 1.0, sum = 0.0;
  while (q >= std::abs(a)) {
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * sy + sy * sz + sz * sx;
    sum += fac / (sz * (zn + lam));
    a = 0.25 * (a + lam);
    xn = 0.25 * (xn + lam);
    yn = 0.25 * (yn + lam);
    zn = 0.25 * (zn + lam);
    q *= 0.25;
    fac *= 0.25;
  }
  const double X = (a0 - x) * fac / a;
  const double Y = (a0 - y) * fac / a;
  const double Z = -(X + Y) / 3;
  const double xy = X * Y, z2 = Z * Z;
  const double e2 = xy - 6 * z2;
  const double e3 = (3 * xy - 8 * z2) * Z;
  const double e4 = 3 * (xy - z2) * z2;
  const double e5 = xy * z2 * Z;
  const double series = 1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22 -
                        9 * e2 * e3 / 52 + 3 * e5 / 26;
  return fac * series / (a * std::sqrt(a)) + 3 * sum;
}

double complete_K(const Modulus& m) {
  if (!(m.k >= 0.0) || !(m.k_prime > 0.0))
    throw DomainError("K(k) requires 0 <= k < 1");
  if (m.k_prime < kComplementThreshold) {
    const double lg = std::log(4.0 / m.k_prime);
    return lg + 0.25 * m.k_prime_sq() * (lg - 1.0);
  }
  if (m.k < kModulusThreshold) return kHalfPi * (1.0 + 0.25 * m.k_sq());
  return kHalfPi / agm(1.0, m.k_prime);
}

double complete_E(const Modulus& m) {
  if (!(m.k >= 0.0 && m.k <= 1.0 && m.k_prime >= 0.0))
    throw DomainError("E(k) requires 0 <= k <= 1");
  if (m.k_prime == 0.0) return 1.0;
  if (m.k < kModulusThreshold) return kHalfPi * (1.0 - 0.25 * m.k_sq());
  if (m.k_prime < kComplementThreshold) return 1.0 + complete_E_minus_one(m);
  // Gauss: E = K (1 - sum 2^(n-1) c_n^2), c_0 = k.
  double a = 1.0, b = m.k_prime, c = m.k;
  double sum = 0.5 * c * c, pow2 = 0.5;
  for (int i = 0; i < 64 && c > kEps * a; ++i) {
    const double an = 0.5 * (a + b);
    c = c * c / (4 * an);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2;
    sum += pow2 * c * c;
  }
  return kHalfPi / a * (1.0 - sum);
}

double complete_K(double k) { return complete_K(Modulus::from_k(k)); }
double complete_E(double k) { return complete_E(Modulus::from_k(k)); }

double complete_E_minus_one(const Modulus& m) {
  const double kp = m.k_prime;
  if (kp > 0.5) return complete_E(m) - 1.0;
  if (kp == 0.0) return 0.0;
  // Log series about k' = 0 (DLMF 19.12.2) with the m = 0 "1" removed.
  const double kp2 = kp * kp;
  const double lg = std::log(1.0 / kp);
  double d = std::log(4.0);  // psi(1+j) - psi(1/2+j)
  double poch = 1.0;          // (1/2)_j (3/2)_j / (j! (j+1)!) ... built incrementally
  double power = 1.0;
  double sum = 0.0;
  for (int j = 0; j < 200; ++j) {
    // term_j = [(1/2)_j (3/2)_j / ((2)_j j!)] k'^{2j+2} (lg + d_j - 1/((2j+1)(2j+2)))
    const double dj1 = d - 1.0 / ((2.0 * j + 1) * (2.0 * j + 2));
    power *= kp2;
    const double term = 0.5 * poch * power * (lg + dj1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    poch *= (j + 0.5) * (j + 1.5) / ((j + 1.0) * (j + 2.0));
    d -= 2.0 / ((2.0 * j + 2) * (2.0 * j + 1));
  }
  return sum;
}

double complete_E_minus_kp2K(const Modulus& m) {
  // E - k'^2 K = (k^2 k'^2 / 3) R_D(0, 1, k'^2)
  if (m.k_prime == 0.0) return 1.0;
  return m.k_sq() * m.k_prime_sq() / 3.0 * carlson_rd(0.0, 1.0, m.k_prime_sq());
}

double complete_K_derivative(const Modulus& m) {
  if (!(m.k_prime > 0.0)) throw DomainError("dK/dk requires k < 1");
  // (k k'^2 / 3) R_D(0, 1, k'^2) / k'^2 ... written to stay finite as k -> 0
  return m.k / 3.0 * carlson_rd(0.0, 1.0, m.k_prime_sq());
}

double incomplete_F(double phi, const Modulus& m) {
  check_phi(phi);
  if (!(m.k >= 0.0) || !(m.k_prime > 0.0))
    throw DomainError("F(phi, k) requires 0 <= k < 1");
  if (phi == 0.0) return 0.0;
  const auto [s, c] = sin_cos(phi);
  const double delta2 = c * c + m.k_prime_sq() * s * s;
  return s * carlson_rf(c * c, delta2, 1.0);
}

double incomplete_E(double phi, const Modulus& m) {
  check_phi(phi);
  if (!(m.k >= 0.0 && m.k <= 1.0)) throw DomainError("E(phi, k) requires 0 <= k <= 1");
  if (phi == 0.0) return 0.0;
  const auto [s, c] = sin_cos(phi);
  if (m.k_prime == 0.0) return s;
  const double c2 = c * c;
  const double delta2 = c2 + m.k_prime_sq() * s * s;
  return s * carlson_rf(c2, delta2, 1.0) -
         m.k_sq() / 3.0 * s * s * s * carlson_rd(c2, delta2, 1.0);
}

double incomplete_F(double phi, double k) { return incomplete_F(phi, Modulus::from_k(k)); }
double incomplete_E(double phi, double k) { return incomplete_E(phi, Modulus::from_k(k)); }

double incomplete_E_minus_F(double phi, const Modulus& m) {
  check_phi(phi);
  if (!(m.k_prime > 0.0)) throw DomainError("E - F requires k < 1");
  if (phi == 0.0 || m.k == 0.0) return 0.0;
  const auto [s, c] = sin_cos(phi);
  const double c2 = c * c;
  const double delta2 = c2 + m.k_prime_sq() * s * s;
  return -m.k_sq() / 3.0 * s * s * s * carlson_rd(c2, delta2, 1.0);
}

double incomplete_F_minus_phi(double phi, const Modulus& m) {
  check_phi(phi);
  if (m.k_sq() > 0.25) return incomplete_F(phi, m) - phi;
  if (phi == 0.0 || m.k == 0.0) return 0.0;
  // F - phi = sum_{n>=1} ((1/2)_n / n!) k^{2n} I_{2n},  I_{2n} = int_0^phi sin^{2n}
  const auto [s, c] = sin_cos(phi);
  const double k2 = m.k_sq();
  double I = phi;  // I_0
  double coef = 1.0, power = 1.0, spow = s;  // spow = sin^{2n-1}
  double sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    I = ((2.0 * n - 1) * I - spow * c) / (2.0 * n);
    coef *= (n - 0.5) / n;
    power *= k2;
    const double term = coef * power * I;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    spow *= s * s;
  }
  return sum;
}

JacobiEvaluator::JacobiEvaluator(const Modulus& m) : m_(m) {
  if (!(m.k >= 0.0 && m.k <= 1.0 && m.k_prime >= 0.0))
    throw DomainError("Jacobi functions require 0 <= k <= 1");
  if (m.k_prime == 0.0) {
    regime_ = Regime::hyperbolic;
    K_ = std::numeric_limits<double>::infinity();
    return;
  }
  K_ = complete_K(m);
  if (m.k < kModulusThreshold) {
    regime_ = Regime::trigonometric;
    return;
  }
  if (m.k_prime < kComplementThreshold) {
    regime_ = Regime::near_hyperbolic;
    return;
  }
  double a = 1.0, b = m.k_prime, c = m.k;
  int n = 0;
  while (n + 1 < kMaxLevels && c > kEps * a) {
    const double an = 0.5 * (a + b);
    c = c * c / (4 * an);
    b = std::sqrt(a * b);
    a = an;
    ++n;
    ratio_[n] = c / a;
  }
  levels_ = n;
  a_last_ = a;
}

JacobiTriple JacobiEvaluator::core(double v) const {
  if (regime_ == Regime::trigonometric) {
    // first order in m = k^2
    const double mm = m_.k_sq();
    const double s = std::sin(v), c = std::cos(v);
    const double w = 0.25 * mm * (v - s * c);
    return {s - w * c, c + w * s, 1.0 - 0.5 * mm * s * s};
  }
  if (regime_ == Regime::near_hyperbolic) {
    // first order in m1 = k'^2; core only sees v <= K/2, where m1 e^{2v} <= 4k'.
    // Landen would lose cn = cos(phi) near phi = pi/2.
    const double m1 = m_.k_prime_sq();
    const double ch = std::cosh(v), sh = std::sinh(v), th = std::tanh(v), se = 1 / ch;
    const double wm = 0.25 * m1 * (sh * ch - v) * se, wp = 0.25 * m1 * (sh * ch + v) * se;
    return {th + wm * se, se - wm * th, se + wp * th};
  }
  double phi = std::ldexp(a_last_ * v, levels_);
  for (int n = levels_; n >= 1; --n) phi = 0.5 * (phi + std::asin(ratio_[n] * std::sin(phi)));
  const double s = std::sin(phi), c = std::cos(phi);
  return {s, c, std::sqrt(c * c + m_.k_prime_sq() * s * s)};
}

JacobiTriple JacobiEvaluator::operator()(double u) const {
  if (!std::isfinite(u)) throw DomainError("Jacobi argument must be finite");
  if (regime_ == Regime::hyperbolic) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  double sgn_sn = std::signbit(u) ? -1.0 : 1.0;
  double sgn_cn = 1.0;
  const double K = K_;
  double r = std::fmod(std::abs(u), 4 * K);
  if (r >= 2 * K) {
    r -= 2 * K;
    sgn_sn = -sgn_sn;
    sgn_cn = -sgn_cn;
  }
  if (r > K) {
    r = 2 * K - r;
    sgn_cn = -sgn_cn;
  }
  JacobiTriple t;
  if (r > 0.5 * K) {
    // sn(K-v) = cd v, cn(K-v) = k' sd v, dn(K-v) = k' nd v
    const JacobiTriple w = core(K - r);
    t = {w.cn / w.dn, m_.k_prime * w.sn / w.dn, m_.k_prime / w.dn};
  } else {
    t = core(r);
  }
  return {sgn_sn * t.sn, sgn_cn * t.cn, t.dn};
}

JacobiTriple jacobi(double u, const Modulus& m) { return JacobiEvaluator(m)(u); }
JacobiTriple jacobi(double u, double k) { return jacobi(u, Modulus::from_k(k)); }

}  // namespace dnls::elliptic
