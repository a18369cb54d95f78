#pragma once

#include <array>
#include <stdexcept>

namespace dnls::elliptic {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Below these the K ~ log(4/k') and trigonometric branches take over.
inline constexpr double kComplementThreshold = 1e-8;
inline constexpr double kModulusThreshold = 1e-8;

// k and k' are carried together so that k near 1 keeps its information in k'.
struct Modulus {
  double k = 0.0;
  double k_prime = 1.0;

  static Modulus from_k(double k);
  static Modulus from_complement(double k_prime);
  // Inputs need only be proportional to (k^2, k'^2); they are renormalized.
  static Modulus from_squares(double k_sq, double k_prime_sq);

  double k_sq() const { return k * k; }
  double k_prime_sq() const { return k_prime * k_prime; }
  Modulus complement() const { return {k_prime, k}; }
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

double complete_K(const Modulus& m);
double complete_E(const Modulus& m);
double complete_K(double k);
double complete_E(double k);

// E(k) - 1, without cancellation as k -> 1.
double complete_E_minus_one(const Modulus& m);
// E - k'^2 K, without cancellation as k -> 0.
double complete_E_minus_kp2K(const Modulus& m);
// dK/dk = (E - k'^2 K) / (k k'^2).
double complete_K_derivative(const Modulus& m);

double incomplete_F(double phi, const Modulus& m);
double incomplete_E(double phi, const Modulus& m);
double incomplete_F(double phi, double k);
double incomplete_E(double phi, double k);

// E(phi,k) - F(phi,k) and F(phi,k) - phi, both small for small k.
double incomplete_E_minus_F(double phi, const Modulus& m);
double incomplete_F_minus_phi(double phi, const Modulus& m);

// Caches K and the AGM sequence so repeated evaluation at one modulus is cheap.
class JacobiEvaluator {
 public:
  explicit JacobiEvaluator(const Modulus& m);

  JacobiTriple operator()(double u) const;
  double quarter_period() const { return K_; }
  const Modulus& modulus() const { return m_; }

 private:
  enum class Regime { trigonometric, hyperbolic, near_hyperbolic, landen };
  static constexpr int kMaxLevels = 32;

  JacobiTriple core(double v) const;

  Modulus m_;
  double K_ = 0.0;
  Regime regime_ = Regime::landen;
  int levels_ = 0;
  double a_last_ = 1.0;
  std::array<double, kMaxLevels> ratio_{};  // c_n / a_n
};

JacobiTriple jacobi(double u, const Modulus& m);
JacobiTriple jacobi(double u, double k);

}  // namespace dnls::elliptic
