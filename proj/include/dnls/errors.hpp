#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// (omega, c) outside the admissible region.
class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Peak amplitude outside the open interval (alpha0, alpha1), or a
// normalized point outside (beta0, beta1).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Requested half-period at or below the minimal one.
class NoSingleBumpError : public std::invalid_argument {
 public:
  NoSingleBumpError(const std::string& what, double L, double L0)
      : std::invalid_argument(what), L_(L), L0_(L0) {}
  double L() const { return L_; }
  double L0() const { return L0_; }

 private:
  double L_, L0_;
};

// Speed not on the lattice (2 pi / L) Z.
class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Grid and profile (or grid and declared length) disagree.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dnls
