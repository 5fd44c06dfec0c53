#pragma once

#include <map>
#include <vector>

#include "rlab/numeric.hpp"

namespace rlab {

// Exact finite sums c * x^alpha * r^s on R^n minus the origin. The radial
// exponent is stored in half units (s2 = 2s); half-integer powers are only
// allowed in dimension 1, where the coordinate is positive and every monomial
// folds into a power of it.
class RadialPoly {
 public:
  struct Key {
    std::vector<int> alpha;
    int s2 = 0;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  RadialPoly() = default;
  explicit RadialPoly(int dim) : dim_(dim) {}

  static RadialPoly constant(int dim, double c);
  static RadialPoly monomial(int dim, const std::vector<int>& alpha, double c = 1.0);
  // c * r^s with integer s
  static RadialPoly radial(int dim, int s, double c = 1.0);
  // c * r^(s2/2); half-integer exponents require dim == 1
  static RadialPoly radial_half(int dim, int s2, double c = 1.0);

  int dim() const { return dim_; }
  const std::map<Key, double>& terms() const { return terms_; }

  RadialPoly& add_term(const std::vector<int>& alpha, int s2, double c);

  RadialPoly operator+(const RadialPoly& o) const;
  RadialPoly operator-(const RadialPoly& o) const;
  RadialPoly operator*(const RadialPoly& o) const;
  RadialPoly operator*(double c) const;
  RadialPoly operator-() const { return *this * -1.0; }

  // unique representative: positive radial powers expanded through r^2 = sum x^2,
  // numerators reduced by exact division by sum x^2 where possible
  RadialPoly normalize() const;
  bool is_zero(double tol = 1e-9) const;
  double max_abs_coeff() const;
  bool same_as(const RadialPoly& o, double tol = 1e-9) const;

  // exact partial derivative along axis j
  RadialPoly derive(int j) const;

  double eval(const RealVec& x) const;

 private:
  int dim_ = 0;
  std::map<Key, double> terms_;
};

inline RadialPoly rp_derive(const RadialPoly& f, int j) { return f.derive(j); }

}  // namespace rlab
