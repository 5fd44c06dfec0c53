#pragma once

#include <map>

#include "rlab/numeric.hpp"

namespace rlab {

// Finite Laurent polynomial in one formal deformation parameter with complex
// coefficients. For the quantum-group context the parameter is mu = 1 - q,
// which keeps all rewrite coefficients exact while allowing the inverses that
// the normal ordering demands; q-expansions are recovered binomially.
class DeformSeries {
 public:
  DeformSeries() = default;
  DeformSeries(double re) { add(0, Complex{re, 0.0}); }  // NOLINT(runtime/explicit)
  DeformSeries(Complex c) { add(0, c); }                 // NOLINT(runtime/explicit)

  static DeformSeries param(int power = 1, Complex c = {1.0, 0.0});

  const std::map<int, Complex>& coeffs() const { return c_; }
  Complex coeff(int power) const;
  bool is_zero(double tol = 1e-12) const;
  double max_abs() const;
  int min_power() const;
  int max_power() const;

  DeformSeries& add(int power, Complex c);
  DeformSeries operator+(const DeformSeries& o) const;
  DeformSeries operator-(const DeformSeries& o) const;
  DeformSeries operator*(const DeformSeries& o) const;
  DeformSeries operator-() const;

  // value at a numeric parameter
  Complex eval(Complex value) const;

  // coefficient of q^k when the parameter is read as mu = 1 - q; exact via
  // generalized binomials, valid for negative powers too
  Complex q_coeff(int k) const;

 private:
  std::map<int, Complex> c_;
};

}  // namespace rlab
