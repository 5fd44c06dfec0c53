#pragma once

#include <array>
#include <functional>
#include <stdexcept>

#include "rlab/numeric.hpp"

namespace rlab {

struct SingularConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// time-dependent 2x2 matrix, row major (a11, a12, a21, a22)
struct LinearSystem2 {
  std::function<std::array<double, 4>(double)> A;
};

struct RiccatiCoeffs {
  std::function<double(double)> b0, b1, b2;
};

// value on the projective line: finite ratio or the point at infinity
struct ProjectiveValue {
  double value = 0.0;
  bool pole = false;
};

RiccatiCoeffs riccati_from_linear(const LinearSystem2& sys);
ProjectiveValue ratio_project(double x1, double x2);
double cross_ratio(double x, double x1, double x2, double x3);
double riccati_superpose(double K, double x1, double x2, double x3);

// RK4 on the Riccati equation with projective chart switching at |xi| > 1
ProjectiveValue riccati_solve(const RiccatiCoeffs& c, ProjectiveValue xi0, double t0, double t1,
                              double dt);

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 0;
  RealVec values;

  double dx() const { return (x_max - x_min) / (n - 1); }
  double x(int i) const { return x_min + dx() * i; }
};

Grid1D heat_evolve(const Grid1D& u0, double k, double dt, int steps);
Grid1D cole_hopf(const Grid1D& u, double k);
Grid1D inverse_cole_hopf(const Grid1D& w, double k);
double burgers_residual(const Grid1D& w_t0, const Grid1D& w_t1, double k, double dt);
Grid1D burgers_superpose(const Grid1D& w1, const Grid1D& w2, double l1, double l2, double k);

}  // namespace rlab
