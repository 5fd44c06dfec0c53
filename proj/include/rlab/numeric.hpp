#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlab {

using RealVec = std::vector<double>;
using Complex = std::complex<double>;

struct ToleranceConfig {
  double ode_tol = 1e-8;
  double symbolic_tol = 0.0;
  double quad_tol = 1e-10;
  double check_tol = 1e-6;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RealVec> states;
  std::map<std::string, double> drift;
};

struct IntegrationError : std::runtime_error {
  double time;
  explicit IntegrationError(double t)
      : std::runtime_error("integration diverged at t=" + std::to_string(t)), time(t) {}
};

struct InvalidResolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using VectorField = std::function<RealVec(double, const RealVec&)>;

// Fixed-step classical RK4. A step callback, when given, post-processes the
// state after each step (used for constraint projection).
Trajectory integrate_rk4(const VectorField& field, RealVec y0, double t0, double t1, double dt,
                         const std::function<void(RealVec&)>& project = nullptr);

Complex quad_periodic(const std::function<Complex(double)>& f, int n);

double bessel_j(int m, double x);

struct Eig2 {
  double q1 = 0.0;
  double q2 = 0.0;
  double phi = 0.0;
  bool degenerate = false;
};

// X = [[x1, b],[b, x3]] = G(phi) diag(q1,q2) G(phi)^-1 with
// G = [[cos, sin],[-sin, cos]]. With prev supplied, the branch closest to
// prev (ordering and phi mod pi) is chosen.
Eig2 eig_sym2_continuous(double x1, double b, double x3, const std::optional<Eig2>& prev = {});

double finite_diff(const std::function<double(const RealVec&)>& f, const RealVec& x,
                   const RealVec& direction, int order, double h);

}  // namespace rlab
