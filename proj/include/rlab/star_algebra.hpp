#pragma once

#include <array>

#include "rlab/ncpoly.hpp"

namespace rlab {

// commutative polynomial in nvars variables with DeformSeries coefficients
class CommPoly {
 public:
  CommPoly() = default;
  explicit CommPoly(int nvars) : nvars_(nvars) {}

  static CommPoly constant(int nvars, DeformSeries c);
  static CommPoly var(int nvars, int j, DeformSeries c = 1.0);

  int nvars() const { return nvars_; }
  const std::map<std::vector<int>, DeformSeries>& terms() const { return terms_; }

  CommPoly& add_term(const std::vector<int>& alpha, const DeformSeries& c);
  CommPoly operator+(const CommPoly& o) const;
  CommPoly operator-(const CommPoly& o) const;
  CommPoly operator*(const CommPoly& o) const;
  CommPoly operator*(const DeformSeries& c) const;
  CommPoly operator-() const { return *this * DeformSeries(-1.0); }

  CommPoly derive(int j) const;
  bool is_zero(double tol = 1e-10) const;
  double max_abs_coeff() const;
  // keep only terms whose coefficient has the given parameter power
  CommPoly parameter_part(int power) const;
  Complex eval(const RealVec& x, Complex parameter = {0.0, 0.0}) const;

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, DeformSeries> terms_;
};

// --- deformed oscillator -----------------------------------------------------

RewriteSystem oscillator_system(double q, double r);
// d/dt a = -i w a, d/dt a+ = +i w a+, extended by Leibniz
NCPoly oscillator_derivation(const NCPoly& p, double omega);

// --- Woronowicz quantum SU(2) ------------------------------------------------

// alphabet order nu < nu* < alpha < alpha*; coefficients are Laurent
// polynomials in mu = 1 - q
RewriteSystem woronowicz_system();

struct Su2qElements {
  NCPoly u;
  NCPoly w;
  NCPoly w_star;
};

Su2qElements su2q_elements();

struct RelationCheck {
  std::string name;
  bool exact;                 // holds identically in q (possibly after the
                              // convention flip recorded in the name)
  double residual_q1;         // magnitude of the q^1 coefficient of the residual
  NCPoly residual;
};

std::vector<RelationCheck> su2q_relation_checks();

// quantum-classical limit: q^1 coefficient of a commutator, mapped through
// alpha -> q2 + i p2, nu -> q1 + i p1; the global normalization constant is -1
CommPoly classical_limit(const NCPoly& commutator);
// hatted coordinate functions (q1, q2, p1, p2) as elements of the algebra
std::array<NCPoly, 4> su2q_coordinates();

// --- quadratic Poisson structure on S^3 and its reduction --------------------

// variables ordered (q1, q2, p1, p2)
CommPoly s3_poisson(const CommPoly& f, const CommPoly& g);
// u, v, z as polynomials in (q1, q2, p1, p2)
std::array<CommPoly, 3> s2_elements();
CommPoly s3_casimir();

std::array<double, 4> s3_classical_flow(const std::array<double, 4>& state, double t);
std::array<double, 3> s2_reduced_flow(const std::array<double, 3>& uvz, double t);
std::array<double, 2> stereographic_project(double u, double v, double z);

// measured sign relating the pushforward of the reduced field to the printed
// plane field; the residual is the worst mismatch over sample points
struct PushforwardCheck {
  double sign;
  double residual;
};
PushforwardCheck stereographic_pushforward_check(int samples);

// Woronowicz flow: closed form on generators; t = 0 is the identity and the
// derivative at zero is i ad_H with H = u/2
struct WoronowiczFlowCheck {
  bool h_commutes_with_nu;
  bool alpha_equation_exact;
  double phase_rate;  // numeric coefficient (q^2 - 2q) at the supplied q
};
WoronowiczFlowCheck woronowicz_flow_check(double q);

// --- Moyal star product on R^4 and the su(2) reduction -----------------------

// variables (q1, q2, p1, p2); the deformation parameter of the coefficients is
// theta, normalized by q1*p1 - p1*q1 = i theta
CommPoly moyal_product(const CommPoly& f, const CommPoly& g);

// pullbacks pi*(x), pi*(y), pi*(w) and f_H
std::array<CommPoly, 3> su2_generators_pulled_back();
CommPoly su2_fh();
// F in variables (x, y, w) -> polynomial in (q1, q2, p1, p2)
CommPoly su2_pullback(const CommPoly& f_xyw);
// worst coefficient of {f_H, pi*x_i star pi*x_j} over all pairs
double commutant_closure_check();

// pi*(printed formula for x_j star F) - pi*x_j star pi*F
CommPoly reduced_star_verify(int j, const CommPoly& f_xyw);

}  // namespace rlab
