#pragma once

#include <Eigen/Dense>

#include "rlab/numeric.hpp"

namespace rlab {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// conjugate-symmetric matrix, validated on construction
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix m);
  const CMatrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

// Hermitian, unit-trace, positive-semidefinite matrix
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);
  const CMatrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

// realification <e_k, psi> = q_k + i p_k; layout (q_1..q_n, p_1..p_n)
RealVec realify(const CVector& psi);
CVector complexify(const RealVec& x);

// Kahler triple in the realified coordinates:
// J(q, p) = (-p, q), g = dq.dq + dp.dp, omega = dq ^ dp
RealVec kahler_j(const RealVec& x);
double kahler_g(const RealVec& x, const RealVec& y);
double kahler_omega(const RealVec& x, const RealVec& y);

// f_A(psi) = <psi, A psi>/2 and its normalized companion e_A
double f_func(const HermitianMatrix& a, const CVector& psi);
double e_func(const HermitianMatrix& a, const CVector& psi);
// analytic gradient of f_A in the realified coordinates
RealVec f_gradient(const HermitianMatrix& a, const CVector& psi);

// coordinate-level brackets of f_A, f_B through the contravariant tensors
double bracket_omega(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi);
double bracket_g(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi);

// nonlocal product (f_A * f_B)(psi) = <psi, AB psi>/2
Complex star_func(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi);
// residual of {f_A, f_B * f_C} = {f_A, f_B} * f_C + f_B * {f_A, f_C}
double leibniz_check(const HermitianMatrix& a, const HermitianMatrix& b,
                     const HermitianMatrix& c, const CVector& psi);

// momentum map |psi><psi| and the induced (R, Lambda) pair on u(n)*
CMatrix momentum_map(const CVector& psi);
std::pair<double, double> r_lambda(const CMatrix& xi, const HermitianMatrix& a,
                                   const HermitianMatrix& b);
// |G(df_A, df_B) + i Omega(df_A, df_B) - (R + i Lambda)(mu(psi))(A, B)|
double momentum_pullback_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                                  const CVector& psi);

// exact spectral evolutions, U = exp(-i H t / hbar)
CVector evolve_schrodinger(const HermitianMatrix& h, const CVector& psi0, double t,
                           double hbar = 1.0);
HermitianMatrix evolve_heisenberg(const HermitianMatrix& h, const HermitianMatrix& a, double t,
                                  double hbar = 1.0);
DensityMatrix evolve_vonneumann(const HermitianMatrix& h, const DensityMatrix& rho0, double t,
                                double hbar = 1.0);

struct PictureCheck {
  double expectation_deviation;  // worst pairwise gap among the three pictures
  double ehrenfest_residual;     // worst |d/dt f_A - bracket_omega(A, H)| over times
};
PictureCheck picture_equivalence(const HermitianMatrix& h, const HermitianMatrix& a,
                                 const CVector& psi0, const RealVec& times, double hbar = 1.0);

// connection form theta(X) = <psi, x>/<psi, psi> with dpsi(X) = x
Complex theta_eval(const CVector& psi, const CVector& x);
// sesquilinear Fubini-Study tensor, antilinear in the first slot
Complex fubini_study(const CVector& psi, const CVector& x, const CVector& y);

struct KahlerPotentialCheck {
  double value;     // conformally normalized <psi,psi> d(d_J log<psi,psi>)(X, Y)
  double residual;  // gap to the pullback Fubini-Study two-form
};
KahlerPotentialCheck kahler_potential_check(const CVector& psi, const CVector& x,
                                            const CVector& y, double h);

// |quadrature of e^{im phi} e^{iPQ cos phi} - 2 pi i^m J_m(PQ)|
double bessel_sector_identity(int m, double p, double q, int nquad = 256);
// radial sector propagator of free motion in the plane (hbar = mass = 1)
Complex sector_propagator(int m, double qt, double q0, double t);

}  // namespace rlab
