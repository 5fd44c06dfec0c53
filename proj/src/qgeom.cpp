#include "rlab/qgeom.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace rlab {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kDensityTol = 1e-10;

void require_nonzero(const CVector& psi) {
  if (psi.squaredNorm() == 0.0) {
    throw DomainError("zero state vector");
  }
}

void require_dim(int a, int b) {
  if (a != b) {
    throw DomainError("dimension mismatch");
  }
}

CMatrix evolution_operator(const HermitianMatrix& h, double t, double hbar) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.mat());
  if (es.info() != Eigen::Success) {
    throw DomainError("eigendecomposition failed");
  }
  const Eigen::VectorXd lam = es.eigenvalues();
  CVector phases(lam.size());
  for (int k = 0; k < lam.size(); ++k) {
    phases[k] = std::exp(Complex{0.0, -lam[k] * t / hbar});
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw DomainError("matrix is not Hermitian");
  }
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kDensityTol) {
    throw DomainError("density matrix trace is not one");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_);
  if (es.eigenvalues().minCoeff() < -kDensityTol) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

RealVec realify(const CVector& psi) {
  const int n = static_cast<int>(psi.size());
  RealVec x(2 * n);
  for (int k = 0; k < n; ++k) {
    x[k] = psi[k].real();
    x[n + k] = psi[k].imag();
  }
  return x;
}

CVector complexify(const RealVec& x) {
  if (x.size() % 2 != 0) {
    throw DomainError("realified vector must have even length");
  }
  const int n = static_cast<int>(x.size()) / 2;
  CVector psi(n);
  for (int k = 0; k < n; ++k) {
    psi[k] = Complex{x[k], x[n + k]};
  }
  return psi;
}

RealVec kahler_j(const RealVec& x) {
  if (x.size() % 2 != 0) {
    throw DomainError("realified vector must have even length");
  }
  const size_t n = x.size() / 2;
  RealVec out(x.size());
  for (size_t k = 0; k < n; ++k) {
    out[k] = -x[n + k];
    out[n + k] = x[k];
  }
  return out;
}

double kahler_g(const RealVec& x, const RealVec& y) {
  require_dim(static_cast<int>(x.size()), static_cast<int>(y.size()));
  double sum = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    sum += x[k] * y[k];
  }
  return sum;
}

double kahler_omega(const RealVec& x, const RealVec& y) {
  require_dim(static_cast<int>(x.size()), static_cast<int>(y.size()));
  const size_t n = x.size() / 2;
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) {
    sum += x[k] * y[n + k] - x[n + k] * y[k];
  }
  return sum;
}

double f_func(const HermitianMatrix& a, const CVector& psi) {
  require_dim(a.dim(), static_cast<int>(psi.size()));
  return 0.5 * psi.dot(a.mat() * psi).real();
}

double e_func(const HermitianMatrix& a, const CVector& psi) {
  require_nonzero(psi);
  return 2.0 * f_func(a, psi) / psi.squaredNorm();
}

RealVec f_gradient(const HermitianMatrix& a, const CVector& psi) {
  require_dim(a.dim(), static_cast<int>(psi.size()));
  const CVector apsi = a.mat() * psi;
  const int n = static_cast<int>(psi.size());
  RealVec grad(2 * n);
  for (int k = 0; k < n; ++k) {
    grad[k] = apsi[k].real();      // df/dq_k
    grad[n + k] = apsi[k].imag();  // df/dp_k
  }
  return grad;
}

double bracket_omega(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi) {
  // contravariant symplectic tensor on the gradients
  const RealVec da = f_gradient(a, psi);
  const RealVec db = f_gradient(b, psi);
  const size_t n = da.size() / 2;
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) {
    sum += da[k] * db[n + k] - da[n + k] * db[k];
  }
  return sum;
}

double bracket_g(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi) {
  return kahler_g(f_gradient(a, psi), f_gradient(b, psi));
}

Complex star_func(const HermitianMatrix& a, const HermitianMatrix& b, const CVector& psi) {
  require_dim(a.dim(), b.dim());
  require_dim(a.dim(), static_cast<int>(psi.size()));
  return 0.5 * psi.dot(a.mat() * (b.mat() * psi));
}

double leibniz_check(const HermitianMatrix& a, const HermitianMatrix& b,
                     const HermitianMatrix& c, const CVector& psi) {
  // {f_A, f_B * f_C} with the star product read as f_{BC}; brackets of the
  // non-Hermitian product split through BC = (BC + CB)/2 + (BC - CB)/2
  const CMatrix bc = b.mat() * c.mat();
  const CMatrix ab = a.mat() * b.mat();
  const CMatrix ac = a.mat() * c.mat();
  auto omega_f = [&](const CMatrix& x, const CMatrix& y) {
    // bracket_omega extended bilinearly to arbitrary matrices
    return Complex{0.0, -0.5} * psi.dot((x * y - y * x) * psi);
  };
  const Complex lhs = omega_f(a.mat(), bc);
  const Complex rhs = 0.5 * psi.dot((ab - b.mat() * a.mat()) * c.mat() * psi +
                                    b.mat() * (ac - c.mat() * a.mat()) * psi) *
                      Complex{0.0, -1.0};
  return std::abs(lhs - rhs);
}

CMatrix momentum_map(const CVector& psi) { return psi * psi.adjoint(); }

std::pair<double, double> r_lambda(const CMatrix& xi, const HermitianMatrix& a,
                                   const HermitianMatrix& b) {
  const CMatrix ab = a.mat() * b.mat();
  const CMatrix ba = b.mat() * a.mat();
  const double r = 0.5 * (xi * (ab + ba)).trace().real();
  const double lambda = (Complex{0.0, -0.5} * (xi * (ab - ba)).trace()).real();
  return {r, lambda};
}

double momentum_pullback_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                                  const CVector& psi) {
  const Complex lhs{bracket_g(a, b, psi), bracket_omega(a, b, psi)};
  const auto [r, lambda] = r_lambda(momentum_map(psi), a, b);
  return std::abs(lhs - Complex{r, lambda});
}

CVector evolve_schrodinger(const HermitianMatrix& h, const CVector& psi0, double t,
                           double hbar) {
  require_dim(h.dim(), static_cast<int>(psi0.size()));
  return evolution_operator(h, t, hbar) * psi0;
}

HermitianMatrix evolve_heisenberg(const HermitianMatrix& h, const HermitianMatrix& a, double t,
                                  double hbar) {
  require_dim(h.dim(), a.dim());
  const CMatrix u = evolution_operator(h, t, hbar);
  CMatrix at = u.adjoint() * a.mat() * u;
  at = 0.5 * (at + CMatrix(at.adjoint()));  // strip roundoff asymmetry
  return HermitianMatrix(at);
}

DensityMatrix evolve_vonneumann(const HermitianMatrix& h, const DensityMatrix& rho0, double t,
                                double hbar) {
  require_dim(h.dim(), rho0.dim());
  const CMatrix u = evolution_operator(h, t, hbar);
  CMatrix rt = u * rho0.mat() * u.adjoint();
  rt = 0.5 * (rt + CMatrix(rt.adjoint()));
  return DensityMatrix(rt);
}

PictureCheck picture_equivalence(const HermitianMatrix& h, const HermitianMatrix& a,
                                 const CVector& psi0, const RealVec& times, double hbar) {
  require_nonzero(psi0);
  const double norm2 = psi0.squaredNorm();
  const DensityMatrix rho0(momentum_map(psi0) / norm2);
  PictureCheck out{0.0, 0.0};
  const double dt = 1e-4;
  for (double t : times) {
    const CVector psit = evolve_schrodinger(h, psi0, t, hbar);
    const double e1 = e_func(a, psit);
    const double e2 = 2.0 * f_func(evolve_heisenberg(h, a, t, hbar), psi0) / norm2;
    const double e3 = (evolve_vonneumann(h, rho0, t, hbar).mat() * a.mat()).trace().real();
    out.expectation_deviation = std::max(
        {out.expectation_deviation, std::abs(e1 - e2), std::abs(e1 - e3), std::abs(e2 - e3)});
    // Ehrenfest: d/dt f_A(psi(t)) = {f_A, f_H}/hbar
    const double fplus = f_func(a, evolve_schrodinger(h, psi0, t + dt, hbar));
    const double fminus = f_func(a, evolve_schrodinger(h, psi0, t - dt, hbar));
    const double deriv = (fplus - fminus) / (2.0 * dt);
    out.ehrenfest_residual =
        std::max(out.ehrenfest_residual, std::abs(deriv - bracket_omega(a, h, psit) / hbar));
  }
  return out;
}

Complex theta_eval(const CVector& psi, const CVector& x) {
  require_nonzero(psi);
  require_dim(static_cast<int>(psi.size()), static_cast<int>(x.size()));
  return psi.dot(x) / psi.squaredNorm();
}

Complex fubini_study(const CVector& psi, const CVector& x, const CVector& y) {
  require_nonzero(psi);
  require_dim(static_cast<int>(psi.size()), static_cast<int>(x.size()));
  require_dim(static_cast<int>(psi.size()), static_cast<int>(y.size()));
  const double n = psi.squaredNorm();
  return x.dot(y) / n - x.dot(psi) * psi.dot(y) / (n * n);
}

KahlerPotentialCheck kahler_potential_check(const CVector& psi, const CVector& x,
                                            const CVector& y, double h) {
  require_nonzero(psi);
  const auto log_norm = [](const RealVec& pt) {
    double n = 0.0;
    for (double v : pt) {
      n += v * v;
    }
    return std::log(n);
  };
  // d_J f evaluated at a base point against a constant direction
  const auto dj_f = [&](const RealVec& base, const RealVec& dir) {
    const RealVec jdir = kahler_j(dir);
    return finite_diff(log_norm, base, jdir, 1, h);
  };
  const RealVec base = realify(psi);
  const RealVec xr = realify(x);
  const RealVec yr = realify(y);
  // d(d_J f)(X, Y) = X(d_J f(Y)) - Y(d_J f(X)) for constant directions
  auto shift = [](const RealVec& p, const RealVec& d, double s) {
    RealVec out = p;
    for (size_t k = 0; k < out.size(); ++k) {
      out[k] += s * d[k];
    }
    return out;
  };
  const double xdjy =
      (dj_f(shift(base, xr, h), yr) - dj_f(shift(base, xr, -h), yr)) / (2.0 * h);
  const double ydjx =
      (dj_f(shift(base, yr, h), xr) - dj_f(shift(base, yr, -h), xr)) / (2.0 * h);
  const double two_form = xdjy - ydjx;
  const double fs = -4.0 * fubini_study(psi, x, y).imag();
  return {psi.squaredNorm() * two_form, std::abs(two_form - fs)};
}

double bessel_sector_identity(int m, double p, double q, int nquad) {
  const Complex quad = quad_periodic(
      [&](double phi) {
        return std::exp(Complex{0.0, m * phi}) * std::exp(Complex{0.0, p * q * std::cos(phi)});
      },
      nquad);
  const Complex im = std::pow(Complex{0.0, 1.0}, m);
  return std::abs(quad - 2.0 * M_PI * im * bessel_j(m, p * q));
}

Complex sector_propagator(int m, double qt, double q0, double t) {
  if (t == 0.0) {
    throw DomainError("sector_propagator: t must be nonzero");
  }
  const Complex phase = std::exp(Complex{0.0, (qt * qt + q0 * q0) / (2.0 * t)});
  const Complex mim = std::pow(Complex{0.0, -1.0}, m);
  return std::sqrt(qt * q0) * phase * mim * bessel_j(m, qt * q0 / t) / Complex{0.0, t};
}

}  // namespace rlab
