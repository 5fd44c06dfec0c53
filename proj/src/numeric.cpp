#include "rlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rlab {

namespace {

bool all_finite(const RealVec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

RealVec axpy(const RealVec& y, double a, const RealVec& k) {
  RealVec out(y.size());
  for (size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + a * k[i];
  }
  return out;
}

}  // namespace

Trajectory integrate_rk4(const VectorField& field, RealVec y0, double t0, double t1, double dt,
                         const std::function<void(RealVec&)>& project) {
  if (dt <= 0 || t1 <= t0) {
    throw DomainError("integrate_rk4: need dt > 0 and t1 > t0");
  }
  Trajectory traj;
  const auto steps = static_cast<long>(std::llround((t1 - t0) / dt));
  const long n = std::max<long>(steps, 1);
  const double h = (t1 - t0) / static_cast<double>(n);
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  RealVec y = std::move(y0);
  for (long i = 0; i < n; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    const RealVec k1 = field(t, y);
    const RealVec k2 = field(t + h / 2, axpy(y, h / 2, k1));
    const RealVec k3 = field(t + h / 2, axpy(y, h / 2, k2));
    const RealVec k4 = field(t + h, axpy(y, h, k3));
    for (size_t j = 0; j < y.size(); ++j) {
      y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    if (project) {
      project(y);
    }
    if (!all_finite(y)) {
      throw IntegrationError(t + h);
    }
    traj.times.push_back(t0 + h * static_cast<double>(i + 1));
    traj.states.push_back(y);
  }
  return traj;
}

Complex quad_periodic(const std::function<Complex(double)>& f, int n) {
  if (n < 8) {
    throw InvalidResolution("quad_periodic: need n >= 8");
  }
  Complex sum = 0.0;
  const double h = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    sum += f(h * i);
  }
  return sum * h;
}

namespace {

double bessel_j_series(int m, double x) {
  const double half = x / 2.0;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) {
    term *= half / k;
  }
  double sum = term;
  const double x2 = -half * half;
  for (int k = 1; k < 200; ++k) {
    term *= x2 / (k * (m + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) {
      break;
    }
  }
  return sum;
}

// Miller's downward recurrence, normalized with J_0 + 2*sum J_{2k} = 1.
double bessel_j_miller(int m, double x) {
  const int start = 2 * ((std::max(m, static_cast<int>(x)) + 30) / 2) + 20;
  double jp = 0.0;
  double jc = 1e-30;
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k >= 0; --k) {
    const double jm = (2.0 * (k + 1)) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
    if (k % 2 == 0) {
      norm += (k == 0) ? jc : 2.0 * jc;
    }
    if (k == m) {
      result = jc;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int m, double x) {
  if (m < 0) {
    throw DomainError("bessel_j: order must be nonnegative");
  }
  if (x < 0) {
    const double v = bessel_j(m, -x);
    return (m % 2 == 0) ? v : -v;
  }
  if (x == 0.0) {
    return m == 0 ? 1.0 : 0.0;
  }
  constexpr double kSeriesThreshold = 12.0;
  if (x <= kSeriesThreshold) {
    return bessel_j_series(m, x);
  }
  return bessel_j_miller(m, x);
}

Eig2 eig_sym2_continuous(double x1, double b, double x3, const std::optional<Eig2>& prev) {
  const double mean = (x1 + x3) / 2.0;
  const double rho = std::hypot(2.0 * b, x3 - x1);
  Eig2 out;
  out.degenerate = rho < 1e-10;
  if (out.degenerate && prev) {
    out.phi = prev->phi;
    const double c = std::cos(out.phi);
    const double s = std::sin(out.phi);
    // X ~ mean*I here; read the (tiny) split in the previous frame's basis.
    out.q1 = x1 * c * c - 2 * b * s * c + x3 * s * s;
    out.q2 = x1 * s * s + 2 * b * s * c + x3 * c * c;
    return out;
  }
  // X = G diag(q1,q2) G^-1 with q2 - q1 = rho and phi = atan2(2b, x3-x1)/2.
  double phi = 0.5 * std::atan2(2.0 * b, x3 - x1);
  double q1 = mean - rho / 2.0;
  double q2 = mean + rho / 2.0;
  if (!prev) {
    out.q1 = q1;
    out.q2 = q2;
    out.phi = phi;
    return out;
  }
  // Candidate branches: phi + k*pi keeps (q1,q2); phi + pi/2 + k*pi swaps them.
  double best_cost = 0.0;
  bool have_best = false;
  for (int swap = 0; swap < 2; ++swap) {
    const double base = phi + swap * std::numbers::pi / 2.0;
    const double a = std::remainder(base - prev->phi, std::numbers::pi);
    const double cand_phi = prev->phi + a;
    const double c1 = swap ? q2 : q1;
    const double c2 = swap ? q1 : q2;
    const double cost =
        std::abs(cand_phi - prev->phi) + std::abs(c1 - prev->q1) + std::abs(c2 - prev->q2);
    if (!have_best || cost < best_cost) {
      best_cost = cost;
      out.q1 = c1;
      out.q2 = c2;
      out.phi = cand_phi;
      have_best = true;
    }
  }
  return out;
}

double finite_diff(const std::function<double(const RealVec&)>& f, const RealVec& x,
                   const RealVec& direction, int order, double h) {
  if (h <= 0) {
    throw DomainError("finite_diff: h must be positive");
  }
  auto shift = [&](double a) {
    RealVec y = x;
    for (size_t i = 0; i < y.size(); ++i) {
      y[i] += a * direction[i];
    }
    return y;
  };
  if (order == 1) {
    return (f(shift(h)) - f(shift(-h))) / (2.0 * h);
  }
  if (order == 2) {
    return (f(shift(h)) - 2.0 * f(x) + f(shift(-h))) / (h * h);
  }
  throw DomainError("finite_diff: order must be 1 or 2");
}

}  // namespace rlab
