#include "rlab/lie_scheffers.hpp"

#include <algorithm>
#include <cmath>

namespace rlab {

RiccatiCoeffs riccati_from_linear(const LinearSystem2& sys) {
  RiccatiCoeffs c;
  c.b0 = [A = sys.A](double t) { return A(t)[1]; };
  c.b1 = [A = sys.A](double t) { return A(t)[0] - A(t)[3]; };
  c.b2 = [A = sys.A](double t) { return -A(t)[2]; };
  return c;
}

ProjectiveValue ratio_project(double x1, double x2) {
  if (std::abs(x2) < 1e-300) {
    return {0.0, true};
  }
  return {x1 / x2, false};
}

double cross_ratio(double x, double x1, double x2, double x3) {
  const double den = (x - x2) * (x1 - x3);
  if (den == 0.0) {
    throw SingularConfiguration("cross_ratio: degenerate configuration");
  }
  return (x - x1) * (x2 - x3) / den;
}

double riccati_superpose(double K, double x1, double x2, double x3) {
  // solve (x - x1)(x2 - x3) = K (x - x2)(x1 - x3) for x
  const double den = (x2 - x3) - K * (x1 - x3);
  if (den == 0.0) {
    throw SingularConfiguration("riccati_superpose: degenerate configuration");
  }
  return (x1 * (x2 - x3) - K * x2 * (x1 - x3)) / den;
}

namespace {

double rk4_step(const std::function<double(double, double)>& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + h / 2, y + h / 2 * k1);
  const double k3 = f(t + h / 2, y + h / 2 * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace

ProjectiveValue riccati_solve(const RiccatiCoeffs& c, ProjectiveValue xi0, double t0, double t1,
                              double dt) {
  if (dt <= 0 || t1 <= t0) {
    throw DomainError("riccati_solve: need dt > 0 and t1 > t0");
  }
  const std::function<double(double, double)> xi_rhs = [&](double t, double xi) {
    return c.b0(t) + c.b1(t) * xi + c.b2(t) * xi * xi;
  };
  // in the chart eta = 1/xi the same curve obeys eta' = -(b0 eta^2 + b1 eta + b2)
  const std::function<double(double, double)> eta_rhs = [&](double t, double eta) {
    return -(c.b0(t) * eta * eta + c.b1(t) * eta + c.b2(t));
  };
  // switching is an exact involution, so keep whichever chart has the smaller
  // coordinate; this keeps the stepper accurate straight through poles
  constexpr double kSwitch = 1.0;
  bool inverted = xi0.pole;
  double y = xi0.pole ? 0.0 : xi0.value;
  if (!inverted && std::abs(y) > kSwitch) {
    inverted = true;
    y = 1.0 / y;
  }
  const auto steps = static_cast<long>(std::llround((t1 - t0) / dt));
  const long n = std::max<long>(steps, 1);
  const double h = (t1 - t0) / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    y = rk4_step(inverted ? eta_rhs : xi_rhs, t, y, h);
    if (!std::isfinite(y)) {
      throw IntegrationError(t + h);
    }
    if (std::abs(y) > kSwitch) {
      y = 1.0 / y;
      inverted = !inverted;
    }
  }
  if (inverted) {
    if (std::abs(y) < 1e-300) {
      return {0.0, true};
    }
    return {1.0 / y, false};
  }
  return {y, false};
}

namespace {

void require_same_grid(const Grid1D& a, const Grid1D& b) {
  if (a.n != b.n || a.x_min != b.x_min || a.x_max != b.x_max ||
      a.values.size() != b.values.size()) {
    throw GridMismatch("grids do not match");
  }
}

void require_valid(const Grid1D& g) {
  if (g.n < 3 || g.values.size() != static_cast<size_t>(g.n) || g.x_max <= g.x_min) {
    throw DomainError("invalid grid");
  }
}

}  // namespace

Grid1D heat_evolve(const Grid1D& u0, double k, double dt, int steps) {
  require_valid(u0);
  if (k <= 0) {
    throw DomainError("heat_evolve: k must be positive");
  }
  const double dx = u0.dx();
  if (dt > dx * dx / k) {
    throw StabilityError("heat_evolve: dt exceeds the explicit stability bound dx^2/k");
  }
  Grid1D u = u0;
  RealVec next = u.values;
  const double r = 0.5 * k * dt / (dx * dx);
  for (int s = 0; s < steps; ++s) {
    for (int i = 1; i + 1 < u.n; ++i) {
      next[i] = u.values[i] + r * (u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]);
    }
    u.values.swap(next);
  }
  return u;
}

Grid1D cole_hopf(const Grid1D& u, double k) {
  require_valid(u);
  Grid1D w = u;
  for (int i = 0; i < u.n; ++i) {
    if (u.values[i] <= 0) {
      throw DomainError("cole_hopf: u must be positive");
    }
    w.values[i] = -k * std::log(u.values[i]);
  }
  return w;
}

Grid1D inverse_cole_hopf(const Grid1D& w, double k) {
  require_valid(w);
  Grid1D u = w;
  for (int i = 0; i < w.n; ++i) {
    u.values[i] = std::exp(-w.values[i] / k);
  }
  return u;
}

double burgers_residual(const Grid1D& w_t0, const Grid1D& w_t1, double k, double dt) {
  require_valid(w_t0);
  require_same_grid(w_t0, w_t1);
  if (dt <= 0) {
    throw DomainError("burgers_residual: dt must be positive");
  }
  const double dx = w_t0.dx();
  double worst = 0.0;
  for (int i = 1; i + 1 < w_t0.n; ++i) {
    const double wt = (w_t1.values[i] - w_t0.values[i]) / dt;
    const double wx = (w_t0.values[i + 1] - w_t0.values[i - 1]) / (2.0 * dx);
    const double wxx =
        (w_t0.values[i + 1] - 2.0 * w_t0.values[i] + w_t0.values[i - 1]) / (dx * dx);
    worst = std::max(worst, std::abs(wt + 0.5 * wx * wx - 0.5 * k * wxx));
  }
  return worst;
}

Grid1D burgers_superpose(const Grid1D& w1, const Grid1D& w2, double l1, double l2, double k) {
  require_valid(w1);
  require_same_grid(w1, w2);
  if (k <= 0) {
    throw DomainError("burgers_superpose: k must be positive");
  }
  Grid1D out = w1;
  for (int i = 0; i < w1.n; ++i) {
    const double a = (w1.values[i] + l1) / k;
    const double b = (w2.values[i] + l2) / k;
    // -k log(e^-a + e^-b), shifted by the minimal exponent for overflow safety
    const double m = std::min(a, b);
    out.values[i] = k * m - k * std::log1p(std::exp(m - std::max(a, b)));
  }
  return out;
}

}  // namespace rlab
