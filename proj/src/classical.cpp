#include "rlab/classical.hpp"

#include <cmath>

namespace rlab {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

RadialData reduce_free_to_radial(const FreeState3& s) {
  const double r = norm(s.r);
  if (r <= 0) {
    throw DomainError("reduce_free_to_radial: zero radius");
  }
  RadialData out;
  out.r = r;
  out.rdot = dot(s.r, s.v) / r;
  const Vec3 l = cross(s.r, s.v);
  out.l2 = dot(l, l);
  out.E = 0.5 * dot(s.v, s.v);
  return out;
}

double radial_rhs(RadialKind kind, const RadialParams& p, double r, double rdot, double t) {
  if (r <= 0) {
    throw DomainError("radial_rhs: r must be positive");
  }
  switch (kind) {
    case RadialKind::fixed_l:
      return p.l2 / (r * r * r);
    case RadialKind::fixed_E:
      return 2.0 * p.E / r - rdot * rdot / r;
    case RadialKind::convex:
      return (p.alpha * p.l2 + (1.0 - p.alpha) * (2.0 * p.E - rdot * rdot) * r * r) / (r * r * r);
    case RadialKind::timedep:
      if (t <= 0) {
        throw DomainError("radial_rhs: timedep needs t > 0");
      }
      return p.k * p.k / (r * t * t) + 2.0 * rdot / t - 1.0 / (r * t * t) - rdot * rdot / r;
    case RadialKind::timedep_consistent:
      if (t <= 0) {
        throw DomainError("radial_rhs: timedep needs t > 0");
      }
      return p.k * p.k / (r * t * t) + 2.0 * rdot / t - r / (t * t) - rdot * rdot / r;
  }
  throw DomainError("radial_rhs: unknown kind");
}

VectorField radial_reduced_field(RadialKind kind, const RadialParams& p) {
  return [kind, p](double t, const RealVec& s) {
    return RealVec{s[1], radial_rhs(kind, p, s[0], s[1], t)};
  };
}

SL2Point sl2_lift(const Vec3& r, const Vec3& p) {
  return {0.5 * dot(r, r), dot(p, p), dot(r, p)};
}

SL2Point sl2_flow(const SL2Point& p0, double t) {
  return {p0.xi1 + p0.xi3 * t + 0.5 * p0.xi2 * t * t, p0.xi2, p0.xi3 + p0.xi2 * t};
}

double sl2_casimir(const SL2Point& p) { return 2.0 * p.xi1 * p.xi2 - p.xi3 * p.xi3; }

std::pair<double, double> oscillator_reduced_flow(double eta1, double xi3, double t) {
  const double c = std::cos(2.0 * t);
  const double s = std::sin(2.0 * t);
  return {eta1 * c + xi3 * s, -eta1 * s + xi3 * c};
}

double canonical_poisson(const PhaseFunction& f, const PhaseFunction& g, const RealVec& pt) {
  const size_t n = pt.size() / 2;
  const RealVec df = f.grad(pt);
  const RealVec dg = g.grad(pt);
  double sum = 0.0;
  for (size_t a = 0; a < n; ++a) {
    sum += df[n + a] * dg[a] - df[a] * dg[n + a];
  }
  return sum;
}

PhaseFunction sl2_xi(int index, int n) {
  PhaseFunction f;
  f.value = [index, n](const RealVec& pt) {
    double s = 0.0;
    for (int a = 0; a < n; ++a) {
      if (index == 1) {
        s += 0.5 * pt[a] * pt[a];
      } else if (index == 2) {
        s += pt[n + a] * pt[n + a];
      } else {
        s += pt[a] * pt[n + a];
      }
    }
    return s;
  };
  f.grad = [index, n](const RealVec& pt) {
    RealVec g(2 * n, 0.0);
    for (int a = 0; a < n; ++a) {
      if (index == 1) {
        g[a] = pt[a];
      } else if (index == 2) {
        g[n + a] = 2.0 * pt[n + a];
      } else {
        g[a] = pt[n + a];
        g[n + a] = pt[a];
      }
    }
    return g;
  };
  return f;
}

CalogeroState calogero_reduce(const MatFreeState& s, std::optional<Eig2>& branch) {
  const Eig2 e = eig_sym2_continuous(s.X.a, s.X.b, s.X.c, branch);
  if (std::abs(e.q2 - e.q1) < 1e-12) {
    throw DomainError("calogero_reduce: degenerate eigenvalues");
  }
  branch = e;
  const double c = std::cos(e.phi);
  const double sn = std::sin(e.phi);
  // W = G^T V G: diagonal gives (q1dot, q2dot), off-diagonal gives phidot (q2 - q1)
  const double w11 = c * c * s.V.a - 2.0 * sn * c * s.V.b + sn * sn * s.V.c;
  const double w22 = sn * sn * s.V.a + 2.0 * sn * c * s.V.b + c * c * s.V.c;
  const double w12 = sn * c * (s.V.a - s.V.c) + (c * c - sn * sn) * s.V.b;
  const double phidot = w12 / (e.q2 - e.q1);
  CalogeroState out;
  out.q1 = e.q1;
  out.q2 = e.q2;
  out.p1 = w11;
  out.p2 = w22;
  out.l = phidot * (e.q2 - e.q1) * (e.q2 - e.q1);
  return out;
}

VectorField calogero_field(double l) {
  return [l](double, const RealVec& s) {
    const double d = s[1] - s[0];
    if (std::abs(d) < 1e-12) {
      throw DomainError("calogero_field: collision singularity");
    }
    const double f = 2.0 * l * l / (d * d * d);
    return RealVec{s[2], s[3], -f, f};
  };
}

std::array<double, 2> mat_eigenvalues(const Sym2& X) {
  const Eig2 e = eig_sym2_continuous(X.a, X.b, X.c);
  return {e.q1, e.q2};
}

double hj_action(const Sym2& Xt, const Sym2& X0, double t) {
  if (t == 0) {
    throw DomainError("hj_action: t must be nonzero");
  }
  const double da = Xt.a - X0.a;
  const double db = Xt.b - X0.b;
  const double dc = Xt.c - X0.c;
  // Tr D^2 for D = [[da, db],[db, dc]]
  const double tr = da * da + 2.0 * db * db + dc * dc;
  return tr / (2.0 * t);
}

VectorField monopole_field(double k, double m) {
  return [k, m](double, const RealVec& s) {
    const Vec3 r{s[0], s[1], s[2]};
    const Vec3 v{s[3], s[4], s[5]};
    const double rn = norm(r);
    if (rn <= 0) {
      throw DomainError("monopole_field: zero radius");
    }
    // sign fixed by conservation of J = m(r x v) + k r/|r|
    const Vec3 f = cross(r, v);
    const double c = k / (m * rn * rn * rn);
    return RealVec{v[0], v[1], v[2], c * f[0], c * f[1], c * f[2]};
  };
}

Vec3 monopole_invariant(const MonopoleState& s) {
  const double rn = norm(s.r);
  if (rn <= 0) {
    throw DomainError("monopole_invariant: zero radius");
  }
  const Vec3 l = cross(s.r, s.v);
  return {s.m * l[0] + s.k * s.r[0] / rn, s.m * l[1] + s.k * s.r[1] / rn,
          s.m * l[2] + s.k * s.r[2] / rn};
}

namespace {

// V = (y0^2 + y3^2 - y1^2 - y2^2) / (2 <y,y>)
double ts3_potential(const Vec4& y) {
  const double n2 = dot(y, y);
  return 0.5 * (y[0] * y[0] + y[3] * y[3] - y[1] * y[1] - y[2] * y[2]) / n2;
}

Vec4 ts3_potential_grad(const Vec4& y) {
  const double n2 = dot(y, y);
  const double num = y[0] * y[0] + y[3] * y[3] - y[1] * y[1] - y[2] * y[2];
  Vec4 g;
  const Vec4 sign{1.0, -1.0, -1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    g[i] = (sign[i] * y[i] * n2 - num * y[i]) / (n2 * n2);
  }
  return g;
}

}  // namespace

double ts3_hamiltonian(const TS3Point& pt) {
  return 0.5 * dot(pt.p, pt.p) * dot(pt.y, pt.y) + ts3_potential(pt.y);
}

VectorField ts3_hamiltonian_field() {
  return [](double, const RealVec& s) {
    const Vec4 y{s[0], s[1], s[2], s[3]};
    const Vec4 p{s[4], s[5], s[6], s[7]};
    const double y2 = dot(y, y);
    if (y2 <= 0) {
      throw DomainError("ts3_hamiltonian_field: y = 0");
    }
    const double p2 = dot(p, p);
    const Vec4 dv = ts3_potential_grad(y);
    RealVec out(8);
    for (int i = 0; i < 4; ++i) {
      out[i] = y2 * p[i];
      out[4 + i] = -(p2 * y[i] + dv[i]);
    }
    return out;
  };
}

std::function<void(RealVec&)> ts3_projection() {
  return [](RealVec& s) {
    double y2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      y2 += s[i] * s[i];
    }
    const double yn = std::sqrt(y2);
    for (int i = 0; i < 4; ++i) {
      s[i] /= yn;
    }
    double yp = 0.0;
    for (int i = 0; i < 4; ++i) {
      yp += s[i] * s[4 + i];
    }
    for (int i = 0; i < 4; ++i) {
      s[4 + i] -= yp * s[i];
    }
  };
}

double ts3_sigma_k(const TS3Point& pt) {
  return pt.y[0] * pt.p[3] - pt.p[0] * pt.y[3] + pt.y[1] * pt.p[2] - pt.y[2] * pt.p[1];
}

TS2State hopf_project(const TS3Point& pt, double check_tol) {
  const Vec4& y = pt.y;
  if (std::abs(dot(y, y) - 1.0) > check_tol || std::abs(dot(y, pt.p)) > check_tol) {
    throw DomainError("hopf_project: point off the constraint manifold");
  }
  TS2State out;
  out.x = {2.0 * (y[1] * y[3] - y[0] * y[2]), 2.0 * (y[2] * y[3] + y[0] * y[1]),
           y[0] * y[0] + y[3] * y[3] - y[1] * y[1] - y[2] * y[2]};
  // tangent map applied to ydot = <y,y> p
  Vec4 yd;
  const double y2 = dot(y, y);
  for (int i = 0; i < 4; ++i) {
    yd[i] = y2 * pt.p[i];
  }
  out.v = {2.0 * (y[1] * yd[3] + yd[1] * y[3] - y[0] * yd[2] - yd[0] * y[2]),
           2.0 * (y[2] * yd[3] + yd[2] * y[3] + y[0] * yd[1] + yd[0] * y[1]),
           2.0 * (y[0] * yd[0] + y[3] * yd[3] - y[1] * yd[1] - y[2] * yd[2])};
  return out;
}

VectorField pendulum_field() {
  return [](double, const RealVec& s) {
    const Vec3 x{s[0], s[1], s[2]};
    const Vec3 v{s[3], s[4], s[5]};
    const double v2 = dot(v, v);
    RealVec out(6);
    for (int i = 0; i < 3; ++i) {
      const double e3 = (i == 2) ? 1.0 : 0.0;
      out[i] = v[i];
      out[3 + i] = -(e3 - x[2] * x[i]) - v2 * x[i];
    }
    return out;
  };
}

std::function<void(RealVec&)> ts2_projection() {
  return [](RealVec& s) {
    double x2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    const double xn = std::sqrt(x2);
    for (int i = 0; i < 3; ++i) {
      s[i] /= xn;
    }
    double xv = s[0] * s[3] + s[1] * s[4] + s[2] * s[5];
    for (int i = 0; i < 3; ++i) {
      s[3 + i] -= xv * s[i];
    }
  };
}

std::pair<double, double> energy_momentum_map(const TS2State& s) {
  const double e = 0.5 * dot(s.v, s.v) + s.x[2];
  const double l = s.x[0] * s.v[1] - s.x[1] * s.v[0];
  return {e, l};
}

double tangency_check(const TangentField& field, const std::vector<PhaseFunction>& constraints,
                      const std::vector<RealVec>& samples) {
  double worst = 0.0;
  for (const auto& pt : samples) {
    const RealVec x = field.at(pt);
    for (const auto& c : constraints) {
      const RealVec g = c.grad(pt);
      double lie = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        lie += g[i] * x[i];
      }
      worst = std::max(worst, std::abs(lie));
    }
  }
  return worst;
}

namespace {

constexpr int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) {
    return 0;
  }
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

TangentField ts2_rotation_generator(int l) {
  return {[l](const RealVec& s) {
    RealVec out(6, 0.0);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int e = eps3(j, k, l);
        if (e != 0) {
          out[k] += e * s[j];
          out[3 + k] += e * s[3 + j];
        }
      }
    }
    return out;
  }};
}

TangentField ts2_vertical_generator(int l) {
  return {[l](const RealVec& s) {
    RealVec out(6, 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int e = eps3(l, i, j);
        if (e != 0) {
          out[3 + i] += e * s[j];
        }
      }
    }
    return out;
  }};
}

}  // namespace rlab
