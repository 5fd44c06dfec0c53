#include "rlab/diffops.hpp"

#include <cmath>
#include <numeric>

namespace rlab {

namespace {

RadialPoly derive_multi(const RadialPoly& f, const std::vector<int>& sigma) {
  RadialPoly out = f;
  for (size_t j = 0; j < sigma.size(); ++j) {
    for (int a = 0; a < sigma[j]; ++a) {
      out = out.derive(static_cast<int>(j));
    }
  }
  return out;
}

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) {
    out *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return out;
}

// iterate beta with 0 <= beta <= sigma componentwise
bool next_sub_index(std::vector<int>& beta, const std::vector<int>& sigma) {
  for (size_t j = 0; j < beta.size(); ++j) {
    if (beta[j] < sigma[j]) {
      ++beta[j];
      return true;
    }
    beta[j] = 0;
  }
  return false;
}

}  // namespace

LinDiffOp LinDiffOp::multiplication(const RadialPoly& f) {
  LinDiffOp d(f.dim());
  d.add_term(std::vector<int>(f.dim(), 0), f);
  return d;
}

LinDiffOp LinDiffOp::partial(int dim, int axis) {
  LinDiffOp d(dim);
  std::vector<int> sigma(dim, 0);
  sigma[axis] = 1;
  d.add_term(sigma, RadialPoly::constant(dim, 1.0));
  return d;
}

LinDiffOp LinDiffOp::identity(int dim) {
  return multiplication(RadialPoly::constant(dim, 1.0));
}

int LinDiffOp::order() const {
  int best = 0;
  for (const auto& [sigma, g] : terms_) {
    if (!g.normalize().is_zero()) {
      best = std::max(best, std::accumulate(sigma.begin(), sigma.end(), 0));
    }
  }
  return best;
}

LinDiffOp& LinDiffOp::add_term(const std::vector<int>& sigma, const RadialPoly& g) {
  if (static_cast<int>(sigma.size()) != dim_ || g.dim() != dim_) {
    throw DomainError("LinDiffOp: dimension mismatch");
  }
  auto it = terms_.find(sigma);
  if (it == terms_.end()) {
    terms_.emplace(sigma, g);
  } else {
    it->second = it->second + g;
  }
  auto cur = terms_.find(sigma);
  if (cur->second.max_abs_coeff() == 0.0) {
    terms_.erase(cur);
  }
  return *this;
}

LinDiffOp LinDiffOp::operator+(const LinDiffOp& o) const {
  if (dim_ != o.dim_) {
    throw DomainError("LinDiffOp: dimension mismatch");
  }
  LinDiffOp out = *this;
  for (const auto& [sigma, g] : o.terms_) {
    out.add_term(sigma, g);
  }
  return out;
}

LinDiffOp LinDiffOp::operator-(const LinDiffOp& o) const { return *this + o * -1.0; }

LinDiffOp LinDiffOp::operator*(double c) const {
  LinDiffOp out(dim_);
  for (const auto& [sigma, g] : terms_) {
    out.add_term(sigma, g * c);
  }
  return out;
}

RadialPoly LinDiffOp::apply(const RadialPoly& f) const {
  if (f.dim() != dim_) {
    throw DomainError("LinDiffOp::apply: dimension mismatch");
  }
  RadialPoly out(dim_);
  for (const auto& [sigma, g] : terms_) {
    out = out + g * derive_multi(f, sigma);
  }
  return out.normalize();
}

RadialPoly op_apply(const LinDiffOp& d, const RadialPoly& f) { return d.apply(f); }

LinDiffOp op_compose(const LinDiffOp& d1, const LinDiffOp& d2) {
  if (d1.dim() != d2.dim()) {
    throw DomainError("op_compose: dimension mismatch");
  }
  const int dim = d1.dim();
  LinDiffOp out(dim);
  for (const auto& [s1, g1] : d1.terms()) {
    for (const auto& [s2, g2] : d2.terms()) {
      // Leibniz: d^s1 (g2 h) = sum_{b <= s1} C(s1,b) (d^{s1-b} g2) d^b h
      std::vector<int> beta(dim, 0);
      do {
        double coeff = 1.0;
        std::vector<int> rest(dim), idx(dim);
        for (int j = 0; j < dim; ++j) {
          coeff *= binom(s1[j], beta[j]);
          rest[j] = s1[j] - beta[j];
          idx[j] = beta[j] + s2[j];
        }
        const RadialPoly piece = g1 * derive_multi(g2, rest) * coeff;
        if (piece.max_abs_coeff() != 0.0) {
          out.add_term(idx, piece.normalize());
        }
      } while (next_sub_index(beta, s1));
    }
  }
  return out;
}

LinDiffOp op_commutator(const LinDiffOp& d1, const LinDiffOp& d2) {
  return op_compose(d1, d2) - op_compose(d2, d1);
}

bool order_detect(const LinDiffOp& d, int k, const std::vector<RadialPoly>& probes) {
  if (probes.empty()) {
    throw DomainError("order_detect: need at least one probe");
  }
  // order <= k iff every (k+1)-fold nested commutator with multiplication
  // operators built from the probes vanishes
  const auto m = static_cast<size_t>(probes.size());
  std::vector<size_t> pick(static_cast<size_t>(k) + 1, 0);
  while (true) {
    LinDiffOp c = d;
    for (size_t slot = 0; slot < pick.size(); ++slot) {
      c = op_commutator(c, LinDiffOp::multiplication(probes[pick[slot]]));
    }
    for (const auto& [sigma, g] : c.terms()) {
      (void)sigma;
      if (!g.normalize().is_zero()) {
        return false;
      }
    }
    size_t j = 0;
    for (; j < pick.size(); ++j) {
      if (++pick[j] < m) {
        break;
      }
      pick[j] = 0;
    }
    if (j == pick.size()) {
      return true;
    }
  }
}

LinDiffOp laplacian(int n) {
  LinDiffOp d(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> sigma(n, 0);
    sigma[j] = 2;
    d.add_term(sigma, RadialPoly::constant(n, 1.0));
  }
  return d;
}

LinDiffOp hydrogen_op(double k) {
  return laplacian(3) * -0.5 - LinDiffOp::multiplication(RadialPoly::radial(3, -1, k));
}

LinDiffOp conformal_kepler_op(double k) {
  LinDiffOp d(4);
  for (int j = 0; j < 4; ++j) {
    std::vector<int> sigma(4, 0);
    sigma[j] = 2;
    d.add_term(sigma, RadialPoly::radial(4, -2, -0.125));
  }
  d.add_term(std::vector<int>(4, 0), RadialPoly::radial(4, -2, -k));
  return d;
}

PolyMap ks_map() {
  PolyMap pi;
  pi.source_dim = 4;
  pi.target_dim = 3;
  RadialPoly x1(4), x2(4), x3(4);
  x1.add_term({0, 1, 0, 1}, 0, 2.0);
  x1.add_term({1, 0, 1, 0}, 0, 2.0);
  x2.add_term({0, 0, 1, 1}, 0, 2.0);
  x2.add_term({1, 1, 0, 0}, 0, -2.0);
  x3.add_term({0, 2, 0, 0}, 0, 1.0);
  x3.add_term({0, 0, 2, 0}, 0, 1.0);
  x3.add_term({0, 0, 0, 2}, 0, -1.0);
  x3.add_term({2, 0, 0, 0}, 0, -1.0);
  pi.components = {x1, x2, x3};
  return pi;
}

std::array<double, 3> ks_point_map(const std::array<double, 4>& y) {
  const auto pi = ks_map();
  std::array<double, 3> x{};
  const RealVec yv(y.begin(), y.end());
  for (int i = 0; i < 3; ++i) {
    x[i] = pi.components[i].eval(yv);
  }
  return x;
}

RadialPoly poly_pullback(const PolyMap& pi, const RadialPoly& f) {
  if (f.dim() != pi.target_dim) {
    throw DomainError("poly_pullback: dimension mismatch");
  }
  RadialPoly out(pi.source_dim);
  for (const auto& [key, c] : f.terms()) {
    RadialPoly term = RadialPoly::constant(pi.source_dim, c);
    for (int j = 0; j < pi.target_dim; ++j) {
      for (int a = 0; a < key.alpha[j]; ++a) {
        term = term * pi.components[j];
      }
    }
    // r pulls back to R^2, so the half-unit radial exponent doubles
    term = term * RadialPoly::radial_half(pi.source_dim, 2 * key.s2);
    out = out + term;
  }
  return out.normalize();
}

RadialPoly ks_pullback(const RadialPoly& f) { return poly_pullback(ks_map(), f); }

RadialPoly x3_apply_upstairs(const RadialPoly& g) {
  // fiber generator of the KS circle action: y3 d/dy0 - y0 d/dy3 + y1 d/dy2 - y2 d/dy1
  LinDiffOp x3(4);
  auto mono = [](int j, double c) {
    std::vector<int> alpha(4, 0);
    alpha[j] = 1;
    return RadialPoly::monomial(4, alpha, c);
  };
  x3.add_term({1, 0, 0, 0}, mono(3, 1.0));
  x3.add_term({0, 0, 0, 1}, mono(0, -1.0));
  x3.add_term({0, 0, 1, 0}, mono(1, 1.0));
  x3.add_term({0, 1, 0, 0}, mono(2, -1.0));
  return x3.apply(g);
}

bool x3_annihilation_check(const RadialPoly& f_downstairs) {
  return x3_apply_upstairs(ks_pullback(f_downstairs)).normalize().is_zero();
}

double projectability_check(const LinDiffOp& d_up, const LinDiffOp& d_down, const PolyMap& pi,
                            int basis_degree) {
  if (d_up.dim() != pi.source_dim || d_down.dim() != pi.target_dim) {
    throw DomainError("projectability_check: dimension mismatch");
  }
  double worst = 0.0;
  std::vector<int> alpha(pi.target_dim, 0);
  auto visit = [&](const std::vector<int>& a) {
    for (int s : {0, -1}) {
      RadialPoly f(pi.target_dim);
      f.add_term(a, 2 * s, 1.0);
      const RadialPoly res =
          (d_up.apply(poly_pullback(pi, f)) - poly_pullback(pi, d_down.apply(f))).normalize();
      worst = std::max(worst, res.max_abs_coeff());
    }
  };
  // all monomials with total degree <= basis_degree
  while (true) {
    if (std::accumulate(alpha.begin(), alpha.end(), 0) <= basis_degree) {
      visit(alpha);
    }
    int j = 0;
    for (; j < pi.target_dim; ++j) {
      if (++alpha[j] <= basis_degree) {
        break;
      }
      alpha[j] = 0;
    }
    if (j == pi.target_dim) {
      break;
    }
  }
  return worst;
}

double radial_sector_check(int m, const RadialPoly& test) {
  if (test.dim() != 1) {
    throw DomainError("radial_sector_check: one-dimensional functions only");
  }
  const double m2 = static_cast<double>(m) * m;
  auto h_m = [&](const RadialPoly& f) {
    const RadialPoly fp = f.derive(0);
    return (fp.derive(0) + RadialPoly::radial(1, -1) * fp -
            RadialPoly::radial(1, -2) * f * m2) *
           -0.5;
  };
  auto h_prime = [&](const RadialPoly& f) {
    return (f.derive(0).derive(0) - RadialPoly::radial(1, -2) * f * (m2 - 0.25)) * -0.5;
  };
  const RadialPoly conj =
      RadialPoly::radial_half(1, 1) * h_m(RadialPoly::radial_half(1, -1) * test);
  return (conj - h_prime(test)).normalize().max_abs_coeff();
}

double oscillator_frequency(double E) {
  if (E >= 0) {
    throw DomainError("oscillator_frequency: needs E < 0");
  }
  return std::sqrt(-8.0 * E);
}

double hydrogen_level(double k, int m) {
  if (m < 0) {
    throw DomainError("hydrogen_level: level index must be nonnegative");
  }
  const double d = static_cast<double>(m + 1);
  return -k * k / (2.0 * d * d);
}

namespace {

// eigenvalues of the discretized s-wave radial problem strictly below x
int sturm_count(const std::vector<double>& diag, double off2, double x) {
  int count = 0;
  double q = 0.0;
  for (size_t i = 0; i < diag.size(); ++i) {
    q = (i == 0) ? diag[i] - x : diag[i] - x - off2 / q;
    if (std::abs(q) < 1e-300) {
      q = -1e-300;
    }
    if (q < 0) {
      ++count;
    }
  }
  return count;
}

}  // namespace

std::vector<double> hydrogen_radial_solve(double k, double r_max, int n, int count) {
  if (n < 3 || count < 1 || count > n) {
    throw DomainError("hydrogen_radial_solve: insufficient grid for requested count");
  }
  const double h = r_max / (n + 1);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    const double r = h * (i + 1);
    diag[i] = 1.0 / (h * h) - k / r;
  }
  const double off = -0.5 / (h * h);
  const double off2 = off * off;
  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d - 2.0 * std::abs(off));
    hi = std::max(hi, d + 2.0 * std::abs(off));
  }
  std::vector<double> out;
  for (int j = 1; j <= count; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(diag, off2, mid) >= j) {
        b = mid;
      } else {
        a = mid;
      }
      if (b - a < 1e-12 * std::max(1.0, std::abs(b))) {
        break;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace rlab
