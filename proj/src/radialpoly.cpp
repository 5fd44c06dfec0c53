#include "rlab/radialpoly.hpp"

#include <cmath>
#include <optional>

namespace rlab {

namespace {

constexpr double kDropTol = 1e-12;

using Poly = std::map<std::vector<int>, double>;

void poly_add(Poly& p, const std::vector<int>& alpha, double c) {
  auto it = p.find(alpha);
  if (it == p.end()) {
    if (std::abs(c) > kDropTol) {
      p.emplace(alpha, c);
    }
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= kDropTol) {
    p.erase(it);
  }
}

// multiply by (sum_j x_j^2)^k
Poly poly_times_r2(const Poly& p, int dim, int k) {
  Poly out = p;
  for (int rep = 0; rep < k; ++rep) {
    Poly next;
    for (const auto& [alpha, c] : out) {
      for (int j = 0; j < dim; ++j) {
        std::vector<int> beta = alpha;
        beta[j] += 2;
        poly_add(next, beta, c);
      }
    }
    out = std::move(next);
  }
  return out;
}

// exact division by sum_j x_j^2 in lex order; empty result for non-divisible input
std::optional<Poly> poly_divide_r2(const Poly& p, int dim) {
  Poly work = p;
  Poly quot;
  while (!work.empty()) {
    const auto lead = *work.rbegin();
    if (lead.first[0] < 2) {
      return std::nullopt;
    }
    std::vector<int> beta = lead.first;
    beta[0] -= 2;
    poly_add(quot, beta, lead.second);
    for (int j = 0; j < dim; ++j) {
      std::vector<int> gamma = beta;
      gamma[j] += 2;
      poly_add(work, gamma, -lead.second);
    }
  }
  return quot;
}

}  // namespace

RadialPoly RadialPoly::constant(int dim, double c) {
  RadialPoly f(dim);
  f.add_term(std::vector<int>(dim, 0), 0, c);
  return f;
}

RadialPoly RadialPoly::monomial(int dim, const std::vector<int>& alpha, double c) {
  RadialPoly f(dim);
  f.add_term(alpha, 0, c);
  return f;
}

RadialPoly RadialPoly::radial(int dim, int s, double c) { return radial_half(dim, 2 * s, c); }

RadialPoly RadialPoly::radial_half(int dim, int s2, double c) {
  RadialPoly f(dim);
  f.add_term(std::vector<int>(dim, 0), s2, c);
  return f;
}

RadialPoly& RadialPoly::add_term(const std::vector<int>& alpha, int s2, double c) {
  if (static_cast<int>(alpha.size()) != dim_) {
    throw DomainError("RadialPoly: multi-index size mismatch");
  }
  if (s2 % 2 != 0 && dim_ != 1) {
    throw DomainError("RadialPoly: half-integer radial exponents need dimension 1");
  }
  const Key key{alpha, s2};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (std::abs(c) > kDropTol) {
      terms_.emplace(key, c);
    }
    return *this;
  }
  it->second += c;
  if (std::abs(it->second) <= kDropTol) {
    terms_.erase(it);
  }
  return *this;
}

RadialPoly RadialPoly::operator+(const RadialPoly& o) const {
  if (dim_ != o.dim_) {
    throw DomainError("RadialPoly: dimension mismatch");
  }
  RadialPoly out = *this;
  for (const auto& [key, c] : o.terms_) {
    out.add_term(key.alpha, key.s2, c);
  }
  return out;
}

RadialPoly RadialPoly::operator-(const RadialPoly& o) const { return *this + o * -1.0; }

RadialPoly RadialPoly::operator*(const RadialPoly& o) const {
  if (dim_ != o.dim_) {
    throw DomainError("RadialPoly: dimension mismatch");
  }
  RadialPoly out(dim_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      std::vector<int> alpha = ka.alpha;
      for (int j = 0; j < dim_; ++j) {
        alpha[j] += kb.alpha[j];
      }
      out.add_term(alpha, ka.s2 + kb.s2, ca * cb);
    }
  }
  return out;
}

RadialPoly RadialPoly::operator*(double c) const {
  RadialPoly out(dim_);
  for (const auto& [key, v] : terms_) {
    out.add_term(key.alpha, key.s2, v * c);
  }
  return out;
}

RadialPoly RadialPoly::normalize() const {
  RadialPoly out(dim_);
  if (dim_ == 1) {
    // on the positive half line every monomial folds into the radial power
    for (const auto& [key, c] : terms_) {
      out.add_term({0}, key.s2 + 2 * key.alpha[0], c);
    }
    return out;
  }
  // split by parity of s; within each class reduce to the unique representative
  // with the largest radial exponent <= cap (0 for even, 1 for odd powers of r)
  std::map<int, std::map<int, Poly>> classes;  // parity -> s -> polynomial
  for (const auto& [key, c] : terms_) {
    const int s = key.s2 / 2;
    const int parity = ((s % 2) + 2) % 2;
    poly_add(classes[parity][s], key.alpha, c);
  }
  for (auto& [parity, by_s] : classes) {
    const int cap = parity == 0 ? 0 : 1;
    int target = cap;
    for (const auto& [s, poly] : by_s) {
      (void)poly;
      target = std::min(target, s);
    }
    Poly combined;
    for (const auto& [s, poly] : by_s) {
      for (const auto& [alpha, c] : poly_times_r2(poly, dim_, (s - target) / 2)) {
        poly_add(combined, alpha, c);
      }
    }
    while (target + 2 <= cap && !combined.empty()) {
      auto quot = poly_divide_r2(combined, dim_);
      if (!quot) {
        break;
      }
      combined = std::move(*quot);
      target += 2;
    }
    for (const auto& [alpha, c] : combined) {
      out.add_term(alpha, 2 * target, c);
    }
  }
  return out;
}

bool RadialPoly::is_zero(double tol) const { return max_abs_coeff() <= tol; }

double RadialPoly::max_abs_coeff() const {
  double worst = 0.0;
  for (const auto& [key, c] : terms_) {
    worst = std::max(worst, std::abs(c));
  }
  return worst;
}

bool RadialPoly::same_as(const RadialPoly& o, double tol) const {
  return (*this - o).normalize().is_zero(tol);
}

RadialPoly RadialPoly::derive(int j) const {
  if (j < 0 || j >= dim_) {
    throw DomainError("RadialPoly::derive: axis out of range");
  }
  RadialPoly out(dim_);
  for (const auto& [key, c] : terms_) {
    if (key.alpha[j] > 0) {
      std::vector<int> alpha = key.alpha;
      alpha[j] -= 1;
      out.add_term(alpha, key.s2, c * key.alpha[j]);
    }
    if (key.s2 != 0) {
      std::vector<int> alpha = key.alpha;
      alpha[j] += 1;
      out.add_term(alpha, key.s2 - 4, c * (key.s2 / 2.0));
    }
  }
  return out;
}

double RadialPoly::eval(const RealVec& x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw DomainError("RadialPoly::eval: dimension mismatch");
  }
  double r2 = 0.0;
  for (double xi : x) {
    r2 += xi * xi;
  }
  const double r = std::sqrt(r2);
  double sum = 0.0;
  for (const auto& [key, c] : terms_) {
    double term = c * std::pow(r, key.s2 / 2.0);
    for (int j = 0; j < dim_; ++j) {
      for (int a = 0; a < key.alpha[j]; ++a) {
        term *= x[j];
      }
    }
    sum += term;
  }
  return sum;
}

}  // namespace rlab
