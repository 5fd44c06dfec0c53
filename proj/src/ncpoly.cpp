#include "rlab/ncpoly.hpp"

#include <algorithm>

namespace rlab {

namespace {

constexpr double kDropTol = 1e-12;

// degree-lexicographic comparison
bool deglex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a < b;
}

}  // namespace

NCPoly NCPoly::unit(const std::vector<std::string>& alphabet, DeformSeries c) {
  NCPoly p(alphabet);
  p.add_word({}, c);
  return p;
}

NCPoly NCPoly::generator(const std::vector<std::string>& alphabet, int symbol) {
  return word(alphabet, {symbol});
}

NCPoly NCPoly::word(const std::vector<std::string>& alphabet, const Word& w, DeformSeries c) {
  NCPoly p(alphabet);
  p.add_word(w, c);
  return p;
}

bool NCPoly::is_zero(double tol) const { return max_abs_coeff() <= tol; }

double NCPoly::max_abs_coeff() const {
  double worst = 0.0;
  for (const auto& [w, c] : terms_) {
    worst = std::max(worst, c.max_abs());
  }
  return worst;
}

NCPoly& NCPoly::add_word(const Word& w, const DeformSeries& c) {
  for (int s : w) {
    if (s < 0 || s >= static_cast<int>(alphabet_.size())) {
      throw DomainError("NCPoly: symbol outside the alphabet");
    }
  }
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!c.is_zero(kDropTol)) {
      terms_.emplace(w, c);
    }
    return *this;
  }
  it->second = it->second + c;
  if (it->second.is_zero(kDropTol)) {
    terms_.erase(it);
  }
  return *this;
}

void NCPoly::check_compatible(const NCPoly& o) const {
  if (alphabet_ != o.alphabet_) {
    throw DomainError("NCPoly: alphabet mismatch");
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  check_compatible(o);
  NCPoly out = *this;
  for (const auto& [w, c] : o.terms_) {
    out.add_word(w, c);
  }
  return out;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + -o; }

NCPoly NCPoly::operator*(const NCPoly& o) const {
  check_compatible(o);
  NCPoly out(alphabet_);
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_word(w, ca * cb);
    }
  }
  return out;
}

NCPoly NCPoly::operator*(const DeformSeries& c) const {
  NCPoly out(alphabet_);
  for (const auto& [w, v] : terms_) {
    out.add_word(w, v * c);
  }
  return out;
}

NCPoly nc_multiply(const NCPoly& p, const NCPoly& r) { return p * r; }

NCPoly nc_commutator(const NCPoly& p, const NCPoly& r) { return p * r - r * p; }

void RewriteSystem::validate() const {
  for (const auto& rule : rules) {
    const Word lhs{rule.lhs.first, rule.lhs.second};
    if (rule.rhs.alphabet() != alphabet) {
      throw DomainError("RewriteSystem: rule alphabet mismatch");
    }
    for (const auto& [w, c] : rule.rhs.terms()) {
      (void)c;
      if (!deglex_less(w, lhs)) {
        throw DomainError("RewriteSystem: rule does not decrease the term order");
      }
    }
  }
}

namespace {

struct Redex {
  size_t pos;
  size_t rule;
};

std::vector<Redex> find_redexes(const Word& w, const RewriteSystem& r) {
  std::vector<Redex> out;
  if (w.size() < 2) {
    return out;
  }
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    for (size_t k = 0; k < r.rules.size(); ++k) {
      if (w[i] == r.rules[k].lhs.first && w[i + 1] == r.rules[k].lhs.second) {
        out.push_back({i, k});
      }
    }
  }
  return out;
}

NCPoly reduce_with_picker(const NCPoly& p, const RewriteSystem& r, long budget,
                          const std::function<size_t(size_t)>& pick) {
  NCPoly out(p.alphabet());
  std::map<Word, DeformSeries> pending(p.terms().begin(), p.terms().end());
  long steps = 0;
  while (!pending.empty()) {
    auto it = pending.begin();
    const Word w = it->first;
    const DeformSeries c = it->second;
    pending.erase(it);
    if (c.is_zero()) {
      continue;
    }
    const auto redexes = find_redexes(w, r);
    if (redexes.empty()) {
      out.add_word(w, c);
      continue;
    }
    if (++steps > budget) {
      throw NonTermination("normal_form: rewrite budget exceeded");
    }
    const Redex chosen = redexes[pick(redexes.size())];
    const RewriteRule& rule = r.rules[chosen.rule];
    for (const auto& [rw, rc] : rule.rhs.terms()) {
      Word nw(w.begin(), w.begin() + chosen.pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + chosen.pos + 2, w.end());
      auto slot = pending.find(nw);
      if (slot == pending.end()) {
        pending.emplace(nw, c * rc);
      } else {
        slot->second = slot->second + c * rc;
        if (slot->second.is_zero()) {
          pending.erase(slot);
        }
      }
    }
  }
  return out;
}

}  // namespace

NCPoly normal_form(const NCPoly& p, const RewriteSystem& r, long budget) {
  r.validate();
  // leftmost-innermost: the first redex in scan order, first matching rule
  return reduce_with_picker(p, r, budget, [](size_t) { return size_t{0}; });
}

bool confluence_probe(const RewriteSystem& r, int trials, int max_len) {
  r.validate();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> sym(0, static_cast<int>(r.alphabet.size()) - 1);
  for (int t = 0; t < trials; ++t) {
    Word w(static_cast<size_t>(len(rng)));
    for (auto& s : w) {
      s = sym(rng);
    }
    const NCPoly p = NCPoly::word(r.alphabet, w);
    const NCPoly a = reduce_with_picker(p, r, 2000000, [](size_t) { return size_t{0}; });
    const NCPoly b = reduce_with_picker(p, r, 2000000, [&rng](size_t n) {
      return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
    });
    if (!(a - b).is_zero()) {
      return false;
    }
  }
  return true;
}

NCPoly apply_derivation(const NCPoly& p, const std::vector<DeformSeries>& letter_rates) {
  if (letter_rates.size() != p.alphabet().size()) {
    throw DomainError("apply_derivation: one rate per letter required");
  }
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) {
    DeformSeries total = 0.0;
    for (int s : w) {
      total = total + letter_rates[s];
    }
    out.add_word(w, c * total);
  }
  return out;
}

}  // namespace rlab
