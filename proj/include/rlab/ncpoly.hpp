#pragma once

#include <random>
#include <string>
#include <vector>

#include "rlab/deform.hpp"

namespace rlab {

struct NonTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Word = std::vector<int>;

// noncommutative polynomial over an ordered generator alphabet
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

  static NCPoly unit(const std::vector<std::string>& alphabet, DeformSeries c = 1.0);
  static NCPoly generator(const std::vector<std::string>& alphabet, int symbol);
  static NCPoly word(const std::vector<std::string>& alphabet, const Word& w,
                     DeformSeries c = 1.0);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::map<Word, DeformSeries>& terms() const { return terms_; }
  bool is_zero(double tol = 1e-10) const;
  double max_abs_coeff() const;

  NCPoly& add_word(const Word& w, const DeformSeries& c);
  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator*(const NCPoly& o) const;
  NCPoly operator*(const DeformSeries& c) const;
  NCPoly operator-() const { return *this * DeformSeries(-1.0); }

 private:
  void check_compatible(const NCPoly& o) const;

  std::vector<std::string> alphabet_;
  std::map<Word, DeformSeries> terms_;
};

NCPoly nc_multiply(const NCPoly& p, const NCPoly& r);
NCPoly nc_commutator(const NCPoly& p, const NCPoly& r);

struct RewriteRule {
  std::pair<int, int> lhs;
  NCPoly rhs;
};

struct RewriteSystem {
  std::vector<std::string> alphabet;
  std::vector<RewriteRule> rules;

  // every rule must strictly decrease the degree-lexicographic order
  void validate() const;
};

NCPoly normal_form(const NCPoly& p, const RewriteSystem& r, long budget = 2000000);

bool confluence_probe(const RewriteSystem& r, int trials, int max_len);

// per-letter derivation extended by the Leibniz rule
NCPoly apply_derivation(const NCPoly& p, const std::vector<DeformSeries>& letter_rates);

}  // namespace rlab
