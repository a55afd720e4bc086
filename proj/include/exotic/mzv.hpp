#pragma once

// Formal multiple zeta values: weight-graded expressions with exact
// rational coefficients, a pluggable relation table for low weights, and a
// high-precision numeric evaluator.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exotic/rational.hpp"

namespace exotic::mzv {

using Real = boost::multiprecision::cpp_bin_float_50;

// zeta(k1,...,kr) = sum over 0 < n1 < ... < nr of 1/(n1^k1 ... nr^kr)
struct MZVWord {
  std::vector<int> exponents; // k_r >= 2

  int weight() const;
  std::string str() const; // "zeta(1,2)"
  friend bool operator==(const MZVWord&, const MZVWord&) = default;
  friend auto operator<=>(const MZVWord&, const MZVWord&) = default;
};

MZVWord parse_word(const std::string& s);

// commutative monomial: sorted multiset of words; empty product is 1
using MZVMonomial = std::vector<MZVWord>;

int monomial_weight(const MZVMonomial& m);
std::string monomial_str(const MZVMonomial& m);

struct MZVExpr {
  std::map<MZVMonomial, Rat> terms;

  static MZVExpr one();
  static MZVExpr rational(const Rat& c);
  static MZVExpr word(const MZVWord& w, const Rat& c = 1);
  bool is_zero() const { return terms.empty(); }
  void add(const MZVMonomial& m, const Rat& c);
  MZVExpr& operator+=(const MZVExpr& o);
  MZVExpr& operator*=(const Rat& c);
  std::string str() const;
  friend bool operator==(const MZVExpr&, const MZVExpr&) = default;
};

// numeric value, correct to the requested number of digits (<= 30)
Real mzv_value(const MZVWord& w, int digits = 15);

// weight-graded relation table; every entry is validated numerically on load
class Table {
public:
  // entries `reduce <monomial> = c1 * w1 + ...` and `basis <word>` grouped
  // under `weight k` headers
  static Table load(const std::string& path);
  static const Table& default_table();
  static Table empty();

  int max_weight() const { return max_weight_; }
  const std::vector<MZVWord>& basis(int weight) const;
  // substitute table entries until stable
  MZVExpr reduce(const MZVExpr& e) const;
  // largest numeric defect among entries (for self-validation reporting)
  double max_defect() const { return max_defect_; }
  size_t entry_count() const { return rules_.size(); }
  bool covers(int weight) const { return weight <= max_weight_; }

private:
  int max_weight_ = 0;
  double max_defect_ = 0;
  std::map<int, std::vector<MZVWord>> bases_;
  std::map<MZVMonomial, MZVExpr> rules_;
  friend Table parse_table(const std::string& text);
};

Table parse_table(const std::string& text);

// formal product, reduced by the table where the weight is covered
MZVExpr mzv_mul(const MZVExpr& a, const MZVExpr& b, const Table& t);

Real evaluate(const MZVExpr& e, int digits = 15);

// bounded-denominator search for x as a rational combination of the
// weight-w basis; nullopt when nothing matches, error when ambiguous
std::optional<MZVExpr> fit_mzv(double x, int weight, double tol,
                               long denom_bound, const Table& t);

} // namespace exotic::mzv
