#include "exotic/mzv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace exotic::mzv {

int MZVWord::weight() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::string MZVWord::str() const {
  std::string s = "zeta(";
  for (size_t i = 0; i < exponents.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponents[i]);
  }
  return s + ")";
}

MZVWord parse_word(const std::string& s) {
  auto l = s.find('('), r = s.rfind(')');
  if (l == std::string::npos || r == std::string::npos || s.substr(0, l) != "zeta")
    throw std::invalid_argument("bad zeta word: " + s);
  MZVWord w;
  std::stringstream ss(s.substr(l + 1, r - l - 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) w.exponents.push_back(std::stoi(tok));
  if (w.exponents.empty() || w.exponents.back() < 2)
    throw std::invalid_argument("divergent zeta word: " + s);
  for (int k : w.exponents)
    if (k < 1) throw std::invalid_argument("bad exponent in " + s);
  return w;
}

int monomial_weight(const MZVMonomial& m) {
  int w = 0;
  for (const auto& x : m) w += x.weight();
  return w;
}

std::string monomial_str(const MZVMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += "*";
    s += m[i].str();
  }
  return s;
}

MZVExpr MZVExpr::one() { return rational(1); }

MZVExpr MZVExpr::rational(const Rat& c) {
  MZVExpr e;
  if (c != 0) e.terms[{}] = c;
  return e;
}

MZVExpr MZVExpr::word(const MZVWord& w, const Rat& c) {
  MZVExpr e;
  if (c != 0) e.terms[{w}] = c;
  return e;
}

void MZVExpr::add(const MZVMonomial& m, const Rat& c) {
  if (c == 0) return;
  Rat& slot = terms[m];
  slot += c;
  if (slot == 0) terms.erase(m);
}

MZVExpr& MZVExpr::operator+=(const MZVExpr& o) {
  for (auto& [m, c] : o.terms) add(m, c);
  return *this;
}

MZVExpr& MZVExpr::operator*=(const Rat& c) {
  if (c == 0) { terms.clear(); return *this; }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

std::string MZVExpr::str() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms) {
    Rat a = c;
    if (first) {
      if (a < 0) { s += "-"; a = -a; }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string cs = rat_str(a);
    if (m.empty()) s += cs;
    else if (cs == "1") s += monomial_str(m);
    else s += cs + "*" + monomial_str(m);
  }
  return s;
}

// ---- numerics ----------------------------------------------------------
//
// Iterated-integral representation: zeta(k1,...,kr) is the simplex integral
// of the word x0^{kr-1} x1 ... x0^{k1-1} x1 with f_{x0} = dt/t and
// f_{x1} = dt/(1-t).  Splitting the integration path at 1/2 expresses the
// value through partial integrals that converge like 2^-N:
//
//   I(w; 0,1) = sum_j I(suffix_j; 0,1/2) * I(rev. complement prefix_j; 0,1/2)
//
// and each I(u; 0,1/2) is evaluated by propagating truncated power series.

namespace {

std::vector<int> word_letters(const MZVWord& w) {
  std::vector<int> letters;
  for (auto it = w.exponents.rbegin(); it != w.exponents.rend(); ++it) {
    for (int i = 0; i < *it - 1; ++i) letters.push_back(0);
    letters.push_back(1);
  }
  return letters;
}

// I(u; 0, 1/2) for a word ending in x1, by series of length N
Real half_integral(const std::vector<int>& u, int N) {
  if (u.empty()) return 1;
  std::vector<Real> c(N + 1, Real(0));
  bool innermost = true;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    std::vector<Real> d(N + 1, Real(0));
    if (innermost) {
      if (*it == 0) throw std::logic_error("divergent tail in half_integral");
      for (int n = 1; n <= N; ++n) d[n] = Real(1) / n; // log(1/(1-z))
      innermost = false;
    } else if (*it == 0) {
      for (int n = 1; n <= N; ++n) d[n] = c[n] / n;
    } else {
      Real run = 0;
      for (int n = 1; n <= N; ++n) {
        run += c[n - 1];
        d[n] = run / n;
      }
    }
    c = std::move(d);
  }
  Real z = Real(1) / 2, pw = 1, total = 0;
  for (int n = 1; n <= N; ++n) {
    pw *= z;
    total += c[n] * pw;
  }
  return total;
}

} // namespace

Real mzv_value(const MZVWord& w, int digits) {
  if (digits > 30) throw std::domain_error("mzv_value: digits capped at 30");
  if (w.exponents.empty() || w.exponents.back() < 2)
    throw std::domain_error("mzv_value: divergent word");
  int N = std::max(120, static_cast<int>(digits * 3.4) + 40);
  auto letters = word_letters(w);
  const int m = static_cast<int>(letters.size());
  Real total = 0;
  for (int j = 0; j <= m; ++j) {
    std::vector<int> suffix(letters.begin() + j, letters.end());
    std::vector<int> revcomp;
    for (int i = j - 1; i >= 0; --i) revcomp.push_back(1 - letters[i]);
    total += half_integral(suffix, N) * half_integral(revcomp, N);
  }
  return total;
}

// ---- relation table -----------------------------------------------------

namespace {

MZVMonomial parse_monomial(const std::string& s) {
  MZVMonomial m;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      m.push_back(parse_word(cur));
      cur.clear();
    } else if (ch != ' ')
      cur += ch;
  }
  if (!cur.empty()) m.push_back(parse_word(cur));
  std::sort(m.begin(), m.end());
  return m;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string strip(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

Table parse_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int weight = 0;
  while (std::getline(in, line)) {
    line = strip(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "weight") {
      ls >> weight;
      t.max_weight_ = std::max(t.max_weight_, weight);
      t.bases_.try_emplace(weight);
    } else if (head == "basis") {
      std::string w;
      ls >> w;
      t.bases_[weight].push_back(parse_word(w));
    } else if (head == "reduce") {
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("table: missing '=' in " + line);
      MZVMonomial lhs = parse_monomial(strip(rest.substr(0, eq)));
      MZVExpr rhs;
      std::string r = strip(rest.substr(eq + 1));
      size_t pos = 0;
      int sign = 1;
      while (pos < r.size()) {
        while (pos < r.size() && (r[pos] == ' ' || r[pos] == '+')) ++pos;
        if (pos < r.size() && r[pos] == '-') { sign = -sign; ++pos; continue; }
        if (pos >= r.size()) break;
        size_t next = pos;
        int depth = 0;
        while (next < r.size()) {
          if (r[next] == '(') ++depth;
          if (r[next] == ')') --depth;
          if (depth == 0 && (r[next] == '+' || r[next] == '-')) break;
          ++next;
        }
        std::string term = strip(r.substr(pos, next - pos));
        pos = next;
        auto star = term.find('*');
        Rat c = 1;
        std::string mon = term;
        if (star != std::string::npos && term.find("zeta") > star) {
          c = parse_rat(strip(term.substr(0, star)));
          mon = strip(term.substr(star + 1));
        }
        rhs.add(parse_monomial(mon), sign * c);
        sign = 1;
      }
      if (monomial_weight(lhs) != weight)
        throw std::invalid_argument("table: weight mismatch in " + line);
      t.rules_[lhs] = rhs;
    } else {
      throw std::invalid_argument("table: unknown directive " + head);
    }
  }
  // numeric self-validation of every shipped relation
  for (auto& [lhs, rhs] : t.rules_) {
    Real lv = 1;
    for (auto& w : lhs) lv *= mzv_value(w, 20);
    Real rv = 0;
    for (auto& [m, c] : rhs.terms) {
      Real mv = 1;
      for (auto& w : m) mv *= mzv_value(w, 20);
      rv += mv * Real(numerator(c)) / Real(denominator(c));
    }
    double defect = std::abs(static_cast<double>(lv - rv));
    t.max_defect_ = std::max(t.max_defect_, defect);
    if (defect > 1e-10)
      throw std::invalid_argument("table: relation fails numerically: " +
                                  monomial_str(lhs));
  }
  return t;
}

Table Table::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mzv table: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

const Table& Table::default_table() {
  static Table t = [] {
    const char* env = std::getenv("EXOTIC_MZV_TABLE");
    return Table::load(env ? env : EXOTIC_DEFAULT_MZV_TABLE);
  }();
  return t;
}

Table Table::empty() { return Table{}; }

const std::vector<MZVWord>& Table::basis(int weight) const {
  static const std::vector<MZVWord> none;
  auto it = bases_.find(weight);
  return it == bases_.end() ? none : it->second;
}

MZVExpr Table::reduce(const MZVExpr& e) const {
  MZVExpr cur = e;
  for (int round = 0; round < 16; ++round) {
    MZVExpr next;
    bool changed = false;
    for (auto& [m, c] : cur.terms) {
      auto it = rules_.find(m);
      if (it != rules_.end()) {
        MZVExpr sub = it->second;
        sub *= c;
        next += sub;
        changed = true;
        continue;
      }
      bool done = false;
      // single reducible word
      for (size_t i = 0; i < m.size() && !done; ++i) {
        auto wi = rules_.find(MZVMonomial{m[i]});
        if (wi == rules_.end()) continue;
        MZVMonomial rest = m;
        rest.erase(rest.begin() + i);
        for (auto& [rm, rc] : wi->second.terms) {
          MZVMonomial prod = rest;
          prod.insert(prod.end(), rm.begin(), rm.end());
          std::sort(prod.begin(), prod.end());
          next.add(prod, c * rc);
        }
        done = changed = true;
      }
      // reducible pair of factors
      for (size_t i = 0; i < m.size() && !done; ++i)
        for (size_t j = i + 1; j < m.size() && !done; ++j) {
          MZVMonomial pair{m[i], m[j]};
          std::sort(pair.begin(), pair.end());
          auto pi = rules_.find(pair);
          if (pi == rules_.end()) continue;
          MZVMonomial rest = m;
          rest.erase(rest.begin() + j);
          rest.erase(rest.begin() + i);
          for (auto& [rm, rc] : pi->second.terms) {
            MZVMonomial prod = rest;
            prod.insert(prod.end(), rm.begin(), rm.end());
            std::sort(prod.begin(), prod.end());
            next.add(prod, c * rc);
          }
          done = changed = true;
        }
      if (!done) next.add(m, c);
    }
    cur = std::move(next);
    if (!changed) break;
  }
  return cur;
}

MZVExpr mzv_mul(const MZVExpr& a, const MZVExpr& b, const Table& t) {
  MZVExpr prod;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      MZVMonomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      prod.add(m, ca * cb);
    }
  return t.reduce(prod);
}

Real evaluate(const MZVExpr& e, int digits) {
  Real total = 0;
  for (auto& [m, c] : e.terms) {
    Real mv = 1;
    for (auto& w : m) mv *= mzv_value(w, digits);
    total += mv * Real(numerator(c)) / Real(denominator(c));
  }
  return total;
}

std::optional<MZVExpr> fit_mzv(double x, int weight, double tol,
                               long denom_bound, const Table& t) {
  if (weight == 0) {
    std::optional<Rat> best;
    for (long b = 1; b <= denom_bound; ++b) {
      long a = std::lround(x * static_cast<double>(b));
      if (std::abs(x - static_cast<double>(a) / static_cast<double>(b)) < tol) {
        Rat cand(a, b);
        if (best && *best != cand)
          throw std::runtime_error("fit_mzv: ambiguous fit");
        if (!best) best = cand;
      }
    }
    if (!best) return std::nullopt;
    return MZVExpr::rational(*best);
  }
  const auto& basis = t.basis(weight);
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 1)
    throw std::runtime_error("fit_mzv: only one-dimensional bases supported");
  double zv = static_cast<double>(mzv_value(basis[0], 18));
  std::optional<Rat> best;
  for (long b = 1; b <= denom_bound; ++b) {
    long a = std::lround(x / zv * static_cast<double>(b));
    if (std::abs(x - static_cast<double>(a) / static_cast<double>(b) * zv) < tol) {
      Rat cand(a, b);
      if (best && *best != cand)
        throw std::runtime_error("fit_mzv: ambiguous fit");
      if (!best) best = cand;
    }
  }
  if (!best) return std::nullopt;
  return MZVExpr::word(basis[0], *best);
}

} // namespace exotic::mzv
