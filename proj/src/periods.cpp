#include "exotic/periods.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace exotic::periods {

namespace {

// z-codes in the gauge: constants 0 and 1, or a simplex variable
enum : int { Z_ZERO = -1, Z_ONE = -2 };

int z_code(int n, int v) {
  if (v == n + 1) v = 1;
  if (v == 1) return Z_ZERO;
  if (v == n - 1) return Z_ONE;
  if (v == n) throw std::logic_error("z_code: vertex at infinity");
  return v - 2; // t-index
}

double z_val(int code, const SimplexPoint& p) {
  if (code == Z_ZERO) return 0.0;
  if (code == Z_ONE) return 1.0;
  return p[code];
}

struct Factor {
  int p, q; // z-codes of z_p - z_q
  int sgn;  // +1 numerator, -1 denominator
};

// the four cross-ratio factors (i,j+1),(i+1,j) over (i,j),(i+1,j+1), with
// the two factors through the point at infinity cancelled symbolically
std::vector<Factor> finite_factors(int n, const Chord& c) {
  int i = c.a, j = c.b;
  const std::array<std::array<int, 3>, 4> raw = {
      {{i, j + 1, 1}, {i + 1, j, 1}, {i, j, -1}, {i + 1, j + 1, -1}}};
  std::vector<Factor> out;
  int bal = 0;
  for (auto& [p, q, sgn] : raw) {
    if (p == n || q == n)
      bal += sgn;
    else
      out.push_back({z_code(n, p), z_code(n, q), sgn});
  }
  if (bal != 0)
    throw std::logic_error("dihedral coordinate: unbalanced infinities");
  return out;
}

struct Compiled {
  int n = 0, d = 0, sign = 1;
  std::vector<std::vector<Factor>> rows; // factors per chord

  double eval(const SimplexPoint& t) const {
    double M[5][5] = {};
    for (int r = 0; r < d; ++r)
      for (const Factor& f : rows[r]) {
        double inv = f.sgn / (z_val(f.p, t) - z_val(f.q, t));
        if (f.p >= 0) M[r][f.p] += inv;
        if (f.q >= 0) M[r][f.q] -= inv;
      }
    double det = sign;
    for (int col = 0; col < d; ++col) {
      int piv = col;
      for (int r = col + 1; r < d; ++r)
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
      if (piv != col) {
        for (int k = 0; k < d; ++k) std::swap(M[col][k], M[piv][k]);
        det = -det;
      }
      double lead = M[col][col];
      if (lead == 0) return 0;
      det *= lead;
      for (int r = col + 1; r < d; ++r) {
        double f = M[r][col] / lead;
        if (f == 0) continue;
        for (int k = col; k < d; ++k) M[r][k] -= f * M[col][k];
      }
    }
    return det;
  }
};

Compiled compile(const ChordMonomial& P) {
  const int d = P.n - 3;
  if (P.degree() != d)
    throw std::domain_error("integrand: need a top-degree monomial");
  if (d > 5) throw std::domain_error("integrand: polygon too large");
  Compiled c;
  c.n = P.n;
  c.d = d;
  c.sign = P.sign;
  for (const Chord& ch : P.chords) c.rows.push_back(finite_factors(P.n, ch));
  return c;
}

} // namespace

double dihedral_coordinate(int n, const Chord& c, const SimplexPoint& p) {
  if (static_cast<int>(p.size()) != n - 3)
    throw std::domain_error("dihedral_coordinate: wrong point dimension");
  double num = 1, den = 1;
  for (const Factor& f : finite_factors(n, c)) {
    double v = z_val(f.p, p) - z_val(f.q, p);
    (f.sgn > 0 ? num : den) *= v;
  }
  return num / den;
}

double dlog_coordinate(int n, const Chord& c, int b, const SimplexPoint& p) {
  double total = 0;
  for (const Factor& f : finite_factors(n, c)) {
    double d = (f.p == b ? 1.0 : 0.0) - (f.q == b ? 1.0 : 0.0);
    if (d == 0) continue;
    total += f.sgn * d / (z_val(f.p, p) - z_val(f.q, p));
  }
  return total;
}

double integrand(const ChordMonomial& P, const SimplexPoint& p) {
  return compile(P).eval(p);
}

quad::SimplexFn integrand_fn(const ChordMonomial& P) {
  Compiled c = compile(P);
  return [c](const std::vector<double>& t) { return c.eval(t); };
}

PeriodResult integrate(const ChordMonomial& P, Method method,
                       const IntegrateOptions& opt) {
  const int d = P.n - 3;
  PeriodResult out;
  if (method == Method::montecarlo) {
    auto r = quad::integrate_simplex_mc(integrand_fn(P), d, opt.mc_samples,
                                        opt.seed, opt.threads);
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    out.samples_or_depth = r.evaluations;
    return out;
  }
  if (P.n > 7)
    throw std::domain_error("integrate: nested quadrature supports n <= 7");
  const int max_level = d >= 4 ? 4 : (d == 3 ? 6 : 8);
  auto fn = integrand_fn(P);
  for (int level = 3;; ++level) {
    auto r = quad::integrate_simplex_de(fn, d, level, opt.threads);
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    out.samples_or_depth = level;
    if (r.error_estimate < opt.tol) return out;
    if (level >= max_level) break;
  }
  out.converged = false;
  throw BudgetError(out);
}

PeriodResult period(const ChordMonomial& P, const mzv::Table& table,
                    const IntegrateOptions& opt) {
  PeriodResult r = integrate(P, Method::nested, opt);
  int weight = P.n - 3;
  double fit_tol = std::max(opt.tol * 20, r.error_estimate * 20);
  try {
    r.fitted = mzv::fit_mzv(r.value, weight, fit_tol, 64, table);
  } catch (const std::runtime_error&) {
    r.fitted.reset(); // ambiguous fit: keep the numeric value only
  }
  return r;
}

} // namespace exotic::periods
