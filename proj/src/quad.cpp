#include "exotic/quad.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <queue>
#include <omp.h>
#include <stdexcept>

namespace exotic::quad {

namespace {

// Gauss-Kronrod 7-15 on [-1,1]
const double gk_nodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
const double gk_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785,
    0.169004726639267, 0.140653259715525, 0.104790010322250,
    0.063092092629979, 0.022935322010529};
const double gk_wg[4] = {0.417959183673469, 0.381830050505119,
                         0.279705391489277, 0.129484966168870};

struct GK {
  double kronrod = 0, gauss = 0;
};

template <class F>
GK gk15(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  GK out;
  out.kronrod = fc * gk_wk[0];
  out.gauss = fc * gk_wg[0];
  for (int i = 1; i < 8; ++i) {
    double x = h * gk_nodes[i];
    double v = f(c - x) + f(c + x);
    out.kronrod += v * gk_wk[i];
    if (i % 2 == 0) out.gauss += v * gk_wg[i / 2];
  }
  out.kronrod *= h;
  out.gauss *= h;
  return out;
}

// Globally adaptive 1-d integration: keep a heap of panels and always
// split the one with the largest error estimate, until the total estimate
// meets the budget.  Splitting drives panels geometrically into the
// singular endpoints.
template <class F>
double adaptive_gk(const F& f, double a, double b, double tol,
                   double& err_acc, std::int64_t& evals) {
  struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi) {
    GK r = gk15(f, lo, hi);
    evals += 15;
    return Panel{lo, hi, r.kronrod, std::abs(r.kronrod - r.gauss)};
  };
  std::priority_queue<Panel> heap;
  heap.push(make(a, b));
  double total_err = heap.top().err;
  int panels = 1;
  while (total_err > tol && panels < 4000) {
    Panel p = heap.top();
    heap.pop();
    total_err -= p.err;
    if (p.b - p.a < 1e-14) {
      // too narrow to split; its estimate stays in the budget
      err_acc += p.err;
      total_err += 0;
      // keep the value by pushing it back with zero error
      heap.push(Panel{p.a, p.b, p.value, 0});
      continue;
    }
    double m = 0.5 * (p.a + p.b);
    Panel l = make(p.a, m), r = make(m, p.b);
    total_err += l.err + r.err;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  double total = 0;
  while (!heap.empty()) {
    total += heap.top().value;
    heap.pop();
  }
  err_acc += total_err;
  return total;
}

// recursive iterated integral: dimension `lvl` runs over (0, hi)
double reference_level(const SimplexFn& f, std::vector<double>& t, int lvl,
                       double hi, double tol, double& err_acc,
                       std::int64_t& evals) {
  auto g = [&](double x) {
    t[lvl] = x;
    if (lvl == 0) {
      ++evals;
      return f(t);
    }
    std::int64_t sub = 0;
    double v = reference_level(f, t, lvl - 1, x, tol * 0.5, err_acc, sub);
    evals += sub;
    return v;
  };
  return adaptive_gk(g, 0.0, hi, tol, err_acc, evals);
}

// tanh-sinh nodes on (0,1)
struct DERule {
  std::vector<double> x, w;
};

const DERule& de_rule(int level) {
  static std::mutex mu;
  static std::vector<DERule> cache;
  std::lock_guard<std::mutex> lock(mu);
  if ((int)cache.size() <= level) cache.resize(level + 1);
  DERule& r = cache[level];
  if (!r.x.empty()) return r;
  const double h = 1.0 / std::ldexp(1.0, level);
  const double A = 3.9;
  int K = static_cast<int>(A / h);
  for (int k = -K; k <= K; ++k) {
    double u = k * h;
    double s = std::sinh(u);
    double x = 0.5 * (1.0 + std::tanh(M_PI_2 * s));
    double c = std::cosh(M_PI_2 * s);
    double w = h * M_PI_2 * std::cosh(u) / (2.0 * c * c);
    if (x <= 0 || x >= 1 || w < 1e-310) continue;
    r.x.push_back(x);
    r.w.push_back(w);
  }
  return r;
}

double de_level(const SimplexFn& f, std::vector<double>& t, int lvl,
                double hi, const DERule& rule, std::int64_t& evals) {
  double total = 0;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    t[lvl] = hi * rule.x[i];
    double v;
    if (lvl == 0) {
      ++evals;
      v = f(t);
    } else {
      v = de_level(f, t, lvl - 1, t[lvl], rule, evals);
    }
    total += rule.w[i] * v;
  }
  return total * hi;
}

double de_run(const SimplexFn& f, int dim, int level, int threads,
              std::int64_t& evals) {
  const DERule& rule = de_rule(level);
  if (dim == 0) {
    std::vector<double> t;
    ++evals;
    return f(t);
  }
  const int outer = static_cast<int>(rule.x.size());
  std::vector<double> partial(outer, 0.0);
  std::vector<std::int64_t> counts(outer, 0);
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < outer; ++i) {
    std::vector<double> t(dim);
    t[dim - 1] = rule.x[i];
    if (dim == 1) {
      counts[i] = 1;
      partial[i] = rule.w[i] * f(t);
    } else {
      std::int64_t sub = 0;
      partial[i] = rule.w[i] * de_level(f, t, dim - 2, t[dim - 1], rule, sub);
      counts[i] = sub;
    }
  }
  double total = 0;
  for (int i = 0; i < outer; ++i) {
    total += partial[i];
    evals += counts[i];
  }
  return total;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double mc_batch(const SimplexFn& f, int dim, std::uint64_t seed,
                std::int64_t begin, std::int64_t end) {
  std::vector<double> t(dim);
  double sum = 0;
  for (std::int64_t i = begin; i < end; ++i) {
    std::uint64_t state = splitmix64(seed ^ (0x5851f42d4c957f2dull *
                                             static_cast<std::uint64_t>(i)));
    for (int d = 0; d < dim; ++d) {
      state = splitmix64(state);
      t[d] = uniform01(state);
    }
    std::sort(t.begin(), t.end());
    sum += f(t);
  }
  return sum;
}

double factorial(int d) {
  double v = 1;
  for (int i = 2; i <= d; ++i) v *= i;
  return v;
}

} // namespace

QuadResult integrate_simplex_reference(const SimplexFn& f, int dim,
                                       double tol) {
  QuadResult out;
  if (dim == 0) {
    std::vector<double> t;
    out.value = f(t);
    out.evaluations = 1;
    return out;
  }
  std::vector<double> t(dim);
  double err = 0;
  out.value = reference_level(f, t, dim - 1, 1.0, tol, err, out.evaluations);
  out.error_estimate = err;
  return out;
}

QuadResult integrate_simplex_de(const SimplexFn& f, int dim, int level,
                                int threads) {
  QuadResult out;
  std::int64_t e1 = 0, e2 = 0;
  double coarse = level > 1 ? de_run(f, dim, level - 1, threads, e1) : 0;
  double fine = de_run(f, dim, level, threads, e2);
  out.value = fine;
  out.error_estimate = level > 1 ? std::abs(fine - coarse) : 1.0;
  out.evaluations = e1 + e2;
  return out;
}

QuadResult integrate_simplex_mc(const SimplexFn& f, int dim,
                                std::int64_t samples, std::uint64_t seed,
                                int threads) {
  const std::int64_t batch = 1 << 14;
  const std::int64_t nbatch = std::max<std::int64_t>(4, samples / batch);
  std::vector<double> means(nbatch, 0.0);
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t b = 0; b < nbatch; ++b)
    means[b] = mc_batch(f, dim, seed, b * batch, (b + 1) * batch) /
               static_cast<double>(batch);
  double mean = 0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(nbatch);
  double var = 0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= static_cast<double>(nbatch - 1);
  QuadResult out;
  out.value = mean / factorial(dim);
  out.error_estimate =
      std::sqrt(var / static_cast<double>(nbatch)) / factorial(dim);
  out.evaluations = nbatch * batch;
  return out;
}

QuadResult integrate_simplex_mc_reference(const SimplexFn& f, int dim,
                                          std::int64_t samples,
                                          std::uint64_t seed) {
  return integrate_simplex_mc(f, dim, samples, seed, 1);
}

} // namespace exotic::quad
