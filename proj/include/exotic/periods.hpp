#pragma once

// Dihedral coordinates in the simplex chart of the associahedron, the
// logarithmic top-degree integrand attached to a prime diagram, and the
// numerical period integrals with their MZV fits.
//
// Gauge: z_1 = 0, z_2..z_{n-2} = t_1 < ... < t_{n-3}, z_{n-1} = 1,
// z_n = infinity; factors involving z_n cancel pairwise in the cross-ratios
// and are dropped symbolically.

#include <optional>
#include <stdexcept>
#include <vector>

#include "exotic/diagrams.hpp"
#include "exotic/mzv.hpp"
#include "exotic/quad.hpp"

namespace exotic::periods {

using diagrams::Chord;
using diagrams::ChordMonomial;

// strictly increasing interior point 0 < t_1 < ... < t_{n-3} < 1
using SimplexPoint = std::vector<double>;

// the cross-ratio coordinate of a chord at an interior point; lies in (0,1)
double dihedral_coordinate(int n, const Chord& c, const SimplexPoint& p);

// d/dt_b log u_c at p
double dlog_coordinate(int n, const Chord& c, int b, const SimplexPoint& p);

// determinant of the dlog Jacobian in the monomial's chord order, times its
// sign; P must have n-3 chords
double integrand(const ChordMonomial& P, const SimplexPoint& p);

// reusable integrand closure
quad::SimplexFn integrand_fn(const ChordMonomial& P);

enum class Method { nested, montecarlo };

struct PeriodResult {
  double value = 0;
  double error_estimate = 0;
  std::int64_t samples_or_depth = 0;
  bool converged = true;
  std::optional<mzv::MZVExpr> fitted;
};

struct BudgetError : std::runtime_error {
  PeriodResult best;
  explicit BudgetError(const PeriodResult& r)
      : std::runtime_error("integration did not converge within budget"),
        best(r) {}
};

struct IntegrateOptions {
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::int64_t mc_samples = 4'000'000;
  int threads = 0; // 0 = all
};

// nested: iterated quadrature (n <= 7); montecarlo: any n
PeriodResult integrate(const ChordMonomial& P, Method method,
                       const IntegrateOptions& opt = {});

// integrate then fit at weight n-3; on fit failure the numeric-only result
// is returned with fitted empty
PeriodResult period(const ChordMonomial& P, const mzv::Table& table,
                    const IntegrateOptions& opt = {});

} // namespace exotic::periods
