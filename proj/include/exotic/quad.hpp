#pragma once

// Quadrature kernels for iterated integrals over the open simplex
// 0 < t_1 < ... < t_d < 1.  Two interchangeable implementations:
//
//  * a serial reference: per-dimension adaptive Gauss-Kronrod with
//    geometric pre-subdivision toward the interval endpoints, where the
//    integrands develop logarithmic singularities;
//  * an OpenMP kernel: iterated double-exponential (tanh-sinh) rules,
//    parallelized over the outermost dimension.
//
// Both are deterministic.  The kernel is the production path; the
// reference exists to cross-check it and stays in the test suite.

#include <cstdint>
#include <functional>
#include <vector>

namespace exotic::quad {

// integrand on the simplex; t has dim entries, increasing
using SimplexFn = std::function<double(const std::vector<double>&)>;

struct QuadResult {
  double value = 0;
  double error_estimate = 0;
  std::int64_t evaluations = 0;
};

// serial reference
QuadResult integrate_simplex_reference(const SimplexFn& f, int dim,
                                       double tol);

// OpenMP tanh-sinh kernel; level picks the node count per dimension
// (roughly 12 * 2^level + 1); the error estimate compares the last two
// levels
QuadResult integrate_simplex_de(const SimplexFn& f, int dim, int level,
                                int threads = 0);

// Monte Carlo with counter-based sampling: deterministic for a given seed
// regardless of the number of threads; error estimate from batch means
QuadResult integrate_simplex_mc(const SimplexFn& f, int dim,
                                std::int64_t samples, std::uint64_t seed,
                                int threads = 0);
QuadResult integrate_simplex_mc_reference(const SimplexFn& f, int dim,
                                          std::int64_t samples,
                                          std::uint64_t seed);

} // namespace exotic::quad
