#pragma once

// Assembly of the deformation: the operations nu_n as period-weighted
// sums of homology coefficient vectors, their flattened chain form, and
// the identity checkers driven through the Darboux representation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exotic/arnold.hpp"
#include "exotic/darboux.hpp"
#include "exotic/graphs.hpp"
#include "exotic/mzv.hpp"
#include "exotic/periods.hpp"

namespace exotic::ainfty {

using diagrams::ChordMonomial;

// sum over all top-degree chord monomials of the regularized coefficient
// of the prime form attached to P, times the extracted class of the
// chords-to-graphs image
graphs::BVClassVector compute_gP(const ChordMonomial& P);

enum class PeriodMode { numeric, symbolic_known };

struct ExoticTerm {
  ChordMonomial P;                       // canonical signed prime monomial
  std::string bracketing;                // source prime bracketing
  double period_value = 0;               // numeric period of alpha_P
  double period_error = 0;
  std::optional<mzv::MZVExpr> period;    // fitted form, when available
  graphs::BVClassVector cls;             // g_P
};

struct ExoticOperation {
  int n = 0;
  std::vector<ExoticTerm> terms;
};

struct ComputeOptions {
  PeriodMode mode = PeriodMode::symbolic_known;
  double tol = 1e-7;
  int threads = 0;
};

ExoticOperation compute_nu(int n, const ComputeOptions& opt = {});

// nu_n flattened to graph chains, one per MZV label; labels carry both the
// fitted expression (when known) and a numeric value
struct NuChain {
  int n = 0;
  struct Part {
    mzv::MZVExpr label;    // e.g. zeta(3), or 1 for the rational part
    double numeric = 0;    // numeric value of the label
    graphs::GraphChain chain;
  };
  std::vector<Part> parts;
};

NuChain nu_chain(int n, const ComputeOptions& opt = {});

struct CheckReport {
  bool pass = false;
  double max_residual = 0;
  int trials = 0;
  std::string detail;
};

struct CheckOptions {
  int d = 2;
  int trials = 20;
  double tol = 1e-8;
  std::uint64_t seed = 7;
  double perturb = 0; // scale one nu5 coefficient by (1 + perturb)
  int threads = 0;
};

// associativity-type relations pushed through the representation, for the
// polygon arities 5..max_arity (max 8); inputs are random homogeneous
// tuples, residual is the largest coefficient of the defect polynomial
CheckReport ainfty_check(int max_arity, const CheckOptions& opt = {});

// the adjoint action of the bracket as a strict derivation of nu_n
CheckReport derivation_check(int n, const CheckOptions& opt = {});

// operator agreement of the flattened chain with the printed-term chains
// of the operadic computation, exact in the rational part
CheckReport nu5_match(const CheckOptions& opt = {});

// Delta^2, bracket symmetry/Jacobi/derivation, Delta-derivation
CheckReport bv_axioms(const CheckOptions& opt = {});

// cyclic compatibility of the chords-to-graphs map, 4 <= n <= max_n
CheckReport appendix_identity(int max_n = 9);

// gravity counts against the relation-quotient rank, and the prime span
// against the joint residue kernel
CheckReport bases_check(int max_n = 7);

} // namespace exotic::ainfty
