#pragma once

// Graded-commutative polynomials on conjugate pairs (q^u even, p_u odd),
// the odd Laplacian and bracket, and the polydifferential operators
// attached to tadpole graphs acting on tensor tuples.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "exotic/graphs.hpp"
#include "exotic/rational.hpp"

namespace exotic::darboux {

// number of conjugate pairs; |q^u| = 0 and |p_u| = 1 throughout (the
// algebra admits other even q-degrees, but everything here runs on the
// standard grading)
struct Context {
  int d = 2;
  friend bool operator==(const Context&, const Context&) = default;
};

// monomial: q-exponents and a bitmask of odd p-factors (ascending order)
struct Mon {
  std::array<std::uint8_t, 4> q{};
  std::uint32_t pmask = 0;

  friend bool operator==(const Mon&, const Mon&) = default;
  friend auto operator<=>(const Mon&, const Mon&) = default;
};

int mon_degree(const Mon& m); // odd degree = popcount(pmask)

struct GradedPoly {
  Context ctx;
  std::map<Mon, Rat> terms;

  GradedPoly() = default;
  explicit GradedPoly(Context c) : ctx(c) {}
  static GradedPoly zero(Context c) { return GradedPoly(c); }
  static GradedPoly constant(Context c, const Rat& v);
  static GradedPoly variable_q(Context c, int u); // q^u, 1-based
  static GradedPoly variable_p(Context c, int u);

  bool is_zero() const { return terms.empty(); }
  void add(const Mon& m, const Rat& c);
  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator*=(const Rat& c);
  // true when every term has the same odd degree; sets deg
  bool homogeneous(int& deg) const;
  std::string str() const;
  friend bool operator==(const GradedPoly&, const GradedPoly&) = default;
};

GradedPoly mul(const GradedPoly& f, const GradedPoly& g);
GradedPoly add(GradedPoly f, const GradedPoly& g);
GradedPoly scale(GradedPoly f, const Rat& c);

// left partial derivatives
GradedPoly d_q(const GradedPoly& f, int u);
GradedPoly d_p(const GradedPoly& f, int u);

// linear substitution q -> a q + c, p -> p / a (an affine symplectomorphism)
GradedPoly affine_sub(const GradedPoly& f, const Rat& a, const Rat& c);

// odd Laplacian sum_u d_p d_q
GradedPoly delta(const GradedPoly& f);

// {f,g} = delta(fg) - delta(f) g - (-1)^{|f|} f delta(g), extended
// bilinearly over odd-degree components
GradedPoly bracket(const GradedPoly& f, const GradedPoly& g);

// ---- operators on tensor tuples ----------------------------------------

// tuple of homogeneous slots; operators act with Koszul signs
struct Tuple {
  Context ctx;
  std::vector<GradedPoly> slots;
};

// apply the operator of a single graph monomial: compose the edge/tadpole
// operators in the monomial's order (rightmost factor acts first), then
// multiply the slots together
GradedPoly apply_graph(const graphs::GraphMonomial& gm, const Tuple& in);

// linear extension over a chain
GradedPoly apply_chain(const graphs::GraphChain& chain, const Tuple& in);

// both sides of the Leibniz identity behind the tensor-level relation
// s_n = -1/2 sum b_{in}: returns LHS - RHS (identically zero)
GradedPoly leibniz_witness(const Tuple& in);

// deterministic sparse generator of homogeneous polynomials: degree <= 3
// per variable, coefficients in -3..3
GradedPoly random_poly(Context c, int odd_degree, std::uint64_t seed);
Tuple random_tuple(Context c, int slots, std::uint64_t seed);

} // namespace exotic::darboux
