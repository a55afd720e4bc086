#pragma once

// The cohomology algebra of the open moduli space in chord-diagram
// coordinates: the free odd algebra on the generators a_{ij} modulo the
// quadratic relations attached to completely crossing pairs.  Reduction to
// the gravity-diagram basis is exact sparse Gaussian elimination with
// non-gravity monomials as preferred pivots, memoized per (n, degree).

#include <map>
#include <utility>
#include <vector>

#include "exotic/diagrams.hpp"
#include "exotic/rational.hpp"

namespace exotic::arnold {

using diagrams::Chord;
using diagrams::ChordMonomial;

// canonical (sorted, sign +1) chord list
using Key = std::vector<Chord>;

struct FormExpr {
  int n = 0;
  std::map<Key, Rat> terms;

  FormExpr() = default;
  explicit FormExpr(int n_) : n(n_) {}

  bool is_zero() const { return terms.empty(); }
  // adds c * (chords in the given order), canonicalizing
  void add(const std::vector<Chord>& ch, const Rat& c, int sign = 1);
  void add_monomial(const ChordMonomial& m, const Rat& c);
  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator*=(const Rat& c);
  friend bool operator==(const FormExpr&, const FormExpr&) = default;
};

std::string form_str(const FormExpr& f);

// cochain-to-form substitution; preserves order and sign
FormExpr kz(const ChordMonomial& m);

// spanning set of the degree-k part of the relation ideal, 2 <= k <= n-3
std::vector<FormExpr> relation_space(int n, int k);

struct GravityVector {
  int n = 0, k = 0;
  std::map<Key, Rat> coeffs;
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const GravityVector&, const GravityVector&) = default;
};

struct PrimeVector {
  int n = 0, k = 0;
  std::map<Key, Rat> coeffs;
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const PrimeVector&, const PrimeVector&) = default;
};

// unique gravity-basis expansion of the class of f (f homogeneous)
GravityVector reduce_to_gravity(const FormExpr& f);

// gravity expansion restricted to prime keys
PrimeVector regularize(const FormExpr& f);

// rank of the degree-k relation space; quotient dim = #monomials - rank
int relation_rank(int n, int k);

// sum of tensor products of forms on the two polygons cut out by a chord
struct FormTensor {
  int n_outer = 0, n_inner = 0;
  std::map<std::pair<Key, Key>, Rat> terms;
  bool is_zero() const { return terms.empty(); }
};

// Poincare residue: d/d(a_c) followed by regularized restriction
FormTensor residue_form(const FormExpr& f, const Chord& c);

// relabels chord endpoints by a permutation of [n], re-canonicalizing
FormExpr dihedral_action(const FormExpr& f, const std::vector<int>& perm);

std::vector<int> rotation_perm(int n, int shift);
// i -> n+1-i composed with rotations gives all reflections; this one fixes n
// for even n in the form used for the hexagon flip 5<4<3<2<1<6
std::vector<int> reflection_perm(int n);

} // namespace exotic::arnold
