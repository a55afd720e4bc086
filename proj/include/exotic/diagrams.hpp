#pragma once

// Chords, tesselations and dihedral chord diagrams on labeled n-gons.
//
// Vertices of the n-gon are labeled 1..n counterclockwise, side i running
// from vertex i-1 to vertex i.  A chord is an unordered pair of vertices
// that are not cyclically consecutive.  Monomials in the (odd) chord
// generators are kept in a fixed canonical order, with the sign of the
// sorting permutation folded into the value.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exotic::diagrams {

struct Chord {
  int a = 0, b = 0; // normalized: a < b

  Chord() = default;
  Chord(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}

  friend bool operator==(const Chord&, const Chord&) = default;
  friend auto operator<=>(const Chord& x, const Chord& y) = default;
};

std::string chord_str(const Chord& c);

bool is_chord(int n, int i, int j);

// The chord set of the n-gon, in canonical (lex) order.  n >= 4.
std::vector<Chord> chords(int n);

// True iff the endpoints of c2 lie in different arcs cut by c1.
bool crosses(int n, const Chord& c1, const Chord& c2);

// All chords crossing every member of A.
std::vector<Chord> perp(int n, const std::vector<Chord>& A);

// Unordered pairs (A,B) with perp(A)=B and perp(B)=A, obtained by closing
// singleton and 2-element seeds under perp.
std::vector<std::pair<std::vector<Chord>, std::vector<Chord>>>
complete_crossing_pairs(int n);

// A signed product of distinct chord generators in canonical order.
// sign == 0 encodes the zero value (e.g. a repeated generator).
struct ChordMonomial {
  int n = 0;
  int sign = 1;
  std::vector<Chord> chords;

  bool is_zero() const { return sign == 0; }
  int degree() const { return static_cast<int>(chords.size()); }
  bool contains(const Chord& c) const;

  friend bool operator==(const ChordMonomial&, const ChordMonomial&) = default;
  friend auto operator<=>(const ChordMonomial&, const ChordMonomial&) = default;
};

std::string monomial_str(const ChordMonomial& m);

// Sorts the generators, folding the permutation parity into the sign;
// a repeated generator gives the zero value.
ChordMonomial canonicalize(int n, std::vector<Chord> ch, int sign = 1);

ChordMonomial unit_monomial(int n);

// Splitting the polygon along c.  first = outer polygon (containing the
// wrap-around side), second = inner polygon on vertices i..j.  The sign of
// the unshuffle is folded into the first factor.  Zero if some generator
// equals or crosses c.
struct TensorPair {
  ChordMonomial outer, inner;
  bool is_zero() const { return outer.is_zero(); }
};

TensorPair cocompose(const ChordMonomial& m, const Chord& c);

// d/d(delta_c) followed by cocompose; zero when c is absent or some
// remaining chord crosses c.
TensorPair residue_diagram(const ChordMonomial& m, const Chord& c);

bool is_gravity(const ChordMonomial& m);
bool is_prime(const ChordMonomial& m);

enum class DiagramClass { all, gravity, prime };

// All canonical monomials of k chords in the requested class.
std::vector<ChordMonomial> enumerate(int n, int k, DiagramClass cls);

// ---- tesselations ----------------------------------------------------

struct Tesselation {
  int n = 0;
  std::vector<Chord> chords; // pairwise non-crossing
};

std::vector<Tesselation> enumerate_tesselations(int n);

// Sizes of the sub-polygons cut out by a tesselation.
std::vector<int> tesselation_faces(const Tesselation& t);

// Vertex sets of the sub-polygons, each in (ascending) cyclic order.
std::vector<std::vector<int>> tesselation_face_vertices(const Tesselation& t);

// ---- prime bracketings ------------------------------------------------

// A binary bracketing of 1..m in which every bracket has its smallest
// enclosed index in the left factor and its largest in the right, and only
// the outermost bracket encloses an interval of indices.
struct PrimeBracketing {
  struct Node {
    int leaf = -1;     // leaf index, or -1 for an internal node
    int l = -1, r = -1;
  };
  int m = 0;           // number of indices
  std::vector<Node> nodes;
  int root = -1;

  std::string str() const;
};

// All prime bracketings of 1..m (polygon size n = m+1).
std::vector<PrimeBracketing> prime_bracketings(int m);

// Chords of the associated diagram on the (m+1)-gon, one per inner bracket,
// read outside-in and left to right.
std::vector<Chord> bracketing_chords(const PrimeBracketing& p);

ChordMonomial bracketing_to_diagram(const PrimeBracketing& p);

} // namespace exotic::diagrams
