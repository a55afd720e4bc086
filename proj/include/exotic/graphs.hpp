#pragma once

// The tadpole-graph operad at the abelianized chain level: wedge words in
// odd edge generators e_{ij} and tadpole generators e_k on the vertices
// 1..n-1, the chords-to-graphs map, the cyclic action with index-n
// elimination, planar composition, and extraction of homology coefficients
// in the normal-form basis.

#include <map>
#include <string>
#include <vector>

#include "exotic/diagrams.hpp"
#include "exotic/rational.hpp"

namespace exotic::graphs {

using diagrams::Chord;
using diagrams::ChordMonomial;

struct GraphGenerator {
  int a = 0, b = 0; // tadpole at a when b == 0, else edge {a,b} with a < b

  static GraphGenerator edge(int i, int j) {
    return {i < j ? i : j, i < j ? j : i};
  }
  static GraphGenerator tadpole(int k) { return {k, 0}; }
  bool is_tadpole() const { return b == 0; }
  bool touches(int v) const { return a == v || b == v; }
  int max_index() const { return a > b ? a : b; }
  std::string str() const;

  // tadpoles sort before edges
  friend bool operator==(const GraphGenerator&, const GraphGenerator&) = default;
  friend auto operator<=>(const GraphGenerator& x, const GraphGenerator& y) {
    return std::tuple(!x.is_tadpole(), x.a, x.b) <=>
           std::tuple(!y.is_tadpole(), y.a, y.b);
  }
};

using GraphKey = std::vector<GraphGenerator>; // canonical ascending

struct GraphMonomial {
  int n = 0;
  int sign = 1; // 0 encodes zero
  GraphKey gens;
  bool is_zero() const { return sign == 0; }
};

GraphMonomial canonicalize_graph(int n, GraphKey gens, int sign = 1);

struct GraphChain {
  int n = 0;
  std::map<GraphKey, Rat> terms;

  GraphChain() = default;
  explicit GraphChain(int n_) : n(n_) {}
  static GraphChain unit(int n);
  static GraphChain generator(int n, const GraphGenerator& g);
  bool is_zero() const { return terms.empty(); }
  void add(const GraphKey& gens, const Rat& c);
  void add_monomial(const GraphMonomial& m, const Rat& c);
  GraphChain& operator+=(const GraphChain& o);
  GraphChain& operator*=(const Rat& c);
  friend bool operator==(const GraphChain&, const GraphChain&) = default;
};

std::string chain_str(const GraphChain& c);

// wedge product (left factors first)
GraphChain chain_mul(const GraphChain& a, const GraphChain& b);

// image of a single chord generator; never produces index n
GraphChain gamma_generator(int n, const Chord& c);

// the same chord read along the complementary arc, which passes through
// the index n and therefore needs the elimination rules
GraphChain gamma_generator_complement(int n, const Chord& c);

// ordered wedge of the generator images of a chord monomial
GraphChain gamma_chain(const ChordMonomial& m);

// rewrites a generator carrying index n into the free basis on 1..n-1
GraphChain eliminate_index_n(const GraphGenerator& g, int n);

// shift every index by +1 and eliminate index n
GraphChain cyclic_tau(const GraphChain& x);

// planar composition: insert b (on k+1 = b.n) at vertex i of a
GraphChain compose_graphs(const GraphMonomial& a, const GraphMonomial& b,
                          int slot);
GraphChain compose_chains(const GraphChain& a, const GraphChain& b, int slot);

// no factor e_{ij}e_{jk} (i<j<k) and no factor e_{ik}e_{jk}e_{jl} (i<j<k<l)
bool is_normal_form(const GraphKey& gens);

struct BVClassVector {
  int n = 0;
  std::map<GraphKey, Rat> coeffs;
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const BVClassVector&, const BVClassVector&) = default;
};

// coefficient restriction to normal-form keys
BVClassVector extract_bv(const GraphChain& x);

// A normal-form key rendered as an operation word: nested bracket clusters
// for the edge trees, Delta(k) for tadpoles, bare untouched inputs.  eps is
// the parity relating the word's natural wedge order (bracket edges outside
// in per cluster, then tadpoles) to the canonical order of the key.
struct RenderedTerm {
  int eps = 1;
  std::string text;
};

RenderedTerm render_key(int n, const GraphKey& key);

// inverse of render_key; returns (eps, key)
std::pair<int, GraphKey> parse_term(int n, const std::string& text);

// chain representative of a rendered operation word: wedge of the bracket
// sums (outside in), then the tadpoles
GraphChain term_chain(int n, const std::string& text);

// whole vector, signs folded as coefficient * eps per key
std::string pretty_print_bv(const BVClassVector& v);

} // namespace exotic::graphs
