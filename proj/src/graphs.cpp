#include "exotic/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exotic::graphs {

std::string GraphGenerator::str() const {
  if (is_tadpole()) return "s" + std::to_string(a);
  return "b" + std::to_string(a) + std::to_string(b);
}

GraphMonomial canonicalize_graph(int n, GraphKey gens, int sign) {
  for (size_t i = 1; i < gens.size(); ++i) {
    GraphGenerator key = gens[i];
    size_t j = i;
    while (j > 0 && key < gens[j - 1]) {
      gens[j] = gens[j - 1];
      --j;
      sign = -sign;
    }
    gens[j] = key;
  }
  for (size_t i = 1; i < gens.size(); ++i)
    if (gens[i] == gens[i - 1]) return GraphMonomial{n, 0, {}};
  return GraphMonomial{n, sign, std::move(gens)};
}

GraphChain GraphChain::unit(int n) {
  GraphChain c(n);
  c.terms[{}] = 1;
  return c;
}

GraphChain GraphChain::generator(int n, const GraphGenerator& g) {
  GraphChain c(n);
  c.terms[{g}] = 1;
  return c;
}

void GraphChain::add(const GraphKey& gens, const Rat& c) {
  if (c == 0) return;
  Rat& slot = terms[gens];
  slot += c;
  if (slot == 0) terms.erase(gens);
}

void GraphChain::add_monomial(const GraphMonomial& m, const Rat& c) {
  if (m.is_zero()) return;
  add(m.gens, m.sign * c);
}

GraphChain& GraphChain::operator+=(const GraphChain& o) {
  for (auto& [k, c] : o.terms) add(k, c);
  return *this;
}

GraphChain& GraphChain::operator*=(const Rat& c) {
  if (c == 0) { terms.clear(); return *this; }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

std::string chain_str(const GraphChain& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  for (auto& [k, v] : c.terms) {
    os << (v > 0 ? "+" : "") << rat_str(v) << "*";
    if (k.empty()) os << "1";
    for (auto& g : k) os << g.str();
    os << " ";
  }
  return os.str();
}

GraphChain chain_mul(const GraphChain& a, const GraphChain& b) {
  GraphChain out(a.n);
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      GraphKey gens = ka;
      gens.insert(gens.end(), kb.begin(), kb.end());
      out.add_monomial(canonicalize_graph(a.n, std::move(gens)), ca * cb);
    }
  return out;
}

GraphChain gamma_generator(int n, const Chord& c) {
  // the arc of the chord avoiding the index n
  int lo, hi;
  if (c.b < n) {
    lo = c.a + 1;
    hi = c.b;
  } else {
    lo = 1;
    hi = c.a;
  }
  GraphChain out(n);
  for (int r = lo; r <= hi; ++r) {
    out.add({GraphGenerator::tadpole(r)}, 1);
    for (int s = r + 1; s <= hi; ++s) out.add({GraphGenerator::edge(r, s)}, 1);
  }
  return out;
}

GraphChain eliminate_index_n(const GraphGenerator& g, int n) {
  GraphChain out(n);
  if (g.max_index() < n) {
    out.add({g}, 1);
    return out;
  }
  if (g.is_tadpole()) {
    // s_n = sum_j s_j + sum_{i<j} e_{ij}, all indices below n
    for (int j = 1; j <= n - 1; ++j) {
      out.add({GraphGenerator::tadpole(j)}, 1);
      for (int i = 1; i < j; ++i) out.add({GraphGenerator::edge(i, j)}, 1);
    }
    return out;
  }
  // e_{an} = -2 s_a - sum_{i != a} e_{ia}
  int a2 = g.a == n ? g.b : g.a;
  out.add({GraphGenerator::tadpole(a2)}, -2);
  for (int i = 1; i <= n - 1; ++i)
    if (i != a2) out.add({GraphGenerator::edge(i, a2)}, -1);
  return out;
}

namespace {

// substitute away all index-n generators in an extended wedge word
void normalize_extended(int n, const GraphKey& gens, const Rat& coeff,
                        GraphChain& out) {
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].max_index() < n) continue;
    GraphChain sub = eliminate_index_n(gens[i], n);
    for (auto& [sk, sc] : sub.terms) {
      GraphKey next = gens;
      next[i] = sk[0]; // substitutions are single generators
      normalize_extended(n, next, coeff * sc, out);
    }
    return;
  }
  out.add_monomial(canonicalize_graph(n, gens), coeff);
}

} // namespace

GraphChain gamma_generator_complement(int n, const Chord& c) {
  // the arc through the index n
  std::vector<int> S;
  if (c.b < n) {
    for (int v = c.b + 1; v <= n; ++v) S.push_back(v);
    for (int v = 1; v <= c.a; ++v) S.push_back(v);
  } else {
    for (int v = c.a + 1; v <= n; ++v) S.push_back(v);
  }
  GraphChain out(n);
  for (size_t i = 0; i < S.size(); ++i) {
    normalize_extended(n, {GraphGenerator::tadpole(S[i])}, 1, out);
    for (size_t j = i + 1; j < S.size(); ++j) {
      int a = std::min(S[i], S[j]), b = std::max(S[i], S[j]);
      normalize_extended(n, {GraphGenerator{a, b}}, 1, out);
    }
  }
  return out;
}

GraphChain gamma_chain(const ChordMonomial& m) {
  if (m.is_zero()) return GraphChain(m.n);
  GraphChain out = GraphChain::unit(m.n);
  for (const Chord& c : m.chords) out = chain_mul(out, gamma_generator(m.n, c));
  out *= m.sign;
  return out;
}

GraphChain cyclic_tau(const GraphChain& x) {
  const int n = x.n;
  GraphChain out(n);
  for (auto& [key, c] : x.terms) {
    GraphKey shifted;
    shifted.reserve(key.size());
    for (const GraphGenerator& g : key) {
      if (g.is_tadpole())
        shifted.push_back(GraphGenerator::tadpole(g.a + 1));
      else
        shifted.push_back(GraphGenerator::edge(g.a + 1, g.b + 1));
    }
    normalize_extended(n, shifted, c, out);
  }
  return out;
}

GraphChain compose_graphs(const GraphMonomial& a, const GraphMonomial& b,
                          int slot) {
  const int m = a.n, k = b.n - 1, n = m + k - 1;
  if (slot < 1 || slot > m - 1)
    throw std::domain_error("compose_graphs: slot out of range");
  if (a.is_zero() || b.is_zero()) return GraphChain(n);
  auto psi = [&](int v) { return v < slot ? v : v + k - 1; };
  auto phi = [&](int v) { return slot + v - 1; };

  GraphChain out = GraphChain::unit(n);
  out *= Rat(a.sign) * b.sign;
  for (const GraphGenerator& g : a.gens) {
    GraphChain img(n);
    if (g.is_tadpole()) {
      if (g.a == slot) {
        // the collapsed vertex expands to the whole inserted block
        for (int r = slot; r <= slot + k - 1; ++r) {
          img.add({GraphGenerator::tadpole(r)}, 1);
          for (int s = r + 1; s <= slot + k - 1; ++s)
            img.add({GraphGenerator::edge(r, s)}, 1);
        }
      } else
        img.add({GraphGenerator::tadpole(psi(g.a))}, 1);
    } else if (g.a == slot || g.b == slot) {
      // a leg freed at the collapsed vertex reattaches everywhere in the block
      int p = g.a == slot ? g.b : g.a;
      for (int r = slot; r <= slot + k - 1; ++r)
        img.add({GraphGenerator::edge(psi(p), r)}, 1);
    } else {
      img.add({GraphGenerator::edge(psi(g.a), psi(g.b))}, 1);
    }
    out = chain_mul(out, img);
  }
  for (const GraphGenerator& g : b.gens) {
    if (g.max_index() > k)
      throw std::domain_error("compose_graphs: inner monomial not in free basis");
    GraphGenerator h = g.is_tadpole()
                           ? GraphGenerator::tadpole(phi(g.a))
                           : GraphGenerator::edge(phi(g.a), phi(g.b));
    out = chain_mul(out, GraphChain::generator(n, h));
  }
  return out;
}

GraphChain compose_chains(const GraphChain& a, const GraphChain& b, int slot) {
  GraphChain out(a.n + b.n - 2);
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      GraphChain piece = compose_graphs(GraphMonomial{a.n, 1, ka},
                                        GraphMonomial{b.n, 1, kb}, slot);
      piece *= ca * cb;
      out += piece;
    }
  return out;
}

bool is_normal_form(const GraphKey& gens) {
  std::vector<GraphGenerator> edges;
  for (auto& g : gens)
    if (!g.is_tadpole()) edges.push_back(g);
  for (size_t u = 0; u < edges.size(); ++u)
    for (size_t v = 0; v < edges.size(); ++v) {
      if (u == v) continue;
      // e_{ij} e_{jk} with i < j < k
      if (edges[u].b == edges[v].a) return false;
    }
  for (size_t u = 0; u < edges.size(); ++u)
    for (size_t v = 0; v < edges.size(); ++v)
      for (size_t w = 0; w < edges.size(); ++w) {
        if (u == v || v == w || u == w) continue;
        // e_{ik} e_{jk} e_{jl} with i < j < k < l
        const auto &x = edges[u], &y = edges[v], &z = edges[w];
        if (x.b == y.b && y.a == z.a && x.a < y.a && z.b > x.b) return false;
      }
  return true;
}

BVClassVector extract_bv(const GraphChain& x) {
  BVClassVector v;
  v.n = x.n;
  for (auto& [key, c] : x.terms)
    if (is_normal_form(key)) v.coeffs[key] = c;
  return v;
}

// ---- rendering ----------------------------------------------------------

namespace {

struct Item {
  std::vector<int> verts;                // sorted inputs covered by the item
  std::vector<GraphGenerator> edges_pre; // bracket edges, outside in
  // (left,right) vertex sets per bracket, aligned with edges_pre
  std::vector<std::pair<std::vector<int>, std::vector<int>>> brackets_pre;
  std::vector<int> tadpoles;
  std::string text;
};

Item leaf_item(int v, bool tadpole) {
  Item out;
  out.verts = {v};
  if (tadpole) {
    out.tadpoles = {v};
    out.text = "D(" + std::to_string(v) + ")";
  } else
    out.text = std::to_string(v);
  return out;
}

Item bracket_item(Item L, Item R) {
  Item out;
  out.verts = L.verts;
  out.verts.insert(out.verts.end(), R.verts.begin(), R.verts.end());
  std::sort(out.verts.begin(), out.verts.end());
  out.edges_pre.push_back(
      GraphGenerator::edge(out.verts.front(), out.verts.back()));
  out.edges_pre.insert(out.edges_pre.end(), L.edges_pre.begin(),
                       L.edges_pre.end());
  out.edges_pre.insert(out.edges_pre.end(), R.edges_pre.begin(),
                       R.edges_pre.end());
  out.brackets_pre.emplace_back(L.verts, R.verts);
  out.brackets_pre.insert(out.brackets_pre.end(), L.brackets_pre.begin(),
                          L.brackets_pre.end());
  out.brackets_pre.insert(out.brackets_pre.end(), R.brackets_pre.begin(),
                          R.brackets_pre.end());
  out.tadpoles = L.tadpoles;
  out.tadpoles.insert(out.tadpoles.end(), R.tadpoles.begin(), R.tadpoles.end());
  out.text = "{" + L.text + "," + R.text + "}";
  return out;
}

// recursive bracket word for an edge-tree component
Item component_word(const std::vector<int>& verts,
                    const std::vector<GraphGenerator>& edges,
                    const std::set<int>& tads) {
  if (verts.size() == 1) return leaf_item(verts[0], tads.count(verts[0]) > 0);
  int mn = verts.front(), mx = verts.back();
  GraphGenerator top = GraphGenerator::edge(mn, mx);
  auto it = std::find(edges.begin(), edges.end(), top);
  if (it == edges.end())
    throw std::logic_error("render: component has no {min,max} edge");
  std::vector<GraphGenerator> rest(edges.begin(), edges.end());
  rest.erase(rest.begin() + (it - edges.begin()));
  std::set<int> left{mn};
  bool grown = true;
  while (grown) {
    grown = false;
    for (auto& e : rest)
      if (left.count(e.a) + left.count(e.b) == 1) {
        left.insert(e.a);
        left.insert(e.b);
        grown = true;
      }
  }
  if (left.count(mx))
    throw std::logic_error("render: removed edge does not separate min/max");
  std::vector<int> lv, rv;
  std::vector<GraphGenerator> le, re;
  for (int v : verts) (left.count(v) ? lv : rv).push_back(v);
  for (auto& e : rest) (left.count(e.a) ? le : re).push_back(e);
  Item L = component_word(lv, le, tads);
  Item R = component_word(rv, re, tads);
  Item out = bracket_item(std::move(L), std::move(R));
  return out;
}

int sort_parity(std::vector<GraphGenerator> list) {
  int sign = 1;
  for (size_t i = 1; i < list.size(); ++i) {
    GraphGenerator key = list[i];
    size_t j = i;
    while (j > 0 && key < list[j - 1]) {
      list[j] = list[j - 1];
      --j;
      sign = -sign;
    }
    list[j] = key;
  }
  return sign;
}

// wedge order of a term: edges outside-in per item, then tadpoles ascending
std::vector<GraphGenerator> wedge_order(const std::vector<Item>& items) {
  std::vector<GraphGenerator> order;
  std::vector<int> tads;
  for (auto& it : items) {
    order.insert(order.end(), it.edges_pre.begin(), it.edges_pre.end());
    tads.insert(tads.end(), it.tadpoles.begin(), it.tadpoles.end());
  }
  std::sort(tads.begin(), tads.end());
  for (int t : tads) order.push_back(GraphGenerator::tadpole(t));
  return order;
}

Item parse_item(const std::string& s, size_t& pos) {
  if (s[pos] == '{') {
    ++pos;
    Item L = parse_item(s, pos);
    if (pos >= s.size() || s[pos] != ',')
      throw std::invalid_argument("parse: expected ','");
    ++pos;
    Item R = parse_item(s, pos);
    if (pos >= s.size() || s[pos] != '}')
      throw std::invalid_argument("parse: expected '}'");
    ++pos;
    if (R.verts.front() < L.verts.front() || R.verts.back() < L.verts.back())
      throw std::invalid_argument("parse: bracket violates min/max rule");
    return bracket_item(std::move(L), std::move(R));
  }
  if (s[pos] == 'D' || (unsigned char)s[pos] == 0xce) {
    while (pos < s.size() && s[pos] != '(') ++pos;
    ++pos;
    size_t end = s.find(')', pos);
    if (end == std::string::npos) throw std::invalid_argument("parse: bad D()");
    int v = std::stoi(s.substr(pos, end - pos));
    pos = end + 1;
    return leaf_item(v, true);
  }
  if (pos < s.size() && isdigit((unsigned char)s[pos])) {
    int v = s[pos] - '0';
    ++pos;
    return leaf_item(v, false);
  }
  throw std::invalid_argument("parse: unexpected character in term");
}

std::vector<Item> parse_items(const std::string& text) {
  std::vector<Item> items;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') { ++pos; continue; }
    items.push_back(parse_item(text, pos));
  }
  return items;
}

} // namespace

RenderedTerm render_key(int n, const GraphKey& key) {
  std::set<int> tads;
  std::vector<GraphGenerator> edges;
  for (auto& g : key) {
    if (g.is_tadpole())
      tads.insert(g.a);
    else
      edges.push_back(g);
  }
  // connected components of the edge graph, labeled by least vertex
  std::map<int, int> comp;
  for (auto& e : edges) {
    comp.emplace(e.a, e.a);
    comp.emplace(e.b, e.b);
  }
  bool grown = true;
  while (grown) {
    grown = false;
    for (auto& e : edges) {
      int c = std::min(comp[e.a], comp[e.b]);
      if (comp[e.a] != c || comp[e.b] != c) {
        comp[e.a] = comp[e.b] = c;
        grown = true;
      }
    }
  }
  std::vector<Item> items;
  for (int v = 1; v <= n - 1; ++v) {
    auto it = comp.find(v);
    if (it == comp.end()) {
      items.push_back(leaf_item(v, tads.count(v) > 0));
    } else if (it->second == v) {
      std::vector<int> verts;
      std::vector<GraphGenerator> ce;
      for (auto& [u, c] : comp)
        if (c == v) verts.push_back(u);
      for (auto& e : edges)
        if (comp[e.a] == v) ce.push_back(e);
      items.push_back(component_word(verts, ce, tads));
    }
  }
  RenderedTerm out;
  for (auto& it : items) out.text += it.text;
  out.eps = sort_parity(wedge_order(items));
  return out;
}

std::pair<int, GraphKey> parse_term(int n, const std::string& text) {
  (void)n;
  auto items = parse_items(text);
  auto order = wedge_order(items);
  GraphKey key = order;
  std::sort(key.begin(), key.end());
  return {sort_parity(order), key};
}

GraphChain term_chain(int n, const std::string& text) {
  GraphChain chain = GraphChain::unit(n);
  std::vector<int> tads;
  for (auto& item : parse_items(text)) {
    // bracket sums, outside in and left to right: each bracket joining
    // clusters L and R contributes the sum of edges between them
    for (auto& [L, R] : item.brackets_pre) {
      GraphChain sum(n);
      for (int u : L)
        for (int v : R) sum.add({GraphGenerator::edge(u, v)}, 1);
      chain = chain_mul(chain, sum);
    }
    tads.insert(tads.end(), item.tadpoles.begin(), item.tadpoles.end());
  }
  std::sort(tads.begin(), tads.end());
  for (int t : tads)
    chain = chain_mul(chain, GraphChain::generator(n, GraphGenerator::tadpole(t)));
  return chain;
}

std::string pretty_print_bv(const BVClassVector& v) {
  if (v.coeffs.empty()) return "0";
  std::vector<std::pair<GraphKey, Rat>> terms(v.coeffs.begin(), v.coeffs.end());
  std::stable_sort(terms.begin(), terms.end(), [](auto& x, auto& y) {
    auto tcount = [](const GraphKey& k) {
      return std::count_if(k.begin(), k.end(),
                           [](auto& g) { return g.is_tadpole(); });
    };
    return tcount(x.first) < tcount(y.first);
  });
  std::string out;
  bool first = true;
  for (auto& [key, c] : terms) {
    RenderedTerm r = render_key(v.n, key);
    Rat val = c * r.eps;
    std::string mag = rat_str(val < 0 ? -val : val);
    if (first) {
      if (val < 0) out += "-";
      first = false;
    } else
      out += val < 0 ? " - " : " + ";
    if (mag != "1") out += mag + "*";
    out += r.text;
  }
  return out;
}

} // namespace exotic::graphs
