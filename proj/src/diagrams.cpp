#include "exotic/diagrams.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace exotic::diagrams {

std::string chord_str(const Chord& c) {
  return "{" + std::to_string(c.a) + "," + std::to_string(c.b) + "}";
}

bool is_chord(int n, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n) return false;
  int d = std::abs(i - j);
  return d != 1 && d != n - 1;
}

std::vector<Chord> chords(int n) {
  if (n < 4) throw std::domain_error("chords: need n >= 4");
  std::vector<Chord> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (is_chord(n, i, j)) out.emplace_back(i, j);
  return out;
}

bool crosses(int n, const Chord& c1, const Chord& c2) {
  if (c1.a < 1 || c1.b > n || c2.a < 1 || c2.b > n)
    throw std::domain_error("crosses: chord endpoints out of range");
  if (c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b)
    return false;
  // c2 separates c1 iff exactly one endpoint of c1 lies strictly inside
  // the arc (c2.a, c2.b).
  bool ina = c2.a < c1.a && c1.a < c2.b;
  bool inb = c2.a < c1.b && c1.b < c2.b;
  return ina != inb;
}

std::vector<Chord> perp(int n, const std::vector<Chord>& A) {
  std::vector<Chord> out;
  for (const Chord& c : chords(n)) {
    bool all = true;
    for (const Chord& a : A)
      if (!crosses(n, c, a)) { all = false; break; }
    if (all) out.push_back(c);
  }
  return out;
}

std::vector<std::pair<std::vector<Chord>, std::vector<Chord>>>
complete_crossing_pairs(int n) {
  std::set<std::pair<std::vector<Chord>, std::vector<Chord>>> seen;
  auto close = [&](std::vector<Chord> seed) {
    auto B = perp(n, seed);
    if (B.empty()) return;
    auto A = perp(n, B);
    if (A.empty()) return;
    if (B < A) std::swap(A, B);
    seen.insert({A, B});
  };
  auto cs = chords(n);
  for (size_t i = 0; i < cs.size(); ++i) {
    close({cs[i]});
    for (size_t j = i + 1; j < cs.size(); ++j) close({cs[i], cs[j]});
  }
  return {seen.begin(), seen.end()};
}

bool ChordMonomial::contains(const Chord& c) const {
  return std::binary_search(chords.begin(), chords.end(), c);
}

std::string monomial_str(const ChordMonomial& m) {
  if (m.is_zero()) return "0";
  std::string s = m.sign < 0 ? "-" : "+";
  if (m.chords.empty()) return s + "1";
  for (const Chord& c : m.chords) s += chord_str(c);
  return s;
}

ChordMonomial canonicalize(int n, std::vector<Chord> ch, int sign) {
  // insertion sort, counting transpositions of the odd generators
  for (size_t i = 1; i < ch.size(); ++i) {
    Chord key = ch[i];
    size_t j = i;
    while (j > 0 && key < ch[j - 1]) {
      ch[j] = ch[j - 1];
      --j;
      sign = -sign;
    }
    ch[j] = key;
  }
  for (size_t i = 1; i < ch.size(); ++i)
    if (ch[i] == ch[i - 1]) return ChordMonomial{n, 0, {}};
  return ChordMonomial{n, sign, std::move(ch)};
}

ChordMonomial unit_monomial(int n) { return ChordMonomial{n, 1, {}}; }

static TensorPair zero_pair(int n) {
  return {ChordMonomial{n, 0, {}}, ChordMonomial{n, 0, {}}};
}

TensorPair cocompose(const ChordMonomial& m, const Chord& c) {
  const int n = m.n;
  if (m.is_zero()) return zero_pair(n);
  const int i = c.a, j = c.b;
  const int inner_n = j - i + 1;
  const int outer_n = n - inner_n + 2;

  std::vector<Chord> outer, inner;
  int sign = m.sign;
  int inner_seen = 0;
  for (const Chord& x : m.chords) {
    if (x == c || crosses(n, x, c)) return zero_pair(n);
    bool in_a = i <= x.a && x.a <= j;
    bool in_b = i <= x.b && x.b <= j;
    if (in_a && in_b && !(x.a == i && x.b == j)) {
      inner.emplace_back(x.a - i + 1, x.b - i + 1);
      ++inner_seen;
    } else {
      // unshuffle parity: this outer generator hops over the inner ones
      // already collected
      if (inner_seen % 2) sign = -sign;
      auto remap = [&](int v) { return v <= i ? v : v - inner_n + 2; };
      outer.emplace_back(remap(x.a), remap(x.b));
    }
  }
  ChordMonomial mo = canonicalize(outer_n, std::move(outer), sign);
  ChordMonomial mi = canonicalize(inner_n, std::move(inner), 1);
  if (mo.is_zero() || mi.is_zero())
    throw std::logic_error("cocompose: reindexing produced a repeat");
  return {std::move(mo), std::move(mi)};
}

TensorPair residue_diagram(const ChordMonomial& m, const Chord& c) {
  if (m.is_zero()) return zero_pair(m.n);
  auto it = std::find(m.chords.begin(), m.chords.end(), c);
  if (it == m.chords.end()) return zero_pair(m.n);
  int pos = static_cast<int>(it - m.chords.begin());
  ChordMonomial rest = m;
  rest.chords.erase(rest.chords.begin() + pos);
  if (pos % 2) rest.sign = -rest.sign;
  return cocompose(rest, c);
}

bool is_gravity(const ChordMonomial& m) {
  if (m.is_zero()) return true;
  const int n = m.n;
  for (size_t u = 0; u < m.chords.size(); ++u)
    for (size_t v = u + 1; v < m.chords.size(); ++v) {
      const Chord &c1 = m.chords[u], &c2 = m.chords[v];
      if (!crosses(n, c1, c2)) continue;
      int e[4] = {c1.a, c1.b, c2.a, c2.b};
      std::sort(e, e + 4);
      // The quadrilateral side opposite the one subtending the marked gap
      // between vertices n-1 and n.
      Chord opp = (e[3] == n) ? Chord(e[0], e[1]) : Chord(e[1], e[2]);
      if (opp.b == opp.a + 1) return false;      // a polygon side
      if (m.contains(opp)) return false;         // a chord of the diagram
    }
  return true;
}

bool is_prime(const ChordMonomial& m) {
  if (!is_gravity(m)) return false;
  for (const Chord& c : m.chords)
    if (!residue_diagram(m, c).is_zero()) return false;
  return true;
}

std::vector<ChordMonomial> enumerate(int n, int k, DiagramClass cls) {
  if (n == 3) {
    // the triangle carries no chords
    if (k == 0) return {unit_monomial(3)};
    return {};
  }
  auto cs = chords(n);
  std::vector<ChordMonomial> out;
  if (k > static_cast<int>(cs.size())) return out;
  if (k == 0) return {unit_monomial(n)};
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Chord> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = cs[idx[i]];
    ChordMonomial m{n, 1, std::move(pick)};
    bool keep = true;
    if (cls == DiagramClass::gravity) keep = is_gravity(m);
    else if (cls == DiagramClass::prime) keep = is_prime(m);
    if (keep) out.push_back(std::move(m));
    // next combination
    int i = k - 1;
    while (i >= 0 && idx[i] == static_cast<int>(cs.size()) - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Tesselation> enumerate_tesselations(int n) {
  auto cs = chords(n);
  std::vector<Tesselation> out;
  std::vector<Chord> cur;
  // chords are lex sorted; extend only with later ones to avoid duplicates
  auto rec = [&](auto&& self, size_t from) -> void {
    out.push_back(Tesselation{n, cur});
    for (size_t i = from; i < cs.size(); ++i) {
      bool ok = true;
      for (const Chord& c : cur)
        if (crosses(n, cs[i], c)) { ok = false; break; }
      if (!ok) continue;
      cur.push_back(cs[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::vector<int>> tesselation_face_vertices(const Tesselation& t) {
  // Cut along chords one at a time; each chord lies inside exactly one of
  // the current faces (faces are vertex subsets in cyclic order).
  std::vector<std::vector<int>> faces;
  {
    std::vector<int> all(t.n);
    for (int i = 0; i < t.n; ++i) all[i] = i + 1;
    faces.push_back(all);
  }
  for (const Chord& c : t.chords) {
    for (size_t f = 0; f < faces.size(); ++f) {
      auto& F = faces[f];
      auto ia = std::find(F.begin(), F.end(), c.a);
      auto ib = std::find(F.begin(), F.end(), c.b);
      if (ia == F.end() || ib == F.end()) continue;
      size_t pa = ia - F.begin(), pb = ib - F.begin();
      if (pa > pb) std::swap(pa, pb);
      std::vector<int> inner(F.begin() + pa, F.begin() + pb + 1);
      std::vector<int> outer(F.begin(), F.begin() + pa + 1);
      outer.insert(outer.end(), F.begin() + pb, F.end());
      faces[f] = std::move(outer);
      faces.push_back(std::move(inner));
      break;
    }
  }
  return faces;
}

std::vector<int> tesselation_faces(const Tesselation& t) {
  std::vector<int> sizes;
  for (auto& F : tesselation_face_vertices(t))
    sizes.push_back(static_cast<int>(F.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// ---- prime bracketings ------------------------------------------------

namespace {

struct Build {
  PrimeBracketing p;

  int leaf(int v) {
    p.nodes.push_back({v, -1, -1});
    return static_cast<int>(p.nodes.size()) - 1;
  }
  int join(int l, int r) {
    p.nodes.push_back({-1, l, r});
    return static_cast<int>(p.nodes.size()) - 1;
  }
};

void collect(const PrimeBracketing& p, int node, std::vector<int>& out) {
  const auto& nd = p.nodes[node];
  if (nd.leaf >= 0) out.push_back(nd.leaf);
  else {
    collect(p, nd.l, out);
    collect(p, nd.r, out);
  }
}

bool is_interval(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v.back() - v.front() + 1 == static_cast<int>(v.size());
}

// all bracketings of the index set s with min left / max right in every
// bracket; returns roots in the shared builder
std::vector<int> gen(Build& b, const std::vector<int>& s) {
  if (s.size() == 1) return {b.leaf(s[0])};
  int mn = *std::min_element(s.begin(), s.end());
  int mx = *std::max_element(s.begin(), s.end());
  std::vector<int> mid;
  for (int v : s)
    if (v != mn && v != mx) mid.push_back(v);
  std::vector<int> roots;
  // distribute the remaining indices between the two factors
  for (uint32_t mask = 0; mask < (1u << mid.size()); ++mask) {
    std::vector<int> L{mn}, R{mx};
    for (size_t i = 0; i < mid.size(); ++i)
      (mask >> i & 1 ? L : R).push_back(mid[i]);
    for (int l : gen(b, L))
      for (int r : gen(b, R)) roots.push_back(b.join(l, r));
  }
  return roots;
}

bool only_outer_connected(const PrimeBracketing& p, int node, bool outer) {
  const auto& nd = p.nodes[node];
  if (nd.leaf >= 0) return true;
  if (!outer) {
    std::vector<int> v;
    collect(p, node, v);
    if (is_interval(v)) return false;
  }
  return only_outer_connected(p, nd.l, false) &&
         only_outer_connected(p, nd.r, false);
}

std::string node_str(const PrimeBracketing& p, int node) {
  const auto& nd = p.nodes[node];
  if (nd.leaf >= 0) return std::to_string(nd.leaf);
  return "[" + node_str(p, nd.l) + "," + node_str(p, nd.r) + "]";
}

void chords_preorder(const PrimeBracketing& p, int node, bool outer, int n,
                     std::vector<Chord>& out) {
  const auto& nd = p.nodes[node];
  if (nd.leaf >= 0) return;
  if (!outer) {
    std::vector<int> v;
    collect(p, node, v);
    int mn = *std::min_element(v.begin(), v.end());
    int mx = *std::max_element(v.begin(), v.end());
    int a = mn - 1 == 0 ? n : mn - 1;
    out.push_back(Chord(a, mx));
  }
  chords_preorder(p, nd.l, false, n, out);
  chords_preorder(p, nd.r, false, n, out);
}

} // namespace

std::string PrimeBracketing::str() const { return node_str(*this, root); }

std::vector<PrimeBracketing> prime_bracketings(int m) {
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i + 1;
  Build b;
  b.p.m = m;
  std::vector<PrimeBracketing> out;
  for (int r : gen(b, all)) {
    PrimeBracketing q = b.p;
    q.root = r;
    if (only_outer_connected(q, r, true)) out.push_back(std::move(q));
  }
  return out;
}

std::vector<Chord> bracketing_chords(const PrimeBracketing& p) {
  std::vector<Chord> out;
  chords_preorder(p, p.root, true, p.m + 1, out);
  return out;
}

ChordMonomial bracketing_to_diagram(const PrimeBracketing& p) {
  return canonicalize(p.m + 1, bracketing_chords(p));
}

} // namespace exotic::diagrams
