#include "exotic/arnold.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exotic::arnold {

using diagrams::canonicalize;

void FormExpr::add(const std::vector<Chord>& ch, const Rat& c, int sign) {
  ChordMonomial m = canonicalize(n, ch, sign);
  add_monomial(m, c);
}

void FormExpr::add_monomial(const ChordMonomial& m, const Rat& c) {
  if (m.is_zero() || c == 0) return;
  Rat& slot = terms[m.chords];
  slot += m.sign * c;
  if (slot == 0) terms.erase(m.chords);
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  for (const auto& [k, c] : o.terms) {
    Rat& slot = terms[k];
    slot += c;
    if (slot == 0) terms.erase(k);
  }
  return *this;
}

FormExpr& FormExpr::operator*=(const Rat& c) {
  if (c == 0) { terms.clear(); return *this; }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

std::string form_str(const FormExpr& f) {
  if (f.terms.empty()) return "0";
  std::ostringstream os;
  for (const auto& [k, c] : f.terms) {
    os << (c > 0 ? "+" : "") << rat_str(c) << "*";
    for (const Chord& ch : k) os << diagrams::chord_str(ch);
    os << " ";
  }
  return os.str();
}

FormExpr kz(const ChordMonomial& m) {
  FormExpr f(m.n);
  if (!m.is_zero()) f.add(m.chords, 1, m.sign);
  return f;
}

std::vector<FormExpr> relation_space(int n, int k) {
  // the relation ideal is quadratically generated; its degree-k component
  // is nonzero for any k >= 2 up to the number of chords
  if (k < 2) throw std::domain_error("relation_space: need k >= 2");
  if (n == 3) return {};
  auto pairs = diagrams::complete_crossing_pairs(n);
  auto mons = diagrams::enumerate(n, k - 2, diagrams::DiagramClass::all);
  std::vector<FormExpr> out;
  for (const auto& [A, B] : pairs) {
    for (const auto& m : mons) {
      FormExpr f(n);
      for (const Chord& a : A)
        for (const Chord& b : B) {
          std::vector<Chord> ch = m.chords;
          ch.push_back(a);
          ch.push_back(b);
          f.add(ch, 1);
        }
      if (!f.is_zero()) out.push_back(std::move(f));
    }
  }
  return out;
}

// ---- gravity reduction ------------------------------------------------

namespace {

struct Echelon {
  int n = 0, k = 0;
  std::vector<Key> keys;              // all degree-k monomials, lex order
  std::map<Key, int> index;
  std::vector<bool> gravity;          // per key
  int rank = 0;
  // for every pivot (non-gravity) key: expansion over gravity keys
  std::map<Key, std::map<Key, Rat>> expansion;
};

Echelon build_echelon(int n, int k) {
  Echelon e;
  e.n = n;
  e.k = k;
  for (auto& m : diagrams::enumerate(n, k, diagrams::DiagramClass::all)) {
    e.index[m.chords] = static_cast<int>(e.keys.size());
    e.gravity.push_back(diagrams::is_gravity(m));
    e.keys.push_back(m.chords);
  }
  const int ncols = static_cast<int>(e.keys.size());

  // column order: non-gravity first, so pivots prefer them
  std::vector<int> colpos(ncols);
  {
    int p = 0;
    for (int i = 0; i < ncols; ++i)
      if (!e.gravity[i]) colpos[i] = p++;
    for (int i = 0; i < ncols; ++i)
      if (e.gravity[i]) colpos[i] = p++;
  }

  using Row = std::vector<std::pair<int, Rat>>; // (colpos, coeff), sorted
  std::vector<Row> pivots(ncols);               // by leading colpos
  std::vector<bool> have(ncols, false);

  // a - f*b, both sorted; prefix of a before 'from' kept as is
  auto axpy = [](const Row& a, size_t from, const Rat& f, const Row& b,
                 size_t bfrom) {
    Row out(a.begin(), a.begin() + from);
    size_t i = from, j = bfrom;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        Rat v = -f * b[j].second;
        if (v != 0) out.emplace_back(b[j].first, v);
        ++j;
      } else {
        Rat v = a[i].second - f * b[j].second;
        if (v != 0) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  };

  // eliminate every pivot-column entry of r
  auto reduce_row = [&](Row& r) {
    size_t at = 0;
    while (at < r.size()) {
      int col = r[at].first;
      if (!have[col]) { ++at; continue; }
      r = axpy(r, at, r[at].second, pivots[col], 0);
    }
  };

  if (k >= 2) {
    for (FormExpr& f : relation_space(n, k)) {
      Row r;
      for (const auto& [key, c] : f.terms)
        r.emplace_back(colpos[e.index.at(key)], c);
      std::sort(r.begin(), r.end());
      reduce_row(r);
      if (r.empty()) continue;
      Rat lead = r[0].second;
      for (auto& [p, v] : r) v /= lead;
      int pc = r[0].first;
      // keep earlier pivot rows fully reduced
      for (int q = 0; q < ncols; ++q) {
        if (!have[q]) continue;
        Row& pr = pivots[q];
        auto it = std::lower_bound(
            pr.begin(), pr.end(), std::make_pair(pc, Rat(0)),
            [](const auto& x, const auto& y) { return x.first < y.first; });
        if (it == pr.end() || it->first != pc) continue;
        size_t at = it - pr.begin();
        pr = axpy(pr, at, it->second, r, 0);
      }
      pivots[pc] = std::move(r);
      have[pc] = true;
      ++e.rank;
    }
  }

  const int nfree = static_cast<int>(
      std::count(e.gravity.begin(), e.gravity.end(), false));
  std::vector<int> colkey(ncols); // permuted position -> key index
  for (int i = 0; i < ncols; ++i) colkey[colpos[i]] = i;
  for (int pc = 0; pc < ncols; ++pc) {
    if (!have[pc]) continue;
    if (pc >= nfree)
      throw std::logic_error("gravity reduction: pivot on a gravity monomial");
    std::map<Key, Rat> exp;
    for (size_t i = 1; i < pivots[pc].size(); ++i) {
      int keyidx = colkey[pivots[pc][i].first];
      if (!e.gravity[keyidx])
        throw std::logic_error("gravity reduction: non-gravity tail entry");
      exp[e.keys[keyidx]] = -pivots[pc][i].second;
    }
    e.expansion[e.keys[colkey[pc]]] = std::move(exp);
  }
  return e;
}

const Echelon& echelon(int n, int k) {
  static std::map<std::pair<int, int>, Echelon> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_echelon(n, k)).first;
  return it->second;
}

} // namespace

GravityVector reduce_to_gravity(const FormExpr& f) {
  GravityVector g;
  g.n = f.n;
  if (f.terms.empty()) return g;
  g.k = static_cast<int>(f.terms.begin()->first.size());
  for (const auto& [key, c] : f.terms)
    if (static_cast<int>(key.size()) != g.k)
      throw std::domain_error("reduce_to_gravity: inhomogeneous form");
  const Echelon& e = echelon(f.n, g.k);
  auto addg = [&](const Key& key, const Rat& c) {
    Rat& slot = g.coeffs[key];
    slot += c;
    if (slot == 0) g.coeffs.erase(key);
  };
  for (const auto& [key, c] : f.terms) {
    auto it = e.expansion.find(key);
    if (it == e.expansion.end()) {
      // must be a gravity key then
      int idx = e.index.at(key);
      if (!e.gravity[idx])
        throw std::logic_error("reduce_to_gravity: free non-gravity monomial");
      addg(key, c);
    } else {
      for (const auto& [gk, gc] : it->second) addg(gk, c * gc);
    }
  }
  return g;
}

// ---- regularization -------------------------------------------------------
//
// The projection onto the convergent forms is taken along the span of the
// tesselation products: for every nonempty set T of pairwise non-crossing
// chords, the products (prod_{c in T} a_c) * (pullbacks of prime monomials
// on the faces cut out by T).  Together with the prime monomials these
// products form a basis of the quotient (the cofreeness dimension count),
// and the projection along them is the one compatible with the operadic
// structure.  Projecting away the non-prime members of the *gravity* basis
// instead produces a different splitting for n >= 6, which breaks both the
// cyclic invariance and the homotopy relations downstream.

namespace {

struct PrimeProjection {
  std::vector<Key> primes;
  // prime coordinates of each gravity key
  std::map<Key, std::vector<Rat>> prime_part;
};

// used by build_projection: quotient-coordinate matrix of a relabeling
std::vector<std::vector<Rat>> action_matrix(
    int n, int k, const std::vector<int>& perm,
    const std::vector<diagrams::ChordMonomial>& grav,
    const std::map<Key, int>& gidx) {
  const int G = static_cast<int>(grav.size());
  std::vector<std::vector<Rat>> M(G, std::vector<Rat>(G));
  for (int j = 0; j < G; ++j) {
    FormExpr f(n);
    f.add_monomial(grav[j], 1);
    FormExpr moved = dihedral_action(f, perm);
    for (auto& [key, c] : reduce_to_gravity(moved).coeffs)
      M[gidx.at(key)][j] = c;
  }
  return M;
}

PrimeProjection build_projection(int n, int k) {
  PrimeProjection proj;
  auto grav = diagrams::enumerate(n, k, diagrams::DiagramClass::gravity);
  std::map<Key, int> gidx;
  for (auto& g : grav) gidx.emplace(g.chords, (int)gidx.size());
  const int G = static_cast<int>(grav.size());
  for (auto& p : diagrams::enumerate(n, k, diagrams::DiagramClass::prime))
    proj.primes.push_back(p.chords);
  const int P = static_cast<int>(proj.primes.size());
  if (P == 0 || G == 0) return proj; // projection is identically zero

  auto coords = [&](const std::vector<Chord>& chords) {
    FormExpr f(n);
    f.add(chords, 1);
    std::vector<Rat> v(G);
    for (auto& [key, c] : reduce_to_gravity(f).coeffs) v[gidx.at(key)] = c;
    return v;
  };

  // columns: primes first, then the tesselation products
  std::vector<std::vector<Rat>> cols;
  std::set<Key> seen;
  for (auto& p : proj.primes) {
    cols.push_back(coords(p));
    seen.insert(p);
  }
  for (auto& T : diagrams::enumerate_tesselations(n)) {
    int r = static_cast<int>(T.chords.size());
    if (r == 0 || r > k) continue;
    auto faces = diagrams::tesselation_face_vertices(T);
    // distribute the remaining degree over the faces as prime monomials
    std::vector<std::vector<std::vector<Chord>>> options; // per face, per pick
    std::vector<Chord> current = T.chords;
    std::function<void(size_t, int)> rec = [&](size_t fi, int rem) {
      if (fi == faces.size()) {
        if (rem != 0) return;
        ChordMonomial m = diagrams::canonicalize(n, current);
        if (m.is_zero() || seen.count(m.chords)) return;
        seen.insert(m.chords);
        cols.push_back(coords(m.chords));
        return;
      }
      const auto& F = faces[fi];
      int msize = static_cast<int>(F.size());
      for (int d = 0; d <= rem; ++d) {
        if (d > 0 && (msize < 4 || d > msize - 3)) continue;
        for (auto& pm :
             diagrams::enumerate(msize, d, diagrams::DiagramClass::prime)) {
          size_t base = current.size();
          for (const Chord& c : pm.chords)
            current.emplace_back(F[c.a - 1], F[c.b - 1]);
          rec(fi + 1, rem - d);
          current.resize(base);
        }
      }
    };
    rec(0, k - r);
  }
  if (static_cast<int>(cols.size()) != G)
    throw std::logic_error("regularize: tesselation basis has wrong size");

  // invert [cols] and keep the prime-coordinate rows
  std::vector<std::vector<Rat>> A(G, std::vector<Rat>(2 * G));
  for (int j = 0; j < G; ++j)
    for (int i = 0; i < G; ++i) A[i][j] = cols[j][i];
  for (int i = 0; i < G; ++i) A[i][G + i] = 1;
  for (int col = 0; col < G; ++col) {
    int piv = -1;
    for (int r2 = col; r2 < G; ++r2)
      if (A[r2][col] != 0) { piv = r2; break; }
    if (piv < 0)
      throw std::logic_error("regularize: tesselation basis is degenerate");
    std::swap(A[col], A[piv]);
    Rat lead = A[col][col];
    for (int j = col; j < 2 * G; ++j) A[col][j] /= lead;
    for (int r2 = 0; r2 < G; ++r2) {
      if (r2 == col || A[r2][col] == 0) continue;
      Rat f2 = A[r2][col];
      for (int j = col; j < 2 * G; ++j) A[r2][j] -= f2 * A[col][j];
    }
  }
  for (int j = 0; j < G; ++j) {
    std::vector<Rat> part(P);
    for (int i = 0; i < P; ++i) part[i] = A[i][G + j];
    proj.prime_part.emplace(grav[j].chords, std::move(part));
  }
  return proj;
}

const PrimeProjection& prime_projection(int n, int k) {
  static std::map<std::pair<int, int>, PrimeProjection> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_projection(n, k)).first;
  return it->second;
}

} // namespace

PrimeVector regularize(const FormExpr& f) {
  GravityVector g = reduce_to_gravity(f);
  PrimeVector p;
  p.n = g.n;
  p.k = g.k;
  if (g.is_zero()) return p;
  const PrimeProjection& proj = prime_projection(g.n, g.k);
  if (proj.primes.empty()) return p;
  std::vector<Rat> acc(proj.primes.size());
  for (auto& [key, c] : g.coeffs) {
    const auto& part = proj.prime_part.at(key);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * part[i];
  }
  for (size_t i = 0; i < acc.size(); ++i)
    if (acc[i] != 0) p.coeffs[proj.primes[i]] = acc[i];
  return p;
}

int relation_rank(int n, int k) { return echelon(n, k).rank; }

FormTensor residue_form(const FormExpr& f, const Chord& c) {
  FormTensor t;
  const int n = f.n;
  const int inner_n = c.b - c.a + 1;
  t.n_outer = n - inner_n + 2;
  t.n_inner = inner_n;
  for (const auto& [key, coeff] : f.terms) {
    auto it = std::find(key.begin(), key.end(), c);
    if (it == key.end()) continue;
    int pos = static_cast<int>(it - key.begin());
    std::vector<Chord> rest = key;
    rest.erase(rest.begin() + pos);
    int sgn = pos % 2 ? -1 : 1;
    auto tp = diagrams::cocompose(ChordMonomial{n, sgn, std::move(rest)}, c);
    if (tp.is_zero()) continue;
    auto k2 = std::make_pair(tp.outer.chords, tp.inner.chords);
    Rat& slot = t.terms[k2];
    slot += coeff * tp.outer.sign * tp.inner.sign;
    if (slot == 0) t.terms.erase(k2);
  }
  return t;
}

FormExpr dihedral_action(const FormExpr& f, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != f.n)
    throw std::domain_error("dihedral_action: permutation size mismatch");
  FormExpr out(f.n);
  for (const auto& [key, c] : f.terms) {
    std::vector<Chord> ch;
    ch.reserve(key.size());
    for (const Chord& x : key)
      ch.emplace_back(perm[x.a - 1], perm[x.b - 1]);
    out.add(ch, c);
  }
  return out;
}

std::vector<int> rotation_perm(int n, int shift) {
  std::vector<int> p(n);
  for (int i = 1; i <= n; ++i) p[i - 1] = (i - 1 + shift) % n + 1;
  return p;
}

std::vector<int> reflection_perm(int n) {
  // A flip reverses the cyclic orientation, so on chord labels it acts by
  // the vertex reflection shifted down by one: the flip fixing vertex n
  // (vertex order n-1 < ... < 1 < n) sends the label k to n-1-k mod n.
  std::vector<int> p(n);
  for (int i = 1; i <= n; ++i) {
    int v = (n - 1 - i) % n;
    if (v <= 0) v += n;
    p[i - 1] = v;
  }
  return p;
}

} // namespace exotic::arnold
