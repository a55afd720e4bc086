#include "exotic/darboux.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace exotic::darboux {

int mon_degree(const Mon& m) { return std::popcount(m.pmask); }

GradedPoly GradedPoly::constant(Context c, const Rat& v) {
  GradedPoly f(c);
  if (v != 0) f.terms[Mon{}] = v;
  return f;
}

GradedPoly GradedPoly::variable_q(Context c, int u) {
  GradedPoly f(c);
  Mon m;
  m.q[u - 1] = 1;
  f.terms[m] = 1;
  return f;
}

GradedPoly GradedPoly::variable_p(Context c, int u) {
  GradedPoly f(c);
  Mon m;
  m.pmask = 1u << (u - 1);
  f.terms[m] = 1;
  return f;
}

void GradedPoly::add(const Mon& m, const Rat& c) {
  if (c == 0) return;
  Rat& slot = terms[m];
  slot += c;
  if (slot == 0) terms.erase(m);
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (auto& [m, c] : o.terms) add(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rat& c) {
  if (c == 0) { terms.clear(); return *this; }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

bool GradedPoly::homogeneous(int& deg) const {
  if (terms.empty()) {
    deg = 0;
    return true;
  }
  deg = mon_degree(terms.begin()->first);
  for (auto& [m, c] : terms)
    if (mon_degree(m) != deg) return false;
  return true;
}

std::string GradedPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (auto& [m, c] : terms) {
    os << (c > 0 ? "+" : "") << rat_str(c);
    for (int u = 0; u < ctx.d; ++u)
      for (int e = 0; e < m.q[u]; ++e) os << "q" << u + 1;
    for (int u = 0; u < ctx.d; ++u)
      if (m.pmask >> u & 1) os << "p" << u + 1;
    os << " ";
  }
  return os.str();
}

namespace {

// parity of merging two ascending odd-index sets (a first, then b)
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  while (b) {
    int bit = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (bit + 1));
  }
  return inversions % 2 ? -1 : 1;
}

} // namespace

GradedPoly mul(const GradedPoly& f, const GradedPoly& g) {
  GradedPoly out(f.ctx);
  for (auto& [mf, cf] : f.terms)
    for (auto& [mg, cg] : g.terms) {
      if (mf.pmask & mg.pmask) continue; // odd square
      Mon m;
      m.pmask = mf.pmask | mg.pmask;
      for (int u = 0; u < 4; ++u)
        m.q[u] = static_cast<std::uint8_t>(mf.q[u] + mg.q[u]);
      out.add(m, cf * cg * merge_sign(mf.pmask, mg.pmask));
    }
  return out;
}

GradedPoly add(GradedPoly f, const GradedPoly& g) {
  f += g;
  return f;
}

GradedPoly scale(GradedPoly f, const Rat& c) {
  f *= c;
  return f;
}

GradedPoly d_q(const GradedPoly& f, int u) {
  GradedPoly out(f.ctx);
  for (auto& [m, c] : f.terms) {
    if (m.q[u - 1] == 0) continue;
    Mon d = m;
    d.q[u - 1] -= 1;
    out.add(d, c * static_cast<int>(m.q[u - 1]));
  }
  return out;
}

GradedPoly d_p(const GradedPoly& f, int u) {
  GradedPoly out(f.ctx);
  const std::uint32_t bit = 1u << (u - 1);
  for (auto& [m, c] : f.terms) {
    if (!(m.pmask & bit)) continue;
    Mon d = m;
    d.pmask &= ~bit;
    // left derivative: p_u crosses the odd factors before it
    int below = std::popcount(m.pmask & (bit - 1));
    out.add(d, below % 2 ? -c : c);
  }
  return out;
}

GradedPoly affine_sub(const GradedPoly& f, const Rat& a, const Rat& c) {
  // q -> a q + c, p -> p / a on every pair
  GradedPoly out(f.ctx);
  for (auto& [m, co] : f.terms) {
    GradedPoly term = GradedPoly::constant(f.ctx, co);
    for (int u = 1; u <= f.ctx.d; ++u) {
      GradedPoly lin = GradedPoly::variable_q(f.ctx, u);
      lin *= a;
      lin.add(Mon{}, c);
      for (int e = 0; e < m.q[u - 1]; ++e) term = mul(term, lin);
      if (m.pmask >> (u - 1) & 1) {
        GradedPoly ps = GradedPoly::variable_p(f.ctx, u);
        ps *= Rat(1) / a;
        term = mul(term, ps);
      }
    }
    out += term;
  }
  return out;
}

GradedPoly delta(const GradedPoly& f) {
  GradedPoly out(f.ctx);
  for (int u = 1; u <= f.ctx.d; ++u) out += d_p(d_q(f, u), u);
  return out;
}

GradedPoly bracket(const GradedPoly& f, const GradedPoly& g) {
  // sum over u of (-1)^{|f|} d_q f d_p g + d_p f d_q g, bilinear over the
  // odd-degree components of f
  GradedPoly out(f.ctx);
  GradedPoly f_even(f.ctx), f_odd(f.ctx);
  for (auto& [m, c] : f.terms)
    (mon_degree(m) % 2 ? f_odd : f_even).add(m, c);
  for (int u = 1; u <= f.ctx.d; ++u) {
    out += mul(d_q(f_even, u), d_p(g, u));
    out += scale(mul(d_q(f_odd, u), d_p(g, u)), -1);
    out += mul(d_p(f, u), d_q(g, u));
  }
  return out;
}

// ---- tensor operators ---------------------------------------------------

namespace {

struct TupleTerm {
  Rat coeff;
  std::vector<GradedPoly> slots;
};

using TupleSum = std::vector<TupleTerm>;

int slot_degree(const GradedPoly& f) {
  int deg = 0;
  if (!f.homogeneous(deg))
    throw std::domain_error("tensor slots must be homogeneous");
  return deg;
}

// Koszul sign of an odd operator crossing the slots before `slot`
int cross_sign(const TupleTerm& t, int slot) {
  int deg = 0;
  for (int a = 0; a < slot; ++a) deg += slot_degree(t.slots[a]);
  return deg % 2 ? -1 : 1;
}

void apply_generator(const graphs::GraphGenerator& g, const TupleSum& in,
                     TupleSum& out, int d) {
  for (const TupleTerm& t : in) {
    if (g.is_tadpole()) {
      int k = g.a - 1;
      TupleTerm nt = t;
      nt.coeff *= cross_sign(t, k);
      nt.slots[k] = delta(t.slots[k]);
      if (!nt.slots[k].is_zero()) out.push_back(std::move(nt));
      continue;
    }
    int i = g.a - 1, j = g.b - 1;
    for (int u = 1; u <= d; ++u) {
      {
        TupleTerm nt = t;
        nt.coeff *= cross_sign(t, i);
        nt.slots[i] = d_p(t.slots[i], u);
        nt.slots[j] = d_q(t.slots[j], u);
        if (!nt.slots[i].is_zero() && !nt.slots[j].is_zero())
          out.push_back(std::move(nt));
      }
      {
        TupleTerm nt = t;
        nt.coeff *= cross_sign(t, j);
        nt.slots[j] = d_p(t.slots[j], u);
        nt.slots[i] = d_q(t.slots[i], u);
        if (!nt.slots[i].is_zero() && !nt.slots[j].is_zero())
          out.push_back(std::move(nt));
      }
    }
  }
}

} // namespace

GradedPoly apply_graph(const graphs::GraphMonomial& gm, const Tuple& in) {
  GradedPoly zero = GradedPoly::zero(in.ctx);
  if (gm.is_zero()) return zero;
  TupleSum state{TupleTerm{Rat(gm.sign), in.slots}};
  // rightmost generator acts first
  for (auto it = gm.gens.rbegin(); it != gm.gens.rend(); ++it) {
    TupleSum next;
    apply_generator(*it, state, next, in.ctx.d);
    state = std::move(next);
    if (state.empty()) return zero;
  }
  GradedPoly out(in.ctx);
  for (const TupleTerm& t : state) {
    GradedPoly prod = GradedPoly::constant(in.ctx, t.coeff);
    for (const GradedPoly& s : t.slots) {
      prod = mul(prod, s);
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

GradedPoly apply_chain(const graphs::GraphChain& chain, const Tuple& in) {
  GradedPoly out(in.ctx);
  for (auto& [key, c] : chain.terms) {
    GradedPoly piece = apply_graph(graphs::GraphMonomial{chain.n, 1, key}, in);
    piece *= c;
    out += piece;
  }
  return out;
}

GradedPoly leibniz_witness(const Tuple& in) {
  if (in.slots.size() < 2)
    throw std::domain_error("leibniz_witness: need at least two slots");
  const int k = static_cast<int>(in.slots.size()) - 1;
  const GradedPoly& g = in.slots.back();
  GradedPoly W(in.ctx);
  for (int u = 1; u <= in.ctx.d; ++u) {
    GradedPoly F = GradedPoly::constant(in.ctx, 1);
    for (int i = 0; i < k; ++i) F = mul(F, in.slots[i]);
    W += d_p(mul(F, d_q(g, u)), u);
    int parity = 0;
    for (int i = 0; i < k; ++i) {
      GradedPoly piece = GradedPoly::constant(in.ctx, parity % 2 ? 1 : -1);
      for (int a = 0; a < k; ++a)
        piece = mul(piece, a == i ? d_p(in.slots[a], u) : in.slots[a]);
      piece = mul(piece, d_q(g, u));
      W += piece;
      parity += slot_degree(in.slots[i]);
    }
    GradedPoly last = mul(F, d_p(d_q(g, u), u));
    last *= parity % 2 ? 1 : -1;
    W += last;
  }
  return W;
}

// ---- deterministic sparse random polynomials ------------------------------

namespace {
std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t x = s;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
} // namespace

GradedPoly random_poly(Context c, int odd_degree, std::uint64_t seed) {
  std::uint64_t s = seed * 0x2545f4914f6cdd1dull + 0x452821e638d01377ull;
  GradedPoly f(c);
  int nterms = 3 + static_cast<int>(splitmix(s) % 3);
  for (int t = 0; t < nterms; ++t) {
    Mon m;
    std::uint32_t mask = 0;
    int tries = 0;
    while (std::popcount(mask) < odd_degree && tries < 64) {
      mask |= 1u << (splitmix(s) % c.d);
      ++tries;
    }
    if (std::popcount(mask) != odd_degree) continue;
    m.pmask = mask;
    for (int u = 0; u < c.d; ++u)
      m.q[u] = static_cast<std::uint8_t>(splitmix(s) % 4);
    int coeff = static_cast<int>(splitmix(s) % 7) - 3;
    if (coeff == 0) coeff = 1;
    f.add(m, coeff);
  }
  if (f.is_zero()) {
    Mon m;
    m.pmask = (1u << odd_degree) - 1;
    f.add(m, 1);
  }
  return f;
}

Tuple random_tuple(Context c, int slots, std::uint64_t seed) {
  Tuple t{c, {}};
  std::uint64_t s = seed;
  for (int i = 0; i < slots; ++i) {
    int deg = static_cast<int>(splitmix(s) % (c.d + 1));
    t.slots.push_back(random_poly(c, deg, splitmix(s)));
  }
  return t;
}

} // namespace exotic::darboux
