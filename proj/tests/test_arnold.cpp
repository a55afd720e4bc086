#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <tuple>

#include "exotic/arnold.hpp"

using namespace exotic;
using namespace exotic::arnold;
using diagrams::Chord;
using diagrams::ChordMonomial;
using diagrams::DiagramClass;

namespace {

std::vector<Chord> CH(std::initializer_list<std::pair<int, int>> v) {
  std::vector<Chord> out;
  for (auto [a, b] : v) out.emplace_back(a, b);
  return out;
}

FormExpr form(int n, std::initializer_list<std::pair<int, int>> ch) {
  FormExpr f(n);
  f.add(CH(ch), 1);
  return f;
}

int monomial_count(int n, int k) {
  return (int)diagrams::enumerate(n, k, DiagramClass::all).size();
}

int gravity_count(int n, int k) {
  return (int)diagrams::enumerate(n, k, DiagramClass::gravity).size();
}

// reduce a residue tensor to quotient coordinates
std::map<std::tuple<std::vector<Chord>, std::vector<Chord>>, Rat>
tensor_coords(const FormTensor& t) {
  std::map<std::tuple<std::vector<Chord>, std::vector<Chord>>, Rat> coord;
  for (auto& [kk, cc] : t.terms) {
    FormExpr lo(t.n_outer), hi(t.n_inner);
    lo.add(kk.first, 1);
    hi.add(kk.second, 1);
    auto glo = reduce_to_gravity(lo);
    auto ghi = reduce_to_gravity(hi);
    for (auto& [k1, c1] : glo.coeffs)
      for (auto& [k2, c2] : ghi.coeffs) {
        auto key = std::make_tuple(k1, k2);
        coord[key] += cc * c1 * c2;
        if (coord[key] == 0) coord.erase(key);
      }
  }
  return coord;
}

} // namespace

TEST_CASE("kz substitution") {
  auto m = diagrams::canonicalize(5, CH({{5, 3}, {1, 4}}));
  auto f = kz(m);
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms.begin()->first == CH({{1, 4}, {3, 5}}));
  CHECK(f.terms.begin()->second == -1);
  CHECK(kz(diagrams::unit_monomial(5)).terms.at(std::vector<Chord>{}) == 1);
}

TEST_CASE("relation space n=5 degree 2") {
  auto rels = relation_space(5, 2);
  FormExpr expect(5);
  expect.add(CH({{1, 3}, {2, 4}}), 1);
  expect.add(CH({{1, 3}, {2, 5}}), 1);
  bool found = false;
  for (auto& r : rels) found = found || r == expect;
  CHECK(found);
  CHECK(relation_rank(5, 2) == 10 - 6);
}

TEST_CASE("square relation") {
  CHECK(relation_rank(4, 1) == 0);
  CHECK(monomial_count(4, 2) - relation_rank(4, 2) == 0);
  auto g = reduce_to_gravity(form(4, {{1, 3}, {2, 4}}));
  CHECK(g.is_zero());
}

TEST_CASE("reduce to gravity") {
  auto g = reduce_to_gravity(form(5, {{5, 3}, {1, 4}}));
  REQUIRE(g.coeffs.size() == 1);
  CHECK(g.coeffs.at(CH({{1, 4}, {3, 5}})) == -1);

  // a13 a24 reduces to the unique crossing gravity monomial
  auto g2 = reduce_to_gravity(form(5, {{1, 3}, {2, 4}}));
  REQUIRE(g2.coeffs.size() == 1);
  CHECK(g2.coeffs.at(CH({{1, 4}, {3, 5}})) == -1);

  for (auto& r : relation_space(5, 2)) CHECK(reduce_to_gravity(r).is_zero());
  for (auto& r : relation_space(6, 3)) CHECK(reduce_to_gravity(r).is_zero());
}

TEST_CASE("regularization five pentagon values") {
  FormExpr aP = form(5, {{5, 3}, {1, 4}});
  PrimeVector P = regularize(aP);
  REQUIRE(P.coeffs.size() == 1);
  Rat unitP = P.coeffs.begin()->second;

  auto val = [&](std::initializer_list<std::pair<int, int>> ch) {
    PrimeVector v = regularize(form(5, ch));
    REQUIRE(v.coeffs.size() == 1);
    return v.coeffs.begin()->second / unitP;
  };
  CHECK(val({{5, 3}, {1, 4}}) == 1);
  CHECK(val({{5, 2}, {1, 4}}) == -1);
  CHECK(val({{5, 2}, {1, 3}}) == 1);
  CHECK(val({{2, 4}, {1, 3}}) == -1);
  CHECK(val({{2, 4}, {5, 3}}) == 1);

  auto z = regularize(form(5, {{1, 3}, {1, 4}}));
  CHECK(z.is_zero());
}

TEST_CASE("rank oracle: gravity counts vs relation quotient") {
  for (int n = 4; n <= 7; ++n)
    for (int k = 0; k <= n - 3; ++k) {
      int quotient = monomial_count(n, k) - relation_rank(n, k);
      CHECK(quotient == gravity_count(n, k));
    }
}

TEST_CASE("prime span equals joint residue kernel") {
  for (int n = 4; n <= 6; ++n) {
    int k = n - 3;
    auto grav = diagrams::enumerate(n, k, DiagramClass::gravity);
    auto primes = diagrams::enumerate(n, k, DiagramClass::prime);

    // dense residue matrix over a lazily built column index
    std::map<std::tuple<int, std::tuple<std::vector<Chord>, std::vector<Chord>>>, int>
        colidx;
    std::vector<std::vector<Rat>> rows;
    auto cs = diagrams::chords(n);
    for (auto& g : grav) {
      std::vector<Rat> row;
      for (size_t ci = 0; ci < cs.size(); ++ci) {
        FormExpr f(n);
        f.add_monomial(g, 1);
        auto coord = tensor_coords(residue_form(f, cs[ci]));
        for (auto& [kk, vv] : coord) {
          auto key = std::make_tuple((int)ci, kk);
          auto it = colidx.find(key);
          int idx = it == colidx.end()
                        ? colidx.emplace(key, (int)colidx.size()).first->second
                        : it->second;
          if ((int)row.size() <= idx) row.resize(idx + 1);
          row[idx] += vv;
        }
      }
      rows.push_back(std::move(row));
    }
    size_t width = colidx.size();
    for (auto& r : rows) r.resize(width);

    int rank = 0;
    std::vector<std::vector<Rat>> ech;
    for (auto r : rows) {
      for (auto& e : ech) {
        size_t lead = 0;
        while (lead < e.size() && e[lead] == 0) ++lead;
        if (lead < e.size() && r[lead] != 0) {
          Rat f = r[lead] / e[lead];
          for (size_t i = 0; i < r.size(); ++i) r[i] -= f * e[i];
        }
      }
      bool nz = false;
      for (auto& v : r) nz = nz || v != 0;
      if (nz) {
        ech.push_back(r);
        ++rank;
      }
    }
    CHECK((int)grav.size() - rank == (int)primes.size());

    // prime monomials lie in the joint kernel
    for (auto& p : primes) {
      FormExpr f(n);
      f.add_monomial(p, 1);
      for (const Chord& c : cs) CHECK(tensor_coords(residue_form(f, c)).empty());
    }
  }
}

TEST_CASE("residue well-defined on relations") {
  for (int n = 5; n <= 6; ++n)
    for (int k = 2; k <= n - 3; ++k)
      for (auto& r : relation_space(n, k))
        for (const Chord& c : diagrams::chords(n))
          CHECK(tensor_coords(residue_form(r, c)).empty());
}

TEST_CASE("cofree dimension count") {
  auto prime_dim = [&](int m, int d) {
    if (d == 0) return 1;
    if (m < 4 || d > m - 3) return 0;
    return (int)diagrams::enumerate(m, d, DiagramClass::prime).size();
  };
  for (int n = 4; n <= 7; ++n) {
    auto tess = diagrams::enumerate_tesselations(n);
    for (int k = 0; k <= n - 3; ++k) {
      int want = gravity_count(n, k);
      long got = 0;
      for (auto& t : tess) {
        int r = (int)t.chords.size();
        if (r > k) continue;
        int rem = k - r;
        std::vector<long> dp(rem + 1, 0);
        dp[0] = 1;
        for (int fs : diagrams::tesselation_faces(t)) {
          std::vector<long> nxt(rem + 1, 0);
          for (int used = 0; used <= rem; ++used) {
            if (!dp[used]) continue;
            for (int d = 0; used + d <= rem; ++d) {
              int pd = prime_dim(fs, d);
              if (pd) nxt[used + d] += dp[used] * pd;
            }
          }
          dp = std::move(nxt);
        }
        got += dp[rem];
      }
      CHECK(got == want);
    }
  }
}

TEST_CASE("dihedral action") {
  FormExpr f = form(6, {{6, 4}, {6, 3}, {1, 5}});
  CHECK(dihedral_action(f, rotation_perm(6, 0)) == f);

  FormExpr g = f;
  for (int i = 0; i < 6; ++i) g = dihedral_action(g, rotation_perm(6, 1));
  CHECK(g == f);

  FormExpr aP1 = form(6, {{6, 4}, {6, 3}, {1, 5}});
  FormExpr aP2 = form(6, {{6, 3}, {1, 5}, {1, 4}});
  FormExpr aP3 = form(6, {{6, 4}, {1, 4}, {2, 5}});
  FormExpr aP4 = form(6, {{6, 4}, {1, 5}, {2, 5}});

  auto eq_class = [&](FormExpr a, FormExpr b, int sign) {
    auto ga = reduce_to_gravity(a);
    b *= sign;
    auto gb = reduce_to_gravity(b);
    return ga == gb;
  };
  CHECK(eq_class(dihedral_action(aP1, rotation_perm(6, 1)), aP2, -1));
  CHECK(eq_class(dihedral_action(aP3, rotation_perm(6, 1)), aP4, -1));
  CHECK(eq_class(dihedral_action(aP1, reflection_perm(6)), aP4, 1));
  CHECK(eq_class(dihedral_action(aP2, reflection_perm(6)), aP3, 1));
}

TEST_CASE("regularized kz integrality (observational)") {
  for (int n = 5; n <= 6; ++n)
    for (auto& m : diagrams::enumerate(n, n - 3, DiagramClass::all)) {
      auto v = regularize(kz(m));
      for (auto& [key, c] : v.coeffs) {
        if (denominator(c) != 1)
          MESSAGE("non-integer regularized coefficient at n=", n, ": ",
                  rat_str(c));
        WARN(denominator(c) == 1);
      }
    }
}
