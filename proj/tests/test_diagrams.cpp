#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "exotic/diagrams.hpp"

using namespace exotic::diagrams;

namespace {
std::vector<Chord> CH(std::initializer_list<std::pair<int, int>> v) {
  std::vector<Chord> out;
  for (auto [a, b] : v) out.emplace_back(a, b);
  return out;
}
} // namespace

TEST_CASE("chord sets") {
  CHECK_THROWS_AS(chords(3), std::domain_error);
  auto c4 = chords(4);
  CHECK(c4 == CH({{1, 3}, {2, 4}}));
  CHECK(chords(5).size() == 5);
  auto c6 = chords(6);
  CHECK(c6.size() == 9);
  CHECK(std::count(c6.begin(), c6.end(), Chord(6, 4)) == 1);
  CHECK(std::count(c6.begin(), c6.end(), Chord(1, 5)) == 1);
  for (int n = 4; n <= 9; ++n)
    CHECK((int)chords(n).size() == n * (n - 3) / 2);
}

TEST_CASE("crossing") {
  CHECK(crosses(5, Chord(1, 3), Chord(2, 4)));
  CHECK_FALSE(crosses(6, Chord(1, 3), Chord(1, 4)));
  CHECK(crosses(8, Chord(2, 5), Chord(4, 7)));
  // symmetry
  for (const Chord& a : chords(7))
    for (const Chord& b : chords(7))
      CHECK(crosses(7, a, b) == crosses(7, b, a));
}

TEST_CASE("perp") {
  CHECK(perp(5, {}) == chords(5));
  CHECK(perp(5, CH({{1, 3}})) == CH({{2, 4}, {2, 5}}));
  CHECK(perp(5, CH({{2, 4}, {2, 5}})) == CH({{1, 3}}));

  // Galois connection on all singletons/pairs, n=6
  auto cs = chords(6);
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i; j < cs.size(); ++j) {
      std::vector<Chord> A{cs[i]};
      std::vector<Chord> B{cs[i]};
      if (j > i) B.push_back(cs[j]);
      auto pa = perp(6, A), pb = perp(6, B);
      // A subset of B => perp(B) subset of perp(A)
      for (const Chord& c : pb)
        CHECK(std::count(pa.begin(), pa.end(), c) == 1);
      // perp^3 = perp
      CHECK(perp(6, perp(6, pa)) == pa);
    }
}

TEST_CASE("complete crossing pairs") {
  auto p4 = complete_crossing_pairs(4);
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].first == CH({{1, 3}}));
  CHECK(p4[0].second == CH({{2, 4}}));

  auto p5 = complete_crossing_pairs(5);
  CHECK(p5.size() == 5);
  bool found = false;
  for (auto& [A, B] : p5)
    if (A == CH({{1, 3}}) && B == CH({{2, 4}, {2, 5}})) found = true;
  CHECK(found);
  // the pentagon relation u24 + u13*u35 = 1 comes from ({2,4}, {{1,3},{3,5}})
  found = false;
  for (auto& [A, B] : p5) {
    if (A == CH({{2, 4}}) && B == CH({{1, 3}, {3, 5}})) found = true;
    if (B == CH({{2, 4}}) && A == CH({{1, 3}, {3, 5}})) found = true;
  }
  CHECK(found);
  for (auto& [A, B] : p5) {
    CHECK(perp(5, A) == B);
    CHECK(perp(5, B) == A);
  }
}

TEST_CASE("canonicalize") {
  auto m = canonicalize(5, CH({{5, 3}, {1, 4}}));
  CHECK(m.sign == -1);
  CHECK(m.chords == CH({{1, 4}, {3, 5}}));
  CHECK(canonicalize(5, CH({{1, 3}, {1, 3}})).is_zero());
  auto u = canonicalize(5, {});
  CHECK(u.sign == 1);
  CHECK(u.chords.empty());
}

TEST_CASE("cocompose") {
  // heptagon split along {3,6}
  auto m = canonicalize(7, CH({{1, 3}, {2, 7}, {3, 5}}));
  auto t = cocompose(m, Chord(3, 6));
  REQUIRE_FALSE(t.is_zero());
  CHECK(t.outer.n == 5);
  CHECK(t.inner.n == 4);
  CHECK(t.outer.chords == CH({{1, 3}, {2, 5}}));
  CHECK(t.inner.chords == CH({{1, 3}}));

  // split along a crossed chord
  CHECK(cocompose(m, Chord(2, 4)).is_zero());

  auto e = cocompose(unit_monomial(7), Chord(3, 6));
  REQUIRE_FALSE(e.is_zero());
  CHECK(e.outer.chords.empty());
  CHECK(e.inner.chords.empty());
}

TEST_CASE("residue") {
  auto m = canonicalize(7, CH({{1, 3}, {2, 7}, {3, 5}}));
  auto t = residue_diagram(m, Chord(3, 5));
  REQUIRE_FALSE(t.is_zero());
  CHECK(t.outer.n == 6);
  CHECK(t.outer.chords == CH({{1, 3}, {2, 6}}));
  CHECK(t.inner.chords.empty());

  CHECK(residue_diagram(m, Chord(1, 4)).is_zero()); // absent
  CHECK(residue_diagram(m, Chord(2, 7)).is_zero()); // crossed after removal
  CHECK(residue_diagram(m, Chord(1, 3)).is_zero());
}

TEST_CASE("residue order independence up to sign") {
  auto m = canonicalize(8, CH({{1, 3}, {4, 6}}));
  auto t1 = residue_diagram(m, Chord(1, 3));
  REQUIRE_FALSE(t1.is_zero());
  // {4,6} lands in the outer heptagon as {3,5}
  CHECK(t1.outer.chords == CH({{3, 5}}));
  auto t12 = residue_diagram(t1.outer, Chord(3, 5));
  REQUIRE_FALSE(t12.is_zero());

  auto t2 = residue_diagram(m, Chord(4, 6));
  REQUIRE_FALSE(t2.is_zero());
  CHECK(t2.outer.chords == CH({{1, 3}}));
  auto t21 = residue_diagram(t2.outer, Chord(1, 3));
  REQUIRE_FALSE(t21.is_zero());

  // the monomial sign is carried through, so the composite sign is the
  // final outer sign times the inner signs picked up along the way
  int s1 = t12.outer.sign * t12.inner.sign * t1.inner.sign;
  int s2 = t21.outer.sign * t21.inner.sign * t2.inner.sign;
  CHECK(s1 == -s2);
}

TEST_CASE("gravity and prime") {
  CHECK_FALSE(is_gravity(canonicalize(8, CH({{2, 5}, {4, 7}}))));
  CHECK_FALSE(is_gravity(canonicalize(8, CH({{1, 5}, {3, 7}, {3, 5}}))));
  CHECK(is_gravity(canonicalize(5, CH({{5, 3}, {1, 4}}))));

  CHECK(is_prime(canonicalize(5, CH({{5, 3}, {1, 4}}))));
  CHECK(is_prime(canonicalize(6, CH({{6, 4}, {6, 3}, {1, 5}}))));
  CHECK_FALSE(is_prime(canonicalize(7, CH({{1, 3}, {2, 7}, {3, 5}}))));
}

TEST_CASE("enumerate") {
  CHECK(enumerate(5, 2, DiagramClass::prime).size() == 1);
  CHECK(enumerate(6, 3, DiagramClass::prime).size() == 4);
  CHECK(enumerate(4, 1, DiagramClass::prime).empty());
  CHECK(enumerate(5, 2, DiagramClass::gravity).size() == 6);
  CHECK(enumerate(5, 2, DiagramClass::all).size() == 10);
}

TEST_CASE("prime bracketings") {
  auto b4 = prime_bracketings(4);
  REQUIRE(b4.size() == 1);
  CHECK(b4[0].str() == "[[1,3],[2,4]]");
  CHECK(bracketing_chords(b4[0]) == CH({{5, 3}, {1, 4}}));

  auto b5 = prime_bracketings(5);
  CHECK(b5.size() == 4);
  std::set<std::string> strs;
  for (auto& p : b5) strs.insert(p.str());
  CHECK(strs.count("[[[1,3],4],[2,5]]") == 1);
  CHECK(strs.count("[[1,3],[[2,4],5]]") == 1);
  CHECK(strs.count("[[1,[2,4]],[3,5]]") == 1);
  CHECK(strs.count("[[1,4],[2,[3,5]]]") == 1);

  for (auto& p : b5) {
    if (p.str() == "[[[1,3],4],[2,5]]")
      CHECK(bracketing_chords(p) == CH({{6, 4}, {6, 3}, {1, 5}}));
    if (p.str() == "[[1,4],[2,[3,5]]]")
      CHECK(bracketing_chords(p) == CH({{6, 4}, {1, 5}, {2, 5}}));
  }
}

TEST_CASE("bracketing/prime-diagram bijection") {
  for (int n = 5; n <= 8; ++n) {
    auto primes = enumerate(n, n - 3, DiagramClass::prime);
    auto brs = prime_bracketings(n - 1);
    REQUIRE(primes.size() == brs.size());
    std::set<std::vector<Chord>> images;
    for (auto& p : brs) {
      auto d = bracketing_to_diagram(p);
      CHECK(is_prime(d));
      images.insert(d.chords);
    }
    CHECK(images.size() == brs.size()); // injective
    for (auto& m : primes) CHECK(images.count(m.chords) == 1);
  }
}

TEST_CASE("tesselations") {
  CHECK(enumerate_tesselations(4).size() == 3);
  CHECK(enumerate_tesselations(5).size() == 11);
  CHECK(enumerate_tesselations(6).size() == 45);
  Tesselation t{4, CH({{1, 3}})};
  CHECK(tesselation_faces(t) == std::vector<int>{3, 3});
  // no two member chords cross
  for (auto& ts : enumerate_tesselations(6))
    for (size_t i = 0; i < ts.chords.size(); ++i)
      for (size_t j = i + 1; j < ts.chords.size(); ++j)
        CHECK_FALSE(crosses(6, ts.chords[i], ts.chords[j]));
}
