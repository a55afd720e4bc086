#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "exotic/darboux.hpp"

using namespace exotic;
using namespace exotic::darboux;
using graphs::GraphGenerator;
using graphs::GraphMonomial;

namespace {

const Context C2{2};
const Context C3{3};

GradedPoly Q(Context c, int u) { return GradedPoly::variable_q(c, u); }
GradedPoly P(Context c, int u) { return GradedPoly::variable_p(c, u); }

// all homogeneous pieces of a list of random polys
std::vector<GradedPoly> random_homogeneous(Context c, int count,
                                           std::uint64_t seed) {
  std::vector<GradedPoly> out;
  for (int i = 0; i < count; ++i)
    out.push_back(random_poly(c, static_cast<int>(i % (c.d + 1)), seed + i));
  return out;
}

int deg(const GradedPoly& f) {
  int d = 0;
  REQUIRE(f.homogeneous(d));
  return d;
}

} // namespace

TEST_CASE("graded product") {
  auto p1 = P(C2, 1), p2 = P(C2, 2), q1 = Q(C2, 1);
  CHECK(mul(p1, p1).is_zero());
  CHECK(mul(p1, p2) == scale(mul(p2, p1), -1));
  CHECK(mul(q1, p1) == mul(p1, q1));
  // associativity on random triples
  for (int t = 0; t < 10; ++t) {
    auto f = random_poly(C2, t % 3, 100 + t);
    auto g = random_poly(C2, (t + 1) % 3, 200 + t);
    auto h = random_poly(C2, (t + 2) % 3, 300 + t);
    CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
    // graded commutativity
    int s = (deg(f) * deg(g)) % 2 ? -1 : 1;
    CHECK(mul(f, g) == scale(mul(g, f), s));
  }
}

TEST_CASE("delta squares to zero") {
  CHECK(delta(mul(P(C2, 1), Q(C2, 1))) == GradedPoly::constant(C2, 1));
  CHECK(delta(mul(Q(C2, 1), Q(C2, 2))).is_zero());
  CHECK(delta(GradedPoly::constant(C2, 1)).is_zero());
  for (int t = 0; t < 30; ++t) {
    auto f = random_poly(C3, t % 4, 400 + t);
    CHECK(delta(delta(f)).is_zero());
  }
}

TEST_CASE("bracket basics") {
  CHECK(bracket(Q(C2, 1), Q(C2, 2)).is_zero());
  CHECK(bracket(P(C2, 1), P(C2, 2)).is_zero());
  CHECK(bracket(Q(C2, 1), P(C2, 1)) == GradedPoly::constant(C2, 1));
  CHECK(bracket(P(C2, 1), Q(C2, 1)) == GradedPoly::constant(C2, 1));
}

TEST_CASE("bracket axioms") {
  for (auto c : {C2, C3}) {
    auto polys = random_homogeneous(c, 3 * (c.d + 1), 500 + c.d);
    int count = 0;
    for (auto& f : polys)
      for (auto& g : polys) {
        // graded symmetry
        int s = (deg(f) * deg(g)) % 2 ? -1 : 1;
        CHECK(bracket(f, g) == scale(bracket(g, f), s));
        // derivation property
        for (auto& h : polys) {
          if (++count > 120) return;
          auto lhs = bracket(f, mul(g, h));
          auto rhs = mul(bracket(f, g), h);
          int s2 = ((deg(f) + 1) * deg(g)) % 2 ? -1 : 1;
          rhs += scale(mul(g, bracket(f, h)), s2);
          CHECK(lhs == rhs);
          // odd Jacobi, cyclic form: the prefactor pairs the outer
          // argument with the innermost one
          auto jac = [&](const GradedPoly& x, const GradedPoly& y,
                         const GradedPoly& z) {
            int e = (deg(x) * (deg(z) + 1)) % 2 ? -1 : 1;
            return scale(bracket(x, bracket(y, z)), e);
          };
          auto total = jac(f, g, h);
          total += jac(g, h, f);
          total += jac(h, f, g);
          CHECK(total.is_zero());
          // delta is a derivation of the bracket
          auto w = delta(bracket(f, g));
          w += bracket(delta(f), g);
          w += scale(bracket(f, delta(g)), deg(f) % 2 ? -1 : 1);
          CHECK(w.is_zero());
        }
      }
  }
}

TEST_CASE("graph operators") {
  // a tadpole acts as delta on its slot
  auto f = random_poly(C2, 1, 901);
  auto g = random_poly(C2, 0, 902);
  Tuple in{C2, {f, g}};
  auto gm = GraphMonomial{3, 1, {GraphGenerator::tadpole(1)}};
  CHECK(apply_graph(gm, in) == mul(delta(f), g));

  // a single edge acts as the bracket
  auto ge = GraphMonomial{3, 1, {GraphGenerator::edge(1, 2)}};
  CHECK(apply_graph(ge, in) == bracket(f, g));

  // the empty graph is the product
  auto gu = GraphMonomial{3, 1, {}};
  CHECK(apply_graph(gu, in) == mul(f, g));

  // edge with constant contribution: dp1 . dq2 pairing
  Tuple pq{C2, {P(C2, 1), Q(C2, 1)}};
  CHECK(apply_graph(ge, pq) == GradedPoly::constant(C2, 1));

  // disjoint support kills the couplings
  Tuple disj{C2, {P(C2, 1), P(C2, 2)}};
  CHECK(apply_graph(ge, disj).is_zero());
}

TEST_CASE("operator order antisymmetry") {
  for (int t = 0; t < 8; ++t) {
    Tuple in = random_tuple(C2, 4, 1000 + t);
    GraphGenerator a = GraphGenerator::edge(1, 3);
    GraphGenerator b = t % 2 ? GraphGenerator::edge(2, 4)
                             : GraphGenerator::tadpole(2);
    auto ab = apply_graph(GraphMonomial{5, 1, {a, b}}, in);
    auto ba = apply_graph(GraphMonomial{5, 1, {b, a}}, in);
    CHECK(ab == scale(ba, -1));
  }
}

TEST_CASE("leibniz witness vanishes") {
  for (int t = 0; t < 10; ++t) {
    Tuple in = random_tuple(C2, 3 + t % 3, 2000 + t);
    CHECK(leibniz_witness(in).is_zero());
  }
  Tuple c{C2, {random_poly(C2, 1, 77), GradedPoly::constant(C2, 3)}};
  CHECK(leibniz_witness(c).is_zero());
  Tuple d1{Context{1}, {random_poly(Context{1}, 1, 78),
                        random_poly(Context{1}, 0, 79)}};
  CHECK(leibniz_witness(d1).is_zero());
}

TEST_CASE("affine symplectic invariance") {
  Context c1{1};
  Rat a(3, 2), sh(-2);
  for (int t = 0; t < 6; ++t) {
    Tuple in = random_tuple(c1, 2, 3000 + t);
    Tuple moved{c1, {affine_sub(in.slots[0], a, sh),
                     affine_sub(in.slots[1], a, sh)}};
    for (auto gen : {GraphGenerator::edge(1, 2), GraphGenerator::tadpole(1),
                     GraphGenerator::tadpole(2)}) {
      auto gm = GraphMonomial{3, 1, {gen}};
      CHECK(apply_graph(gm, moved) == affine_sub(apply_graph(gm, in), a, sh));
    }
  }
}
