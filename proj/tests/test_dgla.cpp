#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ratdg/definitions.hpp"
#include "ratdg/mc.hpp"
#include "ratdg/presentation.hpp"

using namespace ratdg;

namespace {

Vec random_in_degree(std::mt19937& r, const Dgla& g, int n) {
  Vec v;
  for (int i : g.space().in_degree(n)) axpy(v, oracle::small_q(r), unit_vec(i));
  return v;
}

}  // namespace

TEST(Dgla, SphereIsAcyclicWithTwoMcPoints) {
  Dgla s = sphere_dgla();
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(homology(s).total(), 0);
  EXPECT_TRUE(is_mc(s, {}).ok);
  EXPECT_TRUE(is_mc(s, unit_vec(0)).ok);
  EXPECT_FALSE(is_mc(s, unit_vec(0, -1)).ok);
  EXPECT_FALSE(is_mc(s, unit_vec(0, 2)).ok);
}

TEST(Dgla, BadBracketTableIsRejected) {
  GradedVectorSpace sp;
  sp.add("a", 0);
  sp.add("b", 0);
  // [a,b] = a and [b,a] = a violates antisymmetry
  EXPECT_THROW(Dgla(sp, {{{0, 1}, unit_vec(0)}, {{1, 0}, unit_vec(0)}}, std::vector<Vec>(2)),
               AxiomViolation);
}

TEST(Dgla, McCandidateOfWrongDegreeThrows) {
  EXPECT_THROW(is_mc(sphere_dgla(), unit_vec(1)), DegreeMismatch);
}

TEST(Dgla, TwistSquaresToZeroAndRejectsNonMc) {
  auto def = builtin_definition("f_xa");
  Dgla g = realize(*def.presentation, 4).dgla;
  Vec x = realize(*def.presentation, 4).generators[1];
  Dgla tw = twist(g, x);
  tw.check_axioms();
  EXPECT_THROW(twist(g, scaled(x, 2)), NotMaurerCartan);
}

TEST(Dgla, ConnectedCoverKeepsPositiveHomology) {
  std::mt19937 r(2);
  for (const char* name : {"heisenberg", "four_cell", "abelian:2:0", "sphere"}) {
    Dgla g = *builtin_definition(name).dgla;
    ConnectedCover cc = connected_cover(g);
    auto hg = homology(g).dims(), hc = homology(cc.cover).dims();
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(hg[n], hc[n]) << name << " degree " << n;
    for (const auto& [n, k] : hc) EXPECT_GE(n, 0);
  }
}

TEST(Dgla, GaugeActionIsAGroupActionOnTruncations) {
  auto def = builtin_definition("f_xa");
  PresentedDgla real = realize(*def.presentation, 4);
  const Dgla& g = real.dgla;
  Vec x = real.generators[1];
  std::mt19937 r(4);
  for (int t = 0; t < 10; ++t) {
    Vec a = random_in_degree(r, g, 0), b = random_in_degree(r, g, 0);
    EXPECT_EQ(gauge_act(g, {}, x), x);
    Vec ab = gauge_act(g, a, gauge_act(g, b, x));
    Vec c = gauge_act(g, bch(g, a, b), x);
    EXPECT_EQ(ab, c);
    EXPECT_TRUE(is_mc(g, ab).ok);
    // inverse
    EXPECT_EQ(gauge_act(g, scaled(a, -1), gauge_act(g, a, x)), x);
  }
}

TEST(Dgla, GaugeConnectFindsComposableWitness) {
  auto def = builtin_definition("f_xa");
  PresentedDgla real = realize(*def.presentation, 4);
  Vec x = real.generators[1];
  std::mt19937 r(8);
  Vec a = random_in_degree(r, real.dgla, 0);
  Vec y = gauge_act(real.dgla, a, x);
  auto steps = ratdg::gauge_connect(real.dgla, y, x);
  ASSERT_TRUE(steps.has_value());
  Vec cur = x;
  for (const auto& s : *steps) cur = gauge_act(real.dgla, s, cur);
  EXPECT_EQ(cur, y);
}

TEST(Presentation, HeisenbergQuotient) {
  DglaPresentation p;
  p.gens = {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 1}};
  p.differential.assign(3, {});
  for (const char* rel : {"[a,c]", "[b,c]", "[a,b] - c"}) p.relations.push_back(parse_lie_expression(p.gens, rel));
  PresentedDgla q = realize(p, 3);
  EXPECT_EQ(q.dgla.dim(), 3);
  Vec ab = q.dgla.bracket(q.generators[0], q.generators[1]);
  EXPECT_EQ(ab, q.generators[2]);
  EXPECT_TRUE(q.dgla.bracket(q.generators[0], q.generators[2]).empty());
}

TEST(Presentation, FreeProductOfTwoLinesIsFreeNilpotent) {
  auto line = *builtin_definition("line").presentation;
  PresentedDgla q = realize(free_product(line, line), 2);
  EXPECT_EQ(q.dgla.dim(), 3);
}

TEST(Presentation, FreeProductWithZeroIsIdentity) {
  auto h = *builtin_definition("heisenberg").presentation;
  EXPECT_EQ(realize(free_product(h, zero_presentation()), 3).dgla.dim(), 3);
}

TEST(Presentation, DisjointProductCarriesMcElement) {
  auto line = *builtin_definition("line").presentation;
  DglaPresentation p = disjoint_product(line, zero_presentation());
  ASSERT_TRUE(p.mc.has_value());
  for (int m = 1; m <= 5; ++m) {
    PresentedDgla q = realize(p, m);
    q.dgla.check_axioms();
    EXPECT_TRUE(is_mc(q.dgla, q.element(*p.mc)).ok) << "m = " << m;
  }
}

TEST(Presentation, SphereCarrierWithLineHasFourElementsInDegreeMinusOne) {
  PresentedDgla q = realize(free_product(sphere_presentation(), *builtin_definition("line").presentation), 4);
  EXPECT_EQ(q.dgla.space().dim(-1), 4);
}
