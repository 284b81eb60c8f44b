#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ratdg/ce_harrison.hpp"
#include "ratdg/definitions.hpp"

using namespace ratdg;

namespace {

// weight -> degree -> dim, flattened to totals per degree
std::map<int, int> by_degree(const std::map<std::pair<int, int>, int>& t) {
  std::map<int, int> out;
  for (const auto& [k, v] : t) out[k.second] += v;
  return out;
}

}  // namespace

TEST(CE, DifferentialSquaresToZero) {
  for (const char* name : {"heisenberg", "sphere", "four_cell", "line"}) {
    CEAlgebra c = chevalley_eilenberg(*builtin_definition(name).dgla);
    for (size_t k = 0; k < c.cdga.gens().size(); ++k) {
      auto dd = c.cdga.d(c.cdga.d(c.cdga.gen(static_cast<int>(k))));
      EXPECT_TRUE(dd.empty()) << name << " generator " << k;
    }
  }
}

TEST(CE, HeisenbergMatchesClassicalCochains) {
  Dgla g = *builtin_definition("heisenberg").dgla;
  auto table = ce_weight_table(g, 4, 3);
  auto brute = oracle::ce_bruteforce(g);
  std::map<std::pair<int, int>, int> want;
  for (const auto& [w, byk] : brute)
    for (const auto& [k, d] : byk) want[{w, k}] = d;
  EXPECT_EQ(table, want);
  auto tot = by_degree(table);
  EXPECT_EQ(tot[1], 2);
  EXPECT_EQ(tot[2], 2);
  EXPECT_EQ(tot[3], 1);
}

TEST(CE, RandomNilpotentAlgebrasMatchClassicalCochains) {
  // brackets respect the weight grading, so the algebra is nilpotent
  std::mt19937 r(21);
  for (int t = 0; t < 12; ++t) {
    int n = 3 + t % 3;
    GradedVectorSpace sp;
    std::vector<int> w;
    for (int i = 0; i < n; ++i) {
      sp.add("e" + std::to_string(i), 0);
      w.push_back(i < 2 ? 1 : i);
    }
    Dgla::BracketTable br;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (w[k] == w[i] + w[j] && r() % 2) br[{i, j}] = from_terms({{k, oracle::small_q(r)}});
    Dgla g;
    try {
      g = Dgla(sp, br, std::vector<Vec>(n), w);
    } catch (const AxiomViolation&) {
      continue;  // Jacobi failed for this draw
    }
    int total_w = 0;
    for (int x : w) total_w += x;
    auto table = ce_weight_table(g, total_w, n);
    auto brute = oracle::ce_bruteforce(g);
    std::map<std::pair<int, int>, int> want;
    for (const auto& [wt, byk] : brute)
      for (const auto& [k, d] : byk) want[{wt, k}] = d;
    EXPECT_EQ(table, want) << "trial " << t;
  }
}

TEST(CE, WindowFlagsExactness) {
  Dgla g = *builtin_definition("line").dgla;
  CEReport rep = ce_cohomology(g, 3, 0, 3);
  EXPECT_EQ(rep.degrees[1].dim, 1);
  EXPECT_EQ(rep.degrees[2].dim, 0);
  EXPECT_TRUE(rep.degrees[2].exact);
  EXPECT_FALSE(rep.degrees[3].exact);
  // negative degrees are never flagged exact
  CEReport s = ce_cohomology(sphere_dgla(), 2, 0, 2);
  for (const auto& [n, c] : s.degrees) EXPECT_FALSE(c.exact);
}

TEST(Harrison, TwoPointAlgebraGivesTheSphereDgla) {
  FiniteCdga qq = FiniteCdga::product_of_fields(2);
  for (int m = 1; m <= 4; ++m) {
    PresentedDgla h = harrison(qq, m);
    PresentedDgla s = realize(sphere_presentation(), m);
    TensorPoly y{{letter(0), Q(1)}};
    EXPECT_TRUE(check_morphism(s, h, {y}).ok()) << m;
  }
}

TEST(Harrison, SquareZeroClassGivesAbelianLine) {
  for (int c : {1, 2, 3}) {
    PresentedDgla h = harrison(FiniteCdga::square_zero(c), 3);
    EXPECT_EQ(h.dgla.dim(), c % 2 ? 1 : 2) << c;  // odd y has [y,y] != 0
    EXPECT_EQ(h.dgla.degree(0), c - 1);
  }
  EXPECT_THROW(harrison_presentation(FiniteCdga::terminal()), NoAugmentation);
}

TEST(Harrison, FreeProductAddsCohomology) {
  auto line = *builtin_definition("line").presentation;
  auto plane = *builtin_definition("abelian:2:0").presentation;
  FreeProductReport rep = compare_free_product(line, plane, 4, 4);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.cells.empty());
}

TEST(Dictionary, McElementsAreExactlyDgMaps) {
  auto def = builtin_definition("f_xa");
  PresentedDgla real = realize(*def.presentation, 3);
  const Dgla& g = real.dgla;
  Vec x = real.generators[1];
  auto good = mc_augmentation_dictionary(g, x, 2);
  EXPECT_TRUE(good.is_mc);
  EXPECT_TRUE(good.dg_map);
  EXPECT_TRUE(good.phi_chain_map);
  EXPECT_TRUE(good.triangle);
  auto bad = mc_augmentation_dictionary(g, scaled(x, 3), 2);
  EXPECT_FALSE(bad.is_mc);
  EXPECT_FALSE(bad.dg_map);
  EXPECT_FALSE(bad.witness.empty());
  auto zero = mc_augmentation_dictionary(g, {}, 2);
  EXPECT_TRUE(zero.dg_map);
}

TEST(Dictionary, EvaluationIsMultiplicative) {
  Dgla g = sphere_dgla();
  CEAlgebra c = chevalley_eilenberg(g);
  Vec xi = unit_vec(0, Q(2, 3));
  std::mt19937 r(1);
  for (int t = 0; t < 10; ++t) {
    int a = std::uniform_int_distribution<int>(0, 3)(r), b = std::uniform_int_distribution<int>(0, 3)(r);
    auto fa = c.cdga.gen_power(0, a), fb = c.cdga.gen_power(0, b);
    EXPECT_EQ(evaluate_at(c, xi, c.cdga.mul(fa, fb)), evaluate_at(c, xi, fa) * evaluate_at(c, xi, fb));
  }
}
