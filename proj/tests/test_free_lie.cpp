#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ratdg/errors.hpp"
#include "ratdg/free_lie.hpp"

using namespace ratdg;

namespace {

Vec random_elem(std::mt19937& r, int dim, int degree, const FreeLie& L) {
  Vec v;
  for (int i = 0; i < dim; ++i)
    if (L.degree(i) == degree && r() % 2) axpy(v, oracle::small_q(r), unit_vec(i));
  return v;
}

}  // namespace

TEST(FreeLie, CountsMatchBruteForceSpanOnSmallSets) {
  std::vector<GeneratorSet> sets = {
      {{"x", -1, 1}},
      {{"a", 0, 1}, {"x", -1, 1}},
      {{"a", 0, 1}, {"b", 0, 1}},
      {{"u", 1, 1}, {"v", 2, 1}, {"w", -1, 1}},
  };
  for (const auto& g : sets) {
    FreeLie L(g, 4);
    auto brute = oracle::lie_dims(g, 4);
    EXPECT_EQ(L.cell_dims(), brute);
    EXPECT_EQ(basis_counts(g, 4), brute);
  }
}

TEST(FreeLie, OddSquareSurvivesAndTripleVanishes) {
  FreeLie L({{"x", -1, 1}}, 5);
  EXPECT_EQ(L.size(), 2);  // x and [x,x]
  EXPECT_TRUE(L.bracket_basis(0, 1).empty());
}

TEST(FreeLie, AntisymmetryAndJacobiOnRandomElements) {
  GeneratorSet g{{"a", 0, 1}, {"x", -1, 1}, {"y", 1, 1}};
  FreeLie L(g, 5);
  std::mt19937 r(9);
  for (int t = 0; t < 30; ++t) {
    int da = static_cast<int>(r() % 3) - 1, db = static_cast<int>(r() % 3) - 1,
        dc = static_cast<int>(r() % 3) - 1;
    Vec a = random_elem(r, L.size(), da, L), b = random_elem(r, L.size(), db, L),
        c = random_elem(r, L.size(), dc, L);
    Vec ab = L.bracket(a, b), ba = L.bracket(b, a);
    EXPECT_EQ(ab, scaled(ba, -parity_sign(static_cast<long>(da) * db)));
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    Vec lhs = L.bracket(a, L.bracket(b, c));
    Vec rhs = add(L.bracket(ab, c), scaled(L.bracket(b, L.bracket(a, c)), parity_sign(static_cast<long>(da) * db)));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(FreeLie, TensorRoundTrip) {
  GeneratorSet g{{"a", 0, 1}, {"x", -1, 1}};
  FreeLie L(g, 4);
  for (int i = 0; i < L.size(); ++i) EXPECT_EQ(L.from_tensor(L.to_tensor(unit_vec(i))), unit_vec(i));
}

TEST(FreeLie, NonLieTensorIsRejected) {
  GeneratorSet g{{"a", 0, 1}, {"b", 0, 1}};
  FreeLie L(g, 3);
  TensorPoly ab{{letter(0) + letter(1), Q(1)}};
  EXPECT_THROW(L.from_tensor(ab), AxiomViolation);
}
