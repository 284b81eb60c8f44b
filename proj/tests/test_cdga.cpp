#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "ratdg/cdga.hpp"
#include "ratdg/errors.hpp"
#include "ratdg/forms.hpp"

using namespace ratdg;

namespace {

int total(const std::map<int, int>& m) {
  int s = 0;
  for (const auto& [k, v] : m) s += v;
  return s;
}

Form random_form(std::mt19937& r, int n, int deg_bound) {
  Form f;
  for (int t = 0; t < 4; ++t) {
    Poly c = oracle::small_q(r);
    for (int i = 1; i <= n; ++i) {
      int e = std::uniform_int_distribution<int>(0, deg_bound)(r);
      for (int k = 0; k < e; ++k) c *= Poly::var(tvar(i));
    }
    Form term{c};
    for (int i = 1; i <= n; ++i)
      if (r() % 3 == 0) term = term * Form::dt(i);
    f += term;
  }
  return f;
}

}  // namespace

TEST(Cdga, BuildingBlocksSatisfyAxioms) {
  for (const auto& a : {FiniteCdga::ground(), FiniteCdga::product_of_fields(3), FiniteCdga::dual_numbers(),
                        FiniteCdga::square_zero(1), FiniteCdga::square_zero(2), omega_quotient(2, 2)})
    EXPECT_NO_THROW(a.check_axioms());
}

TEST(Cdga, NonCommutativeTableIsRejected) {
  GradedVectorSpace sp;
  sp.add("1", 0);
  sp.add("u", -1);
  // odd u with u^2 = 1 cannot be graded commutative
  EXPECT_THROW(FiniteCdga(sp, {{{0, 0}, unit_vec(0)}, {{0, 1}, unit_vec(1)}, {{1, 1}, unit_vec(0)}},
                          unit_vec(0), std::vector<Vec>(2)),
               AxiomViolation);
}

TEST(Cdga, ProductAndTensorHomologyFollowKunneth) {
  std::mt19937 r(11);
  for (int t = 0; t < 15; ++t) {
    FiniteCdga a = gen::random_cdga(r, 6), b = gen::random_cdga(r, 6);
    auto ha = homology(a.complex()).dims(), hb = homology(b.complex()).dims();
    FiniteCdga p = product(a, b), x = tensor(a, b);
    p.check_axioms();
    x.check_axioms();
    auto hp = homology(p.complex()).dims(), hx = homology(x.complex()).dims();
    for (int n = -6; n <= 6; ++n) {
      EXPECT_EQ(hp[n], ha[n] + hb[n]);
      int k = 0;
      for (int i = -6; i <= 6; ++i) k += ha[i] * hb[n - i];
      EXPECT_EQ(hx[n], k);
    }
  }
}

TEST(Cdga, OmegaQuotientIsAcyclicAboveConstants) {
  for (int n = 0; n <= 3; ++n)
    for (int D = 0; D <= 3; ++D) {
      auto h = homology(omega_quotient(n, D).complex()).dims();
      EXPECT_EQ(total(h), 1) << n << " " << D;
      EXPECT_EQ(h[0], 1);
    }
}

TEST(Cdga, LocalizationMatchesStableImageOfU) {
  std::mt19937 r(5);
  for (int t = 0; t < 25; ++t) {
    FiniteCdga a = gen::random_cdga(r);
    Vec u = gen::random_cocycle(r, a, 0);
    Localization loc = localize(a, u);
    loc.algebra.check_axioms();
    auto got = homology(loc.algebra.complex()).dims();
    auto want = oracle::localized_homology_dims(a, u);
    for (int n = -6; n <= 6; ++n) EXPECT_EQ(got[n], want[n]) << "trial " << t << " degree " << n;
    // the structure map is multiplicative and sends u to a unit
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        Vec img;
        for (const auto& [k, c] : a.mul_basis(i, j)) axpy(img, c, loc.map[k]);
        EXPECT_EQ(loc.algebra.mul(loc.map[i], loc.map[j]), img);
      }
    if (loc.algebra.dim() == 0) continue;
    Vec lu;
    for (const auto& [k, c] : u) axpy(lu, c, loc.map[k]);
    Matrix L(loc.algebra.dim(), loc.algebra.dim());
    for (int i = 0; i < loc.algebra.dim(); ++i) L.col[i] = loc.algebra.mul(lu, unit_vec(i));
    EXPECT_TRUE(solve(L, loc.algebra.unit()).has_value());
  }
}

TEST(Cdga, LocalizationRejectsOddAndNonCocycles) {
  FiniteCdga a = FiniteCdga::square_zero(1);
  EXPECT_THROW(localize(a, unit_vec(1)), OddDegreeUnit);
  FiniteCdga w = omega_quotient(1, 1);
  // the degree-0 coordinate function t is not closed
  EXPECT_THROW(localize(w, unit_vec(w.space().in_degree(0)[1])), NonCocycle);
}

TEST(Cdga, InvertingNilpotentGivesZero) {
  FiniteCdga a = FiniteCdga::square_zero(2);
  Localization loc = localize(a, unit_vec(1));
  EXPECT_EQ(loc.algebra.dim(), 0);
  EXPECT_EQ(localize(FiniteCdga::dual_numbers(), unit_vec(1)).algebra.dim(), 0);
}

TEST(Cdga, CellModelComputesLocalization) {
  FiniteCdga a = product(FiniteCdga::product_of_fields(2), FiniteCdga::square_zero(2));
  for (const Vec& u : {unit_vec(0), add(unit_vec(0), unit_vec(1)), unit_vec(2)}) {
    PolyCdga cell = localization_cell_model(a, u);
    auto got = cell.persistent_homology(4);
    auto want = oracle::localized_homology_dims(a, u);
    for (int n = -4; n <= 4; ++n) EXPECT_EQ(got[n], want[n]) << n;
  }
}

TEST(Cdga, SplitOfProductOfFields) {
  for (int k = 1; k <= 4; ++k) {
    FiniteCdga a = FiniteCdga::product_of_fields(k);
    auto parts = idempotent_split(a);
    ASSERT_EQ(static_cast<int>(parts.size()), k);
    Vec sum;
    for (const auto& p : parts) {
      EXPECT_EQ(p.factor.algebra.dim(), 1);
      EXPECT_EQ(a.mul(p.idempotent, p.idempotent), p.idempotent);
      sum = add(sum, p.idempotent);
    }
    EXPECT_EQ(sum, a.unit());
  }
}

TEST(Cdga, SplitSeesOnlyCohomology) {
  // Q^2 x square_zero(2) has H^0 = Q^3 and the factor with u keeps it
  FiniteCdga a = product(FiniteCdga::product_of_fields(2), FiniteCdga::square_zero(2));
  auto parts = idempotent_split(a);
  ASSERT_EQ(parts.size(), 3u);
  int dims = 0;
  for (const auto& p : parts) dims += p.factor.algebra.dim();
  EXPECT_EQ(dims, 4);
  EXPECT_THROW(idempotent_split(FiniteCdga::dual_numbers()), NonSplitAlgebra);
  EXPECT_TRUE(idempotent_split(FiniteCdga::terminal()).empty());
}

TEST(Cdga, DerivationsOfSmallAlgebras) {
  EXPECT_TRUE(derivations_report(FiniteCdga::product_of_fields(2)).empty());
  auto sz = derivations_report(FiniteCdga::square_zero(3));
  EXPECT_EQ(sz, (std::map<int, int>{{3, 1}}));
  EXPECT_THROW(derivations_report(FiniteCdga::terminal()), NoAugmentation);
}

TEST(Cdga, PathObjectEvaluationsAreChainMaps) {
  std::mt19937 r(3);
  FiniteCdga D = omega_quotient(1, 2);
  PathObject P = path_object(D);
  for (int t = 0; t < 20; ++t) {
    PolyCdga::Elem e;
    for (int k = 0; k < 3; ++k) {
      Vec b = unit_vec(std::uniform_int_distribution<int>(0, D.dim() - 1)(r), oracle::small_q(r));
      PolyCdga::Elem m = P.cdga.mul(P.include(b), P.cdga.gen_power(0, std::uniform_int_distribution<int>(0, 3)(r)));
      if (r() % 2) m = P.cdga.mul(m, P.cdga.gen(1));
      PolyCdga::add_into(e, m);
    }
    for (int at : {0, 1}) EXPECT_EQ(P.eval(P.cdga.d(e), at), D.d(P.eval(e, at)));
  }
  Vec v = unit_vec(1);
  EXPECT_EQ(P.eval(P.include(v), 0), v);
  EXPECT_EQ(P.eval(P.include(v), 1), v);
}

TEST(Forms, DifferentialSquaresToZeroAndIsADerivation) {
  std::mt19937 r(9);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 3;
    Form a = random_form(r, n, 2), b = random_form(r, n, 2);
    EXPECT_TRUE(a.d().d().is_zero());
    // Leibniz on homogeneous pieces
    for (const auto& [mask, f] : a.parts()) {
      Form ah;
      ah.add(mask, f);
      int sign = __builtin_popcount(mask) % 2 ? -1 : 1;
      EXPECT_EQ((ah * b).d(), ah.d() * b + (ah * b.d()).scaled(Poly(Q(sign))));
    }
  }
}

TEST(Forms, PullbackCommutesWithDAndSimplicialIdentities) {
  std::mt19937 r(10);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    Form w = random_form(r, n, 2);
    for (int j = 0; j <= n; ++j) {
      auto f = face_images(n, j);
      EXPECT_EQ(w.pullback(f).d(), w.d().pullback(f));
    }
    for (int j = 0; j <= n; ++j) {
      auto s = degeneracy_images(n, j);
      EXPECT_EQ(w.pullback(s).d(), w.d().pullback(s));
      // sigma_j delta_j = sigma_j delta_{j+1} = id
      EXPECT_EQ(w.pullback(s).pullback(face_images(n + 1, j)), w);
      EXPECT_EQ(w.pullback(s).pullback(face_images(n + 1, j + 1)), w);
    }
  }
}

TEST(Forms, DeRhamTruncationIsAComplex) {
  for (int n = 0; n <= 3; ++n) {
    DeRhamForms f(n, 3);
    auto h = homology(f.complex()).dims();
    EXPECT_EQ(total(h), 1);
    for (int i = 0; i < f.size(); ++i) EXPECT_EQ(f.coordinates(f.basis_form(i)), unit_vec(i));
  }
}
