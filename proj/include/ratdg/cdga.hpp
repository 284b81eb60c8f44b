#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/dgla.hpp"
#include "ratdg/finite_algebra.hpp"
#include "ratdg/forms.hpp"
#include "ratdg/graded.hpp"

namespace ratdg {

// Finite cdga given by a multiplication table. Degrees are homological
// (cohomological degree c is stored as -c). The zero algebra (dim 0, unit
// 0) is allowed and is the terminal object.
class FiniteCdga {
 public:
  using Table = std::map<std::pair<int, int>, Vec>;

  FiniteCdga() = default;
  // `table` lists b_i b_j for i <= j (or both orders, checked for graded
  // commutativity); absent entries are zero.
  FiniteCdga(GradedVectorSpace space, const Table& table, Vec unit, std::vector<Vec> d,
             std::optional<Vec> augmentation = std::nullopt, bool check = true);

  const GradedVectorSpace& space() const { return space_; }
  int dim() const { return space_.size(); }
  int degree(int i) const { return space_.degree(i); }
  const Vec& unit() const { return unit_; }
  const std::vector<Vec>& differential() const { return d_; }
  // Augmentation as a functional: its value on b_i is coeff(aug, i).
  const std::optional<Vec>& augmentation() const { return aug_; }

  Vec mul_basis(int i, int j) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec d(const Vec& v) const;
  Q augment(const Vec& v) const;
  ChainComplex complex() const { return ChainComplex(space_, d_); }
  Table table() const;
  void check_axioms() const;

  FiniteCdga with_augmentation(const Vec& aug) const;

  static FiniteCdga ground();                    // Q
  static FiniteCdga product_of_fields(int k);    // Q^k, augmented at the last factor
  static FiniteCdga dual_numbers();              // Q[e]/e^2 in degree 0
  static FiniteCdga terminal();                  // 0
  // Q + Q u with u^2 = 0, u in cohomological degree c, augmented by u -> 0
  static FiniteCdga square_zero(int c);

 private:
  GradedVectorSpace space_;
  std::vector<std::vector<std::pair<int, Vec>>> rows_;  // sparse table per i
  Vec unit_;
  std::vector<Vec> d_;
  std::optional<Vec> aug_;
};

// A x B; the augmentation (if B has one) factors through the projection to B.
FiniteCdga product(const FiniteCdga& a, const FiniteCdga& b);
FiniteCdga tensor(const FiniteCdga& a, const FiniteCdga& b);
// Same algebra in a new basis: columns of `basis` (invertible, degree
// preserving) become the new basis vectors.
FiniteCdga change_basis(const FiniteCdga& a, const std::vector<Vec>& basis);

// Cohomology as a finite graded-commutative algebra (zero differential),
// basis = chosen representatives; `classes` maps cocycles to coordinates.
struct CohomologyAlgebra {
  FiniteCdga algebra;
  std::vector<Vec> representatives;
  // coordinates of the class of a cocycle
  std::function<Vec(const Vec&)> classes;
};
CohomologyAlgebra cohomology_algebra(const FiniteCdga& a);

// Degree-0 part of cohomology as an ungraded commutative algebra.
FiniteCommutativeAlgebra h0_algebra(const CohomologyAlgebra& h);

struct Localization {
  FiniteCdga algebra;        // A[u^-1]
  std::vector<Vec> map;      // images of basis vectors of A
  Vec idempotent;            // e with A[u^-1] = eA
};
// Stable colimit of A -u-> A -u-> ... for a finite table. Throws
// OddDegreeUnit, NonCocycle, DegreeMismatch for inhomogeneous u.
Localization localize(const FiniteCdga& a, const Vec& u);

struct SplitFactor {
  Vec idempotent;            // a cocycle representing a primitive idempotent
  Localization factor;
};
std::vector<SplitFactor> idempotent_split(const FiniteCdga& a);

// Per-degree dims (homological) of H((I/I^2)^*), dual degrees negated.
std::map<int, int> derivations_report(const FiniteCdga& a);

// Free graded-commutative algebra over a finite base cdga B on generators
// with homological degrees; exact arithmetic, no truncation of products.
class PolyCdga {
 public:
  struct Gen {
    std::string name;
    int degree = 0;
  };
  // key: (base basis index, monomial in generators)
  using Elem = std::map<std::pair<int, Mono>, Q>;

  PolyCdga(FiniteCdga base, std::vector<Gen> gens);
  void set_differential(int gen, Elem value);

  const FiniteCdga& base() const { return base_; }
  const std::vector<Gen>& gens() const { return gens_; }
  Elem one() const;
  Elem gen(int k) const;
  Elem gen_power(int k, int e) const;
  Elem from_base(const Vec& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem d(const Elem& a) const;
  static void add_into(Elem& acc, const Elem& x, const Q& c = 1);
  int mono_degree(const Mono& m) const;
  static int word_length(const Mono& m);

  // Basis b_i (x) monomial with word length <= K.
  struct Truncation {
    GradedVectorSpace space;
    std::vector<std::pair<int, Mono>> keys;
    std::map<std::pair<int, Mono>, int> index;
  };
  Truncation truncation(int K) const;
  // The span of word length <= K must be a subcomplex (throws otherwise).
  ChainComplex complex(const Truncation& t) const;
  Vec coordinates(const Truncation& t, const Elem& e) const;
  // Dims of the image of H(length <= K-1) -> H(length <= K); classes born
  // at the truncation edge are excluded.
  std::map<int, int> persistent_homology(int K) const;
  std::string to_string(const Elem& e) const;

 private:
  FiniteCdga base_;
  std::vector<Gen> gens_;
  std::vector<Elem> dgen_;
};

// D[t,dt] = D (x) Q[t,dt] with evaluations at 0 and 1 and the inclusion.
struct PathObject {
  PolyCdga cdga;
  // evaluation maps to D and inclusion of D, as functions on elements
  Vec eval(const PolyCdga::Elem& e, int at) const;
  PolyCdga::Elem include(const Vec& v) const;
};
PathObject path_object(const FiniteCdga& D);

// A[y,z] with dz = u y - 1, dy = 0; |y| = -|u| and |z| = 1 homologically.
// Throws OddDegreeUnit / NonCocycle.
PolyCdga localization_cell_model(const FiniteCdga& a, const Vec& u);

// g (x) Omega(Delta^n)/(total degree > D): an honest finite dgla.
struct TensorDglaForms {
  Dgla dgla;
  DeRhamForms forms;
  // index of e_i (x) form_j
  int index(int i, int j) const { return i * forms.size() + j; }
};
TensorDglaForms tensor_dgla_forms(const Dgla& g, int n, int D, bool check = true);

// Omega(Delta^n)/(total degree > D) as a finite cdga.
FiniteCdga omega_quotient(int n, int D);

}  // namespace ratdg
