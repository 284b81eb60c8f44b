#pragma once

#include <string>
#include <vector>

#include "ratdg/sparse.hpp"

namespace ratdg {

// Finite-dimensional commutative associative unital algebra over Q,
// concentrated in degree 0. Axioms are checked on construction.
class FiniteCommutativeAlgebra {
 public:
  // table[i][j] = b_i * b_j
  FiniteCommutativeAlgebra(std::vector<std::string> labels,
                           std::vector<std::vector<Vec>> table, Vec unit);

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const Vec& unit() const { return unit_; }
  Vec mul(const Vec& a, const Vec& b) const;

  // Q^k with coordinatewise product; basis = coordinate idempotents.
  static FiniteCommutativeAlgebra product_of_fields(int k);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> table_;
  Vec unit_;
};

// Orthogonal primitive idempotents summing to 1, sorted by leading basis
// index. Throws NonSplitAlgebra unless the algebra is a product of copies
// of Q.
std::vector<Vec> idempotents(const FiniteCommutativeAlgebra& a);

// Distinct rational roots of a polynomial given by coefficients c[0..n]
// (c[i] multiplies X^i), ascending.
std::vector<Q> rational_roots(const std::vector<Q>& c);

}  // namespace ratdg
