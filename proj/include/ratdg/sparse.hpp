#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ratdg/rational.hpp"

namespace ratdg {

// Sparse vector: strictly increasing indices, no stored zeros.
using Vec = std::vector<std::pair<int, Q>>;

Q coeff(const Vec& v, int idx);
// y += a * x
void axpy(Vec& y, const Q& a, const Vec& x);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, const Q& a);
Vec unit_vec(int idx, const Q& c = 1);
// Builds a Vec from unsorted (idx, coeff) pairs, summing duplicates.
Vec from_terms(std::vector<std::pair<int, Q>> terms);
bool is_zero(const Vec& v);

// Columns are images of source basis vectors.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Vec> col;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), col(c) {}
  Vec apply(const Vec& x) const;
  Matrix transpose() const;
  Matrix compose(const Matrix& rhs) const;  // this * rhs
  bool is_zero() const;
  static Matrix identity(int n);
};

// Incremental row echelon form. Every stored row has leading coefficient 1
// at its pivot; pivots are processed in increasing index order, so the
// reduction of a vector is deterministic.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  // Reduces v against the stored rows. If `combo` is given (tracking mode),
  // it receives the combination of inserted vectors that was subtracted.
  Vec reduce(Vec v, Vec* combo = nullptr) const;
  // Inserts v (with identifier id for tracking). Returns true when v was
  // independent of the rows already present.
  bool insert(Vec v, int id = -1);
  int rank() const { return static_cast<int>(rows_.size()); }
  bool contains(const Vec& v) const { return ratdg::is_zero(reduce(v)); }

  // Back-substitutes so every row is zero at the other pivots.
  void make_reduced();
  bool reduced() const { return reduced_; }

  const std::map<int, Vec>& rows() const { return rows_; }
  const std::map<int, Vec>& combos() const { return combos_; }

  // For a vector known to lie in the row span of a reduced echelon,
  // coefficients against the tracked inserted vectors.
  Vec coordinates(const Vec& v) const;

 private:
  bool track_;
  bool reduced_ = true;
  std::map<int, Vec> rows_;    // pivot -> row
  std::map<int, Vec> combos_;  // pivot -> combination of inserted ids
};

int rank(const Matrix& m);
// Basis of the kernel of m, in reduced form: one vector per free column,
// with the free column's coefficient equal to 1.
std::vector<Vec> kernel_basis(const Matrix& m);
// Echelon basis of the column span.
std::vector<Vec> image_basis(const Matrix& m);
// Some x with m x = b, choosing free variables zero (leftmost pivots).
std::optional<Vec> solve(const Matrix& m, const Vec& b);

}  // namespace ratdg
