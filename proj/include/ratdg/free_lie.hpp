#pragma once

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "ratdg/graded.hpp"
#include "ratdg/tensor_words.hpp"

namespace ratdg {

constexpr int kDefaultBasisCap = 20000;

// Free graded Lie algebra on `gens`, modulo brackets of weight > m (weight
// of a monomial = sum of its generator weights, by default the leaf count).
// Basis: standard bracketings of Lyndon words plus squares [l,l] of odd
// Lyndon elements, ordered by (weight, word). Elements are realized inside
// the tensor algebra, which is how brackets are re-expanded.
// Not thread-safe: the bracket cache is filled lazily.
class FreeLie {
 public:
  struct Element {
    int gen = -1;          // >= 0 for generators
    int left = -1, right = -1;
    int weight = 0;
    int degree = 0;
    Word key;              // Lyndon word, or l+l for squares
    std::string label;
    TensorPoly tensor;
  };

  FreeLie(GeneratorSet gens, int m, int cap = kDefaultBasisCap);

  const GeneratorSet& generators() const { return gens_; }
  int max_weight() const { return m_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const Element& element(int i) const { return elems_.at(i); }
  int weight(int i) const { return elems_.at(i).weight; }
  int degree(int i) const { return elems_.at(i).degree; }
  const GradedVectorSpace& space() const { return space_; }
  // -1 when the generator's own weight exceeds m
  int generator_index(int gen) const { return gen_index_.at(gen); }
  // (weight, degree) -> number of basis elements
  std::map<std::pair<int, int>, int> cell_dims() const;

  // Coordinates of a Lie polynomial given in tensor form. Words of weight
  // > m are dropped first. With check = true a non-Lie input throws
  // AxiomViolation.
  Vec from_tensor(const TensorPoly& p, bool check = true) const;
  TensorPoly to_tensor(const Vec& v) const;

  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& u, const Vec& v) const;

 private:
  struct Cell {
    Echelon ech{true};
  };
  GeneratorSet gens_;
  int m_;
  std::vector<Element> elems_;
  std::vector<int> gen_index_;
  GradedVectorSpace space_;
  std::unordered_map<Word, int> column_;
  std::map<std::pair<int, int>, Cell> cells_;
  mutable std::unordered_map<long long, Vec> cache_;
};

// Basis sizes per (weight, degree) without building the tensor images.
std::map<std::pair<int, int>, int> basis_counts(const GeneratorSet& gens, int m);

// Images of all basis elements of L under the Lie map sending generator k
// to gen_images[k]; `bracket` is the target bracket.
std::vector<Vec> extend_lie_map(const FreeLie& L, const std::vector<Vec>& gen_images,
                                const std::function<Vec(const Vec&, const Vec&)>& bracket);

// Quotient of a truncated free Lie algebra by the ideal generated by
// relations (and closed under an optional differential). Pivots of the
// ideal are taken at the lowest basis index, i.e. lowest weight, so the
// surviving basis elements give a weight filtration of the quotient.
class LieQuotient {
 public:
  LieQuotient(std::shared_ptr<const FreeLie> lie, const std::vector<Vec>& relations,
              const std::function<Vec(const Vec&)>& d = nullptr);

  const FreeLie& lie() const { return *lie_; }
  std::shared_ptr<const FreeLie> lie_ptr() const { return lie_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int representative(int q) const { return basis_.at(q); }
  const Echelon& ideal() const { return ideal_; }
  Vec project(const Vec& free_vec) const;
  Vec lift(const Vec& q) const;

 private:
  std::shared_ptr<const FreeLie> lie_;
  Echelon ideal_;
  std::vector<int> basis_;
  std::vector<int> position_;
};

}  // namespace ratdg
