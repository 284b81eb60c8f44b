#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ratdg/graded.hpp"

namespace ratdg {

// Finite dgla given by structure constants. Homological grading, d of
// degree -1. Optional weights (all >= 1) witness nilpotence: brackets must
// land in weight >= w_i + w_j and d must not lower weight.
class Dgla {
 public:
  using BracketTable = std::map<std::pair<int, int>, Vec>;

  Dgla() = default;  // the zero dgla
  // `brackets` may list (i,j) and/or (j,i); both must agree with graded
  // antisymmetry. Throws AxiomViolation / DegreeMismatch when check is set.
  Dgla(GradedVectorSpace space, const BracketTable& brackets, std::vector<Vec> d,
       std::vector<int> weights = {}, bool check = true);

  const GradedVectorSpace& space() const { return space_; }
  int dim() const { return space_.size(); }
  int degree(int i) const { return space_.degree(i); }
  const std::string& label(int i) const { return space_.label(i); }

  const Vec& d_basis(int i) const { return d_.at(i); }
  const std::vector<Vec>& differential() const { return d_; }
  Vec d(const Vec& v) const;
  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& u, const Vec& v) const;
  // All nonzero [e_i, e_j] with i <= j.
  BracketTable bracket_table() const;

  bool has_weights() const { return !weights_.empty(); }
  const std::vector<int>& weights() const { return weights_; }
  int max_weight() const;

  // Runs the full axiom suite; throws on the first failure.
  void check_axioms() const;
  ChainComplex complex() const { return ChainComplex(space_, d_); }

  // Distinguished MC element carried by disjoint products.
  std::optional<Vec> mc_element;

 private:
  GradedVectorSpace space_;
  std::unordered_map<long long, Vec> br_;  // key i*n+j, i <= j
  std::vector<Vec> d_;
  std::vector<int> weights_;
};

Dgla sphere_dgla();
// Abelian dgla with the given basis degrees and differential.
Dgla abelian_dgla(const GradedVectorSpace& space, std::vector<Vec> d);

struct McCheck {
  bool ok = false;
  Vec residual;  // d xi + 1/2 [xi, xi]
};
McCheck is_mc(const Dgla& g, const Vec& xi);

// Differential replaced by y -> dy + [xi, y] (ad of xi is a derivation, so
// this squares to zero). Throws NotMaurerCartan.
Dgla twist(const Dgla& g, const Vec& xi);

struct ConnectedCover {
  Dgla cover;
  std::vector<Vec> inclusion;  // images of cover basis vectors in g
};
ConnectedCover connected_cover(const Dgla& g);

HomologyReport homology(const Dgla& g);

// Upper bound c with every bracket of c+1 elements zero; throws NotNilpotent.
int nilpotency_bound(const Dgla& g);

// exp(a) . xi = e^{ad a} xi - sum_k ad_a^k (da) / (k+1)!
Vec gauge_act(const Dgla& g, const Vec& a, const Vec& xi);
// log(exp(a) exp(b)) for degree-0 a, b.
Vec bch(const Dgla& g, const Vec& a, const Vec& b);

}  // namespace ratdg
