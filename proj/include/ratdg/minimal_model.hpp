#pragma once

#include <vector>

#include "ratdg/cdga.hpp"
#include "ratdg/dgla.hpp"

namespace ratdg {

// Contraction of g onto a chosen copy of its homology:
// p i = id, d h + h d = i p - 1, h i = 0, p h = 0, h h = 0.
struct Contraction {
  GradedVectorSpace homology;   // basis h_k with labels from representatives
  std::vector<Vec> inclusion;   // i(h_k) in g
  std::vector<Vec> projection;  // p(e_j) in H
  std::vector<Vec> homotopy;    // h(e_j) in g, degree +1
};
Contraction contraction(const Dgla& g);

// Transferred structure on H(g) up to arity N, written dually: a free
// graded-commutative algebra on t_k (|t_k| = -|h_k| - 1) whose differential
// is read off from the transferred curvature F(x) = p(1/2 [Phi, Phi]),
// Phi = i(x) + h(1/2 [Phi, Phi]), x = sum h_k (x) t_k. Terms of polynomial
// degree > N are discarded.
struct MinimalModel {
  Contraction data;
  int arity = 0;
  Dgla::BracketTable l2;                    // p[i a, i b] on H
  std::vector<PolyCdga::Elem> curvature;    // F_k, one per H basis vector
  PolyCdga dual;                            // d t_k = -(-1)^{|h_k|} F_k
  bool linear_part_zero = false;
  bool relations_hold = false;   // d^2 t_k = 0 up to polynomial degree N
  bool quasi_iso = false;        // i is injective on homology classes
  // true when every F_k is purely quadratic
  bool higher_arity_zero() const;
};
MinimalModel minimal_model(const Dgla& g, int N);

}  // namespace ratdg
