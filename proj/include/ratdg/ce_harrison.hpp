#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/cdga.hpp"
#include "ratdg/dgla.hpp"
#include "ratdg/presentation.hpp"

namespace ratdg {

// C(g) as an exact free graded-commutative algebra on w_k, the dual of
// e_k shifted: |w_k| = -|e_k| - 1 homologically. d is read off from the
// universal element sum e_k (x) w_k being Maurer-Cartan:
//   (-1)^{|e_k|} d w_k = -sum_i D^k_i w_i - 1/2 sum_{i,j} (-1)^{|w_i||e_j|} B^k_{ij} w_i w_j
// where d e_i = sum_k D^k_i e_k and [e_i, e_j] = sum_k B^k_{ij} e_k.
struct CEAlgebra {
  Dgla g;
  PolyCdga cdga;
  std::vector<int> weights;  // weight of w_k (1 if g has none)
};
CEAlgebra chevalley_eilenberg(const Dgla& g);

struct CECell {
  int dim = 0;
  bool exact = false;   // no monomial needed for this degree was truncated
  bool stable = false;  // agrees with word length P + 1
};

// Reduced CE cohomology C_+(g)/(word length > P), cohomological degrees
// lo..hi. Exactness needs g non-negatively graded and P > degree.
struct CEReport {
  int P = 0;
  std::map<int, CECell> degrees;
};
CEReport ce_cohomology(const Dgla& g, int P, int lo, int hi, long cap = 400000);

// Per (weight, cohomological degree) dims of H(C_+(g)) for a weight-graded
// g, weights 1..max_weight. Each weight block is finite and exact.
std::map<std::pair<int, int>, int> ce_weight_table(const Dgla& g, int max_weight, int P,
                                                   long cap = 400000);

// Harrison complex: the free Lie algebra on y_a, one per basis vector of
// the augmentation ideal, |y_a| = -|a| - 1, with
//   d y_c = -sum_a (-1)^{|y_a|} delta^c_a y_a
//           - 1/2 sum_{a,b} (-1)^{|a||y_b|} mu^c_{ab} [y_a, y_b].
// The ideal basis is b_i - eps(b_i)/eps(b_p) b_p for i != p, p the first
// index where eps is nonzero.
DglaPresentation harrison_presentation(const FiniteCdga& a);
PresentedDgla harrison(const FiniteCdga& a, int m, int cap = kDefaultBasisCap);

struct FreeProductCell {
  int weight = 0;
  int degree = 0;  // cohomological
  int product = 0; // H(C_+(g * h))
  int sum = 0;     // H(C_+(g)) + H(C_+(h))
  bool equal() const { return product == sum; }
};
struct FreeProductReport {
  int m = 0;
  std::vector<FreeProductCell> cells;  // weights < m
  bool ok() const {
    for (const auto& c : cells)
      if (!c.equal()) return false;
    return true;
  }
};
FreeProductReport compare_free_product(const DglaPresentation& g, const DglaPresentation& h, int m,
                                       int P, int cap = kDefaultBasisCap);

// Evaluation at xi and the shift w_k -> w_k + xi_k, checked on every
// monomial of word length <= P.
struct McAugmentation {
  bool is_mc = false;
  bool dg_map = false;           // eps_xi o d = 0
  std::string witness;           // a monomial where eps_xi o d fails
  bool phi_chain_map = false;    // phi o d = d^xi o phi
  bool triangle = false;         // eps_0 o phi = eps_xi
  long monomials_checked = 0;
};
McAugmentation mc_augmentation_dictionary(const Dgla& g, const Vec& xi, int P);

// Q-valued evaluation w_k -> xi_k on C(g); zero on nonzero degrees.
Q evaluate_at(const CEAlgebra& c, const Vec& xi, const PolyCdga::Elem& f);

}  // namespace ratdg
