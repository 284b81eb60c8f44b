#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ratdg/cdga.hpp"
#include "ratdg/dgla.hpp"
#include "ratdg/presentation.hpp"

namespace ratdg {

// MC equation for xi = sum e (x) U_e in g (x) Omega(Delta^n), written in the
// free graded-commutative algebra on U_e (form degree p = |e| + 1) and dU_e.
// Ring generator 2u is U of unknown u, 2u + 1 is dU. Monomials of form
// degree > n vanish.
struct McUnknown {
  int element = 0;      // basis index in g
  int form_degree = 0;
  int weight = 1;
  std::string name;
};

struct McEquation {
  int component = 0;    // basis index e_k, |e_k| = q - 2
  int form_degree = 0;  // q
  PolyCdga::Elem lhs;
};

struct McSystem {
  Dgla g;
  int n = 0;
  std::vector<McUnknown> unknowns;
  PolyCdga ring;
  std::vector<McEquation> equations;  // nonzero ones only

  std::string to_string(const PolyCdga::Elem& e) const;
  // Scaled so the first lowest-length term has coefficient 1.
  std::string equation_text(const McEquation& eq) const;
  std::vector<std::string> texts() const;
};

// Unknowns are basis elements with 0 <= |e| + 1 <= n and, if
// max_unknown_weight >= 0, weight <= max_unknown_weight.
McSystem derive_constraints(const Dgla& g, int n, int max_unknown_weight = -1);

// Drops monomials of form degree > n.
PolyCdga::Elem truncate_forms(const PolyCdga& ring, const PolyCdga::Elem& e, int n);

struct McFamily {
  // value of every unknown, as an expression in the free unknowns
  std::vector<PolyCdga::Elem> values;
  std::vector<int> free;       // unknowns left as parameters
  std::set<int> constant;      // free 0-forms forced constant
  std::set<int> closed;        // free p-forms (p >= 1) forced closed
  std::vector<PolyCdga::Elem> residual;  // equations no rule could settle
  bool complete = true;
  std::vector<std::string> log;
};

struct McSolution {
  std::vector<McFamily> families;
  bool complete = true;
  std::string certificate;
};

// Rule-based elimination: constants from d alpha = 0 on 0-forms, rational
// roots of univariate equations, linear elimination (highest weight
// unknown first), and branching on a common factor (Omega^0 is a domain,
// Omega^p torsion free). Anything left over makes the family incomplete.
McSolution solve_structured(const McSystem& s, int max_branches = 4096);

// n = 0: the point of g for given values of the free unknowns.
Vec instantiate(const McSystem& s, const McFamily& f, const std::map<int, Q>& params);

// MC elements of the weight-m truncation of a presented dgla. Unknowns have
// weight <= m and the algebra is realized at max(2m, m + delta), delta the
// largest weight jump of d on generators, so every product of unknowns is
// computed without truncation.
struct McVertices {
  int m = 0;
  int realized_at = 0;
  McSystem system;
  McSolution solution;
  std::vector<Vec> points;  // isolated solutions (families without parameters)
  PresentedDgla realized;
};
McVertices mc_vertices(const DglaPresentation& p, int m, int cap = kDefaultBasisCap);

// MC_n for a finite dgla with forms truncated at total degree D. Samples of
// each family are checked to be MC in g (x) Omega_{<=D}, and their faces
// (n >= 1) and degeneracies to stay MC.
struct McSimplices {
  int n = 0;
  int D = 0;
  McSystem system;
  McSolution solution;
  int samples = 0;
  bool samples_mc = true;
  bool faces_mc = true;
  bool degeneracies_mc = true;
};
McSimplices mc_simplices(const Dgla& g, int n, int D, unsigned seed = 1);

// One connected component of MC(g).
struct McClass {
  Vec representative;
  std::string text;
  int families = 0;        // solver families landing in this class
  int samples_connected = 0;
  int samples_tried = 0;
  int parameter_dim = 0;   // abelian case: dim of the affine component
};

struct McModuli {
  std::vector<McClass> classes;
  bool complete = true;      // solver closed every branch
  bool sampled = false;      // gauge connectivity checked on samples only
  bool abelian = false;      // pi_0 is the vector space H_{-1}
  int h_minus1 = 0;          // abelian: dim H_{-1}
  std::string method;
  std::string certificate;
  bool finite() const { return !abelian || h_minus1 == 0; }
  int count() const { return static_cast<int>(classes.size()); }
};

// Exact finite dgla (no truncation). Needs weights unless g is abelian or
// has nothing in degree -1.
McModuli pi0_moduli(const Dgla& g, unsigned seed = 1);
// Presented dgla at weight m: solved in g_{m+1}, representatives projected
// to g_m, so only MC elements that lift one step are counted.
McModuli pi0_moduli(const DglaPresentation& p, int m, unsigned seed = 1,
                    int cap = kDefaultBasisCap);

// Greedy gauge: tries to move eta to xi by exponentials, fixing one weight
// at a time. Returns the product of the gauge steps on success.
std::optional<std::vector<Vec>> gauge_connect(const Dgla& g, const Vec& xi, const Vec& eta,
                                              int max_steps = 64);

// pi_0 of an iterated disjoint product against the sum of pi_0 of the
// factors, plus acyclicity of g (-) 0 in stabilized degrees.
struct TheoremFReport {
  int m = 0;
  int lhs = 0;
  std::vector<int> rhs_parts;
  int rhs = 0;
  bool counts_match = false;
  bool all_complete = true;
  bool sampled = false;
  // per factor: stable homology of g_i (-) 0 at m, all zero?
  std::vector<bool> acyclic_with_zero;
  bool ok() const;
};
TheoremFReport verify_theorem_f(const std::vector<DglaPresentation>& gs, int m,
                                int cap = kDefaultBasisCap);

// For every pi_0 representative xi: H_{n-1} of the connected cover of g^xi
// against H_{n-1}(g^xi), n = 1..4.
struct ComponentRow {
  std::string representative;
  std::map<int, int> cover;   // degree -> dim
  std::map<int, int> twisted;
  bool equal() const { return cover == twisted; }
};
struct ComponentReport {
  McModuli moduli;
  std::vector<ComponentRow> rows;
  bool ok() const;
};
ComponentReport verify_component_decomposition(const Dgla& g, unsigned seed = 1);
ComponentReport verify_component_decomposition(const DglaPresentation& p, int m,
                                               unsigned seed = 1, int cap = kDefaultBasisCap);

}  // namespace ratdg
