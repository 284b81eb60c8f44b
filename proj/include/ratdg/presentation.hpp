#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/dgla.hpp"
#include "ratdg/free_lie.hpp"

namespace ratdg {

// A dgla presented by generators, Lie relations and the differential on
// generators, all written as Lie polynomials in tensor form.
struct DglaPresentation {
  GeneratorSet gens;
  std::vector<TensorPoly> relations;
  std::vector<TensorPoly> differential;  // one per generator
  std::optional<TensorPoly> mc;          // distinguished MC element
};

// The weight-m truncation of a presented dgla.
struct PresentedDgla {
  std::shared_ptr<const LieQuotient> quotient;
  Dgla dgla;
  int m = 0;
  std::vector<Vec> generators;  // images of the generators in dgla coordinates
  std::vector<Vec> free_d;      // d on the free Lie basis (before quotient)

  // Image in the quotient of a Lie polynomial in the generators.
  Vec element(const TensorPoly& p) const;
};

PresentedDgla realize(const DglaPresentation& p, int m, int cap = kDefaultBasisCap);

// Every basis element of a finite dgla becomes a generator; relations are
// the bracket table. Names get `prefix` prepended.
DglaPresentation present(const Dgla& g, const std::string& prefix = "");
DglaPresentation zero_presentation();
// free Lie algebra on one generator x of degree -1 with dx = -1/2 [x,x]
DglaPresentation sphere_presentation(const std::string& name = "x");

// Coproduct: disjoint union of generators, no cross relations. Clashing
// names in b are primed.
DglaPresentation free_product(const DglaPresentation& a, const DglaPresentation& b);
// g * s with dx = -1/2[x,x]; x is recorded as the distinguished element.
DglaPresentation adjoin_mc_variable(const DglaPresentation& g, const std::string& x = "x");
// (g * s)^x * h. The recorded MC element is -x, the image of the old base
// point, so twisting by it is defined.
DglaPresentation disjoint_product(const DglaPresentation& g, const DglaPresentation& h,
                                  const std::string& x = "x");

Dgla adjoin_mc_variable(const Dgla& g, int m);
Dgla disjoint_product(const Dgla& g, const Dgla& h, int m);

// Lie morphism between truncations, given on generators by Lie polynomials
// in the target generators.
struct MorphismCheck {
  bool well_defined = false;  // kills the source ideal
  bool chain_map = false;     // commutes with d
  bool bijective = false;
  bool ok() const { return well_defined && chain_map && bijective; }
  std::vector<Vec> matrix;    // images of the source quotient basis
};
MorphismCheck check_morphism(const PresentedDgla& src, const PresentedDgla& tgt,
                             const std::vector<TensorPoly>& gen_images);

// Homology of the weight-m truncation, with degrees flagged stable when the
// image of H(g_{m+1}) -> H(g_m) has the full dimension, i.e. no class at
// level m is a truncation artifact.
struct StableHomology {
  int m = 0;
  std::map<int, int> dims;        // H(g_m)
  std::map<int, int> stable_dims; // image of H(g_{m+1}) in H(g_m)
  std::map<int, bool> stable;
};
StableHomology stable_homology(const DglaPresentation& p, int m, int cap = kDefaultBasisCap);

}  // namespace ratdg
