#include "ratdg/presentation.hpp"

#include <cctype>
#include <set>

#include "ratdg/errors.hpp"

namespace ratdg {

namespace {

TensorPoly gen_poly(int k) { return TensorPoly{{letter(k), Q(1)}}; }

TensorPoly shift_letters(const TensorPoly& p, int offset) {
  TensorPoly out;
  for (const auto& [w, c] : p) {
    Word v = w;
    for (auto& ch : v) ch = static_cast<char>(static_cast<unsigned char>(ch) + offset);
    out.emplace(std::move(v), c);
  }
  return out;
}

std::string fresh_name(const GeneratorSet& taken, std::string name) {
  auto clash = [&](const std::string& s) {
    for (const auto& g : taken)
      if (g.name == s) return true;
    return false;
  };
  while (clash(name)) name += "'";
  return name;
}

bool identifier(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!std::isalnum(c) && c != '_' && c != '\'') return false;
  return true;
}

}  // namespace

Vec PresentedDgla::element(const TensorPoly& p) const {
  return quotient->project(quotient->lie().from_tensor(p));
}

PresentedDgla realize(const DglaPresentation& p, int m, int cap) {
  if (p.differential.size() != p.gens.size())
    throw std::invalid_argument("presentation needs one differential per generator");
  auto L = std::make_shared<FreeLie>(p.gens, m, cap);
  for (size_t k = 0; k < p.gens.size(); ++k) {
    const auto& dk = p.differential[k];
    if (!dk.empty() && poly_degree(p.gens, dk) != p.gens[k].degree - 1)
      throw DegreeMismatch("d(" + p.gens[k].name + ") must have degree " +
                           std::to_string(p.gens[k].degree - 1));
  }
  PresentedDgla out;
  out.m = m;
  out.free_d.resize(L->size());
  for (int i = 0; i < L->size(); ++i) {
    const auto& e = L->element(i);
    if (e.gen >= 0) {
      out.free_d[i] = L->from_tensor(p.differential[e.gen]);
    } else {
      Vec l = unit_vec(e.left), r = unit_vec(e.right);
      Vec v = L->bracket(out.free_d[e.left], r);
      axpy(v, parity_sign(L->degree(e.left)), L->bracket(l, out.free_d[e.right]));
      out.free_d[i] = std::move(v);
    }
  }
  std::vector<Vec> rels;
  for (const auto& r : p.relations) {
    if (!r.empty()) poly_degree(p.gens, r);  // homogeneity
    rels.push_back(L->from_tensor(r));
  }
  const auto& fd = out.free_d;
  auto dfun = [&fd](const Vec& v) {
    Vec o;
    for (const auto& [i, c] : v) axpy(o, c, fd[i]);
    return o;
  };
  auto Qt = std::make_shared<LieQuotient>(L, rels, dfun);
  out.quotient = Qt;

  GradedVectorSpace sp;
  std::vector<int> weights;
  const int n = Qt->dim();
  for (int q = 0; q < n; ++q) {
    int r = Qt->representative(q);
    sp.add(L->element(r).label, L->degree(r));
    weights.push_back(L->weight(r));
  }
  Dgla::BracketTable br;
  std::vector<Vec> d(n);
  for (int a = 0; a < n; ++a) {
    int ra = Qt->representative(a);
    d[a] = Qt->project(fd[ra]);
    for (int b = a; b < n; ++b) {
      if (weights[a] + weights[b] > m) continue;
      Vec v = Qt->project(L->bracket_basis(ra, Qt->representative(b)));
      if (!v.empty()) br[{a, b}] = std::move(v);
    }
  }
  out.dgla = Dgla(sp, br, d, weights);
  for (size_t k = 0; k < p.gens.size(); ++k) {
    int gi = L->generator_index(static_cast<int>(k));
    out.generators.push_back(gi < 0 ? Vec{} : Qt->project(unit_vec(gi)));
  }
  if (p.mc) out.dgla.mc_element = out.element(*p.mc);
  return out;
}

DglaPresentation present(const Dgla& g, const std::string& prefix) {
  DglaPresentation p;
  for (int i = 0; i < g.dim(); ++i) {
    std::string name = identifier(g.label(i)) ? g.label(i) : "e" + std::to_string(i);
    p.gens.push_back({fresh_name(p.gens, prefix + name), g.degree(i),
                      g.has_weights() ? g.weights()[i] : 1});
  }
  auto lin = [](const Vec& v) {
    TensorPoly t;
    for (const auto& [k, c] : v) t.emplace(letter(k), c);
    return t;
  };
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i; j < g.dim(); ++j) {
      TensorPoly r = commutator(p.gens, gen_poly(i), gen_poly(j));
      if (r.empty()) continue;  // even square
      add_into(r, lin(g.bracket_basis(i, j)), -1);
      p.relations.push_back(std::move(r));
    }
  for (int i = 0; i < g.dim(); ++i) p.differential.push_back(lin(g.d_basis(i)));
  if (g.mc_element) p.mc = lin(*g.mc_element);
  return p;
}

DglaPresentation zero_presentation() { return {}; }

DglaPresentation sphere_presentation(const std::string& name) {
  return adjoin_mc_variable(zero_presentation(), name);
}

DglaPresentation free_product(const DglaPresentation& a, const DglaPresentation& b) {
  DglaPresentation p = a;
  const int off = static_cast<int>(a.gens.size());
  for (const auto& g : b.gens) p.gens.push_back({fresh_name(p.gens, g.name), g.degree, g.weight});
  for (const auto& r : b.relations) p.relations.push_back(shift_letters(r, off));
  for (const auto& d : b.differential) p.differential.push_back(shift_letters(d, off));
  if (!p.mc && b.mc) p.mc = shift_letters(*b.mc, off);
  return p;
}

DglaPresentation adjoin_mc_variable(const DglaPresentation& g, const std::string& x) {
  DglaPresentation p = g;
  int k = static_cast<int>(p.gens.size());
  p.gens.push_back({fresh_name(p.gens, x), -1, 1});
  p.differential.push_back(scaled(commutator(p.gens, gen_poly(k), gen_poly(k)), Q(-1, 2)));
  p.mc = gen_poly(k);
  return p;
}

DglaPresentation disjoint_product(const DglaPresentation& g, const DglaPresentation& h,
                                  const std::string& x) {
  DglaPresentation s = adjoin_mc_variable(g, x);
  const TensorPoly xp = *s.mc;
  for (size_t k = 0; k < s.gens.size(); ++k)
    add_into(s.differential[k], commutator(s.gens, xp, gen_poly(static_cast<int>(k))));
  DglaPresentation out = free_product(s, h);
  // after twisting by x the old base point 0 sits at -x
  out.mc = scaled(xp, Q(-1));
  return out;
}

Dgla adjoin_mc_variable(const Dgla& g, int m) {
  return realize(adjoin_mc_variable(present(g)), m).dgla;
}

Dgla disjoint_product(const Dgla& g, const Dgla& h, int m) {
  return realize(disjoint_product(present(g), present(h)), m).dgla;
}

MorphismCheck check_morphism(const PresentedDgla& src, const PresentedDgla& tgt,
                             const std::vector<TensorPoly>& gen_images) {
  MorphismCheck res;
  const FreeLie& L = src.quotient->lie();
  if (gen_images.size() != L.generators().size())
    throw std::invalid_argument("one image per source generator is required");
  std::vector<Vec> imgs;
  for (const auto& t : gen_images) imgs.push_back(tgt.element(t));
  auto f = extend_lie_map(L, imgs, [&](const Vec& u, const Vec& v) { return tgt.dgla.bracket(u, v); });
  auto apply_free = [&](const Vec& v) {
    Vec o;
    for (const auto& [i, c] : v) axpy(o, c, f[i]);
    return o;
  };
  res.well_defined = true;
  for (const auto& [p, row] : src.quotient->ideal().rows())
    if (!apply_free(row).empty()) {
      res.well_defined = false;
      break;
    }
  const int n = src.dgla.dim();
  for (int q = 0; q < n; ++q) res.matrix.push_back(f[src.quotient->representative(q)]);
  auto apply_q = [&](const Vec& v) {
    Vec o;
    for (const auto& [i, c] : v) axpy(o, c, res.matrix[i]);
    return o;
  };
  res.chain_map = true;
  for (int q = 0; q < n; ++q)
    if (apply_q(src.dgla.d_basis(q)) != tgt.dgla.d(res.matrix[q])) {
      res.chain_map = false;
      break;
    }
  Matrix M(tgt.dgla.dim(), n);
  M.col = res.matrix;
  res.bijective = n == tgt.dgla.dim() && rank(M) == n;
  return res;
}

StableHomology stable_homology(const DglaPresentation& p, int m, int cap) {
  PresentedDgla lo = realize(p, m, cap);
  PresentedDgla hi = realize(p, m + 1, cap);
  HomologyReport hl = homology(lo.dgla);
  HomologyReport hh = homology(hi.dgla);
  StableHomology out;
  out.m = m;
  const FreeLie& Lh = hi.quotient->lie();
  for (const auto& [n, h] : hl.degrees) {
    out.dims[n] = h.dim;
    Echelon span;
    for (const auto& b : h.boundary_basis) span.insert(b);
    int base = span.rank();
    auto it = hh.degrees.find(n);
    if (it != hh.degrees.end()) {
      for (const auto& z : it->second.representatives) {
        Vec img;
        for (const auto& [q, c] : z)
          axpy(img, c, lo.element(Lh.element(hi.quotient->representative(q)).tensor));
        span.insert(img);
      }
    }
    out.stable_dims[n] = span.rank() - base;
    out.stable[n] = out.stable_dims[n] == h.dim;
  }
  return out;
}

}  // namespace ratdg
