#include "ratdg/minimal_model.hpp"

#include "ratdg/errors.hpp"

namespace ratdg {

namespace {

int koszul(int a, int b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

// Elements of g (x) R: g basis index -> coefficient in R.
using Mixed = std::map<int, PolyCdga::Elem>;

void add_mixed(Mixed& acc, int i, const PolyCdga::Elem& f, const Q& c = 1) {
  PolyCdga::add_into(acc[i], f, c);
  if (acc[i].empty()) acc.erase(i);
}

PolyCdga::Elem truncate(const PolyCdga::Elem& f, int N) {
  PolyCdga::Elem out;
  for (const auto& [k, c] : f)
    if (PolyCdga::word_length(k.second) <= N) out.emplace(k, c);
  return out;
}

// [u (x) f, v (x) f'] = (-1)^{|f||v|} [u, v] (x) f f'
Mixed bracket(const Dgla& g, const PolyCdga& R, const Mixed& a, const Mixed& b, int N) {
  Mixed out;
  for (const auto& [i, f] : a)
    for (const auto& [j, fp] : b) {
      Vec br = g.bracket_basis(i, j);
      if (br.empty()) continue;
      // f may be inhomogeneous in t; split by monomial to get signs right
      for (const auto& [k, c] : f) {
        PolyCdga::Elem fk{{k, c}};
        int s = koszul(R.mono_degree(k.second), g.degree(j));
        PolyCdga::Elem prod = truncate(R.mul(fk, fp), N);
        if (prod.empty()) continue;
        for (const auto& [l, e] : br) add_mixed(out, l, prod, e * s);
      }
    }
  return out;
}

Mixed apply_left(const std::vector<Vec>& map, const Mixed& a) {
  Mixed out;
  for (const auto& [i, f] : a)
    for (const auto& [l, e] : map[i]) add_mixed(out, l, f, e);
  return out;
}

}  // namespace

Contraction contraction(const Dgla& g) {
  const int n = g.dim();
  HomologyReport hr = homology(g.complex());
  Contraction c;
  std::vector<Vec> B, H, C;
  for (const auto& [deg, hd] : hr.degrees) {
    for (const auto& b : hd.boundary_basis) B.push_back(b);
    for (const auto& r : hd.representatives) {
      c.homology.add("[" + std::to_string(H.size()) + "]", deg);
      H.push_back(r);
    }
  }
  // complement of the cycles, chosen greedily from the standard basis
  Echelon z;
  for (const auto& v : B) z.insert(v);
  for (const auto& v : H) z.insert(v);
  for (int j = 0; j < n; ++j)
    if (z.insert(unit_vec(j))) C.push_back(unit_vec(j));
  // tracked decomposition g = B + H + C
  Echelon all(true);
  const int nb = static_cast<int>(B.size()), nh = static_cast<int>(H.size());
  for (int k = 0; k < nb; ++k) all.insert(B[k], k);
  for (int k = 0; k < nh; ++k) all.insert(H[k], nb + k);
  for (size_t k = 0; k < C.size(); ++k) all.insert(C[k], nb + nh + static_cast<int>(k));
  all.make_reduced();
  // d : C -> B is invertible; h(b) = -d^{-1} b
  Matrix dC(nb, static_cast<int>(C.size()));
  for (size_t k = 0; k < C.size(); ++k) {
    Vec coords;
    for (const auto& [id, v] : all.coordinates(g.d(C[k])))
      if (id < nb) coords.emplace_back(id, v);
      else throw std::logic_error("boundary outside the chosen boundary basis");
    dC.col[k] = coords;
  }
  std::vector<Vec> hB(nb);
  for (int k = 0; k < nb; ++k) {
    auto sol = solve(dC, unit_vec(k));
    if (!sol) throw std::logic_error("boundary has no preimage in the complement");
    Vec v;
    for (const auto& [l, e] : *sol) axpy(v, -e, C[l]);
    hB[k] = v;
  }
  c.inclusion = H;
  for (int j = 0; j < n; ++j) {
    Vec pj, hj;
    for (const auto& [id, v] : all.coordinates(unit_vec(j))) {
      if (id < nb) axpy(hj, v, hB[id]);
      else if (id < nb + nh) pj.emplace_back(id - nb, v);
    }
    c.projection.push_back(pj);
    c.homotopy.push_back(hj);
  }
  return c;
}

bool MinimalModel::higher_arity_zero() const {
  for (const auto& f : curvature)
    for (const auto& [k, c] : f)
      if (PolyCdga::word_length(k.second) != 2) return false;
  return true;
}

MinimalModel minimal_model(const Dgla& g, int N) {
  if (N < 2) throw std::invalid_argument("arity bound must be at least 2");
  MinimalModel mm{contraction(g), N, {}, {}, PolyCdga(FiniteCdga::ground(), {})};
  const Contraction& c = mm.data;
  const int nh = c.homology.size();
  std::vector<PolyCdga::Gen> gens;
  for (int k = 0; k < nh; ++k) gens.push_back({"t" + std::to_string(k), -c.homology.degree(k) - 1});
  PolyCdga R(FiniteCdga::ground(), gens);

  for (int a = 0; a < nh; ++a)
    for (int b = a; b < nh; ++b) {
      Vec v;
      for (const auto& [l, e] : g.bracket(c.inclusion[a], c.inclusion[b])) axpy(v, e, c.projection[l]);
      if (!v.empty()) mm.l2[{a, b}] = v;
    }

  Mixed x;
  for (int k = 0; k < nh; ++k)
    for (const auto& [l, e] : c.inclusion[k]) add_mixed(x, l, R.gen(k), e);
  Mixed phi = x;
  for (int it = 2; it <= N; ++it) {
    Mixed half;
    for (const auto& [i, f] : bracket(g, R, phi, phi, N)) add_mixed(half, i, f, Q(1, 2));
    Mixed next = x;
    for (const auto& [i, f] : apply_left(c.homotopy, half)) add_mixed(next, i, f);
    phi = next;
  }
  Mixed curv;
  for (const auto& [i, f] : bracket(g, R, phi, phi, N)) add_mixed(curv, i, f, Q(1, 2));
  Mixed F = apply_left(c.projection, curv);
  mm.curvature.assign(nh, {});
  for (auto& [k, f] : F) mm.curvature[k] = f;

  mm.linear_part_zero = true;
  for (const auto& f : mm.curvature)
    for (const auto& [k, v] : f)
      if (PolyCdga::word_length(k.second) < 2) mm.linear_part_zero = false;

  for (int k = 0; k < nh; ++k) {
    PolyCdga::Elem dk;
    PolyCdga::add_into(dk, mm.curvature[k], -parity_sign(c.homology.degree(k)));
    R.set_differential(k, dk);
  }
  mm.relations_hold = true;
  for (int k = 0; k < nh; ++k)
    if (!truncate(R.d(R.d(R.gen(k))), N).empty()) mm.relations_hold = false;
  mm.dual = std::move(R);

  // i sends the chosen basis of H to independent classes
  Echelon cls;
  for (const auto& [deg, hd] : homology(g.complex()).degrees)
    for (const auto& b : hd.boundary_basis) cls.insert(b);
  int base = cls.rank();
  bool cycles = true;
  for (const auto& v : c.inclusion) {
    if (!is_zero(g.d(v))) cycles = false;
    cls.insert(v);
  }
  mm.quasi_iso = cycles && cls.rank() - base == nh;
  return mm;
}

}  // namespace ratdg
