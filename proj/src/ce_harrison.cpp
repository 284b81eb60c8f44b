#include "ratdg/ce_harrison.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "ratdg/errors.hpp"

namespace ratdg {

namespace {

int koszul(int a, int b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

PolyCdga::Elem mono_elem(const Mono& m, const Q& c = 1) {
  PolyCdga::Elem e;
  e[{0, m}] = c;
  return e;
}

// Monomials in the w's with word length <= P, optionally total weight <= W.
std::vector<Mono> enumerate_monomials(const CEAlgebra& c, int P, int W,
                                      const std::function<bool(const Mono&)>& keep, long cap) {
  const auto& gens = c.cdga.gens();
  const int n = static_cast<int>(gens.size());
  std::vector<Mono> out;
  Mono cur;
  std::function<void(int, int, int)> rec = [&](int k, int len, int wt) {
    if (k == n) {
      if (!cur.empty() && keep(cur)) {
        out.push_back(cur);
        if (static_cast<long>(out.size()) > cap)
          throw TruncationTooLarge("CE complex exceeds " + std::to_string(cap) + " monomials");
      }
      return;
    }
    int maxe = P - len;
    if (is_odd(gens[k].degree)) maxe = std::min(maxe, 1);
    for (int e = 0; e <= maxe; ++e) {
      int w2 = wt + e * c.weights[k];
      if (W >= 0 && w2 > W) break;
      if (e) cur.emplace_back(k, e);
      rec(k + 1, len + e, w2);
      if (e) cur.pop_back();
    }
  };
  rec(0, 0, 0);
  return out;
}

int mono_weight(const CEAlgebra& c, const Mono& m) {
  int s = 0;
  for (const auto& [k, e] : m) s += c.weights[k] * e;
  return s;
}

// Complex spanned by `monos`; terms of d leaving the span are dropped when
// `drop(m)` says so and are an error otherwise.
ChainComplex monomial_complex(const CEAlgebra& c, const std::vector<Mono>& monos,
                              const std::function<bool(const Mono&)>& drop) {
  std::map<Mono, int> index;
  GradedVectorSpace space;
  for (const auto& m : monos) {
    index[m] = space.size();
    space.add(c.cdga.to_string(mono_elem(m)), c.cdga.mono_degree(m));
  }
  std::vector<Vec> d;
  for (const auto& m : monos) {
    std::vector<std::pair<int, Q>> terms;
    for (const auto& [k, v] : c.cdga.d(mono_elem(m))) {
      auto it = index.find(k.second);
      if (it != index.end()) {
        terms.emplace_back(it->second, v);
        continue;
      }
      if (!drop(k.second))
        throw DegreeMismatch("differential leaves the chosen block at " + c.cdga.to_string(mono_elem(k.second)));
    }
    d.push_back(from_terms(std::move(terms)));
  }
  return ChainComplex(space, d);
}

std::map<int, int> window_dims(const CEAlgebra& c, int P, int lo, int hi, long cap) {
  // cohomological window [lo-1, hi+1]; homological degree is its negative
  auto in_window = [&](const Mono& m) {
    int deg = -c.cdga.mono_degree(m);
    return deg >= lo - 1 && deg <= hi + 1;
  };
  auto monos = enumerate_monomials(c, P, -1, in_window, cap);
  auto drop = [&](const Mono& m) { return PolyCdga::word_length(m) > P || !in_window(m); };
  HomologyReport h = homology(monomial_complex(c, monos, drop));
  std::map<int, int> out;
  for (int n = lo; n <= hi; ++n) out[n] = h.dim(-n);
  return out;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace

CEAlgebra chevalley_eilenberg(const Dgla& g) {
  std::vector<PolyCdga::Gen> gens;
  for (int k = 0; k < g.dim(); ++k) gens.push_back({"w_" + sanitize(g.label(k)), -g.degree(k) - 1});
  // keep names distinct even if sanitizing collided
  std::set<std::string> seen;
  for (int k = 0; k < g.dim(); ++k)
    if (!seen.insert(gens[k].name).second) gens[k].name += "_" + std::to_string(k);
  PolyCdga p(FiniteCdga::ground(), gens);
  const int n = g.dim();
  std::vector<PolyCdga::Elem> dw(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [k, c] : g.d_basis(i))
      PolyCdga::add_into(dw[k], mono_elem({{i, 1}}), -c * parity_sign(g.degree(k)));
  for (const auto& [ij, v] : g.bracket_table()) {
    auto [i, j] = ij;
    // both ordered pairs contribute; for i == j once
    auto contribute = [&](int a, int b, const Vec& br) {
      int s = koszul(-g.degree(a) - 1, g.degree(b));
      PolyCdga::Elem wawb = p.mul(p.gen(a), p.gen(b));
      for (const auto& [k, c] : br)
        PolyCdga::add_into(dw[k], wawb, Q(-1, 2) * c * s * parity_sign(g.degree(k)));
    };
    contribute(i, j, v);
    if (i != j) contribute(j, i, g.bracket_basis(j, i));
  }
  for (int k = 0; k < n; ++k) p.set_differential(k, dw[k]);
  std::vector<int> weights(n, 1);
  if (g.has_weights()) weights = g.weights();
  return {g, std::move(p), weights};
}

CEReport ce_cohomology(const Dgla& g, int P, int lo, int hi, long cap) {
  if (P < 1) throw std::invalid_argument("word length bound must be at least 1");
  CEAlgebra c = chevalley_eilenberg(g);
  bool nonneg = true;
  for (int i = 0; i < g.dim(); ++i)
    if (g.degree(i) < 0) nonneg = false;
  auto at = window_dims(c, P, lo, hi, cap);
  auto next = window_dims(c, P + 1, lo, hi, cap);
  CEReport r;
  r.P = P;
  for (int n = lo; n <= hi; ++n) r.degrees[n] = {at[n], nonneg && P >= n + 1, at[n] == next[n]};
  return r;
}

std::map<std::pair<int, int>, int> ce_weight_table(const Dgla& g, int max_weight, int P, long cap) {
  CEAlgebra c = chevalley_eilenberg(g);
  auto all = enumerate_monomials(c, P, max_weight, [](const Mono&) { return true; }, cap);
  std::map<int, std::vector<Mono>> blocks;
  for (const auto& m : all) blocks[mono_weight(c, m)].push_back(m);
  std::map<std::pair<int, int>, int> out;
  for (const auto& [w, monos] : blocks) {
    auto drop = [&](const Mono& m) { return PolyCdga::word_length(m) > P && mono_weight(c, m) == w; };
    HomologyReport h = homology(monomial_complex(c, monos, drop));
    for (const auto& [deg, hd] : h.degrees)
      if (hd.dim) out[{w, -deg}] = hd.dim;
  }
  return out;
}

DglaPresentation harrison_presentation(const FiniteCdga& a) {
  if (!a.augmentation()) throw NoAugmentation("the Harrison complex needs an augmentation");
  const int n = a.dim();
  int pivot = -1;
  for (const auto& [i, c] : *a.augmentation()) {
    pivot = i;
    break;
  }
  std::vector<Vec> ideal;
  std::vector<int> src;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    Vec v = unit_vec(i);
    Q e = a.augment(v);
    if (!is_zero(e)) axpy(v, -e / a.augment(unit_vec(pivot)), unit_vec(pivot));
    ideal.push_back(v);
    src.push_back(i);
  }
  Echelon ech(true);
  for (size_t i = 0; i < ideal.size(); ++i) ech.insert(ideal[i], static_cast<int>(i));
  ech.make_reduced();
  auto coords = [&](const Vec& v) {
    if (!ech.contains(v)) throw AxiomViolation("augmentation ideal is not closed");
    return ech.coordinates(v);
  };
  DglaPresentation p;
  std::set<std::string> seen;
  for (size_t i = 0; i < ideal.size(); ++i) {
    std::string name = "y_" + sanitize(a.space().label(src[i]));
    if (!seen.insert(name).second) name += "_" + std::to_string(i);
    p.gens.push_back({name, -a.degree(src[i]) - 1, 1});
  }
  const int k = static_cast<int>(ideal.size());
  p.differential.assign(k, TensorPoly{});
  for (int ia = 0; ia < k; ++ia) {
    int ya = p.gens[ia].degree;
    for (const auto& [c, delta] : coords(a.d(ideal[ia])))
      add_into(p.differential[c], TensorPoly{{letter(ia), Q(1)}}, -delta * parity_sign(ya));
    for (int ib = 0; ib < k; ++ib) {
      Vec prod = a.mul(ideal[ia], ideal[ib]);
      if (prod.empty()) continue;
      int s = koszul(a.degree(src[ia]), p.gens[ib].degree);
      TensorPoly br = commutator(p.gens, TensorPoly{{letter(ia), Q(1)}}, TensorPoly{{letter(ib), Q(1)}});
      for (const auto& [c, mu] : coords(prod)) add_into(p.differential[c], br, Q(-1, 2) * mu * s);
    }
  }
  return p;
}

PresentedDgla harrison(const FiniteCdga& a, int m, int cap) { return realize(harrison_presentation(a), m, cap); }

FreeProductReport compare_free_product(const DglaPresentation& g, const DglaPresentation& h, int m,
                                       int P, int cap) {
  PresentedDgla gh = realize(free_product(g, h), m, cap);
  PresentedDgla gg = realize(g, m, cap);
  PresentedDgla hh = realize(h, m, cap);
  auto tp = ce_weight_table(gh.dgla, m - 1, P);
  auto tg = ce_weight_table(gg.dgla, m - 1, P);
  auto th = ce_weight_table(hh.dgla, m - 1, P);
  std::set<std::pair<int, int>> keys;
  for (const auto* t : {&tp, &tg, &th})
    for (const auto& [k, v] : *t) keys.insert(k);
  FreeProductReport r;
  r.m = m;
  auto get = [](const auto& t, const std::pair<int, int>& k) {
    auto it = t.find(k);
    return it == t.end() ? 0 : it->second;
  };
  for (const auto& k : keys) r.cells.push_back({k.first, k.second, get(tp, k), get(tg, k) + get(th, k)});
  return r;
}

Q evaluate_at(const CEAlgebra& c, const Vec& xi, const PolyCdga::Elem& f) {
  Q s = 0;
  for (const auto& [k, v] : f) {
    Q term = v;
    bool ok = true;
    for (const auto& [g, e] : k.second) {
      if (c.cdga.gens()[g].degree != 0) {
        ok = false;
        break;
      }
      Q x = coeff(xi, g);
      for (int r = 0; r < e; ++r) term *= x;
    }
    if (ok) s += term;
  }
  return s;
}

McAugmentation mc_augmentation_dictionary(const Dgla& g, const Vec& xi, int P) {
  McAugmentation r;
  CEAlgebra c = chevalley_eilenberg(g);
  auto monos = enumerate_monomials(c, P, -1, [](const Mono&) { return true; }, 400000);
  monos.insert(monos.begin(), Mono{});
  r.monomials_checked = static_cast<long>(monos.size());
  r.is_mc = is_mc(g, xi).ok;
  r.dg_map = true;
  for (const auto& m : monos) {
    if (!is_zero(evaluate_at(c, xi, c.cdga.d(mono_elem(m))))) {
      r.dg_map = false;
      r.witness = c.cdga.to_string(mono_elem(m));
      break;
    }
  }
  if (!r.is_mc) return r;
  CEAlgebra ct = chevalley_eilenberg(twist(g, xi));
  // phi: w_k -> w_k + xi_k on degree-0 generators
  std::vector<PolyCdga::Elem> img;
  for (int k = 0; k < g.dim(); ++k) {
    PolyCdga::Elem e = c.cdga.gen(k);
    if (c.cdga.gens()[k].degree == 0) PolyCdga::add_into(e, c.cdga.one(), coeff(xi, k));
    img.push_back(e);
  }
  auto phi = [&](const PolyCdga::Elem& f) {
    PolyCdga::Elem out;
    for (const auto& [k, v] : f) {
      PolyCdga::Elem t = c.cdga.one();
      for (const auto& [gi, e] : k.second)
        for (int q = 0; q < e; ++q) t = c.cdga.mul(t, img[gi]);
      PolyCdga::add_into(out, t, v);
    }
    return out;
  };
  r.phi_chain_map = true;
  r.triangle = true;
  for (const auto& m : monos) {
    PolyCdga::Elem f = mono_elem(m);
    PolyCdga::Elem pf = phi(f);
    if (phi(c.cdga.d(f)) != ct.cdga.d(pf)) r.phi_chain_map = false;
    if (evaluate_at(ct, Vec{}, pf) != evaluate_at(c, xi, f)) r.triangle = false;
  }
  return r;
}

}  // namespace ratdg
