#pragma once

// Independent reference computations used by the tests. None of these call
// into the code paths they are compared against.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "ratdg/cdga.hpp"
#include "ratdg/dgla.hpp"
#include "ratdg/tensor_words.hpp"

namespace oracle {

using namespace ratdg;

// Dims per (weight, degree) of the Lie subalgebra of the tensor algebra
// generated by the letters: span of all left-normed brackets.
inline std::map<std::pair<int, int>, int> lie_dims(const GeneratorSet& gens, int m) {
  std::map<Word, int> word_id;
  auto coords = [&](const TensorPoly& p) {
    std::vector<std::pair<int, Q>> t;
    for (const auto& [w, c] : p) {
      auto it = word_id.emplace(w, static_cast<int>(word_id.size())).first;
      t.emplace_back(it->second, c);
    }
    return from_terms(t);
  };
  std::map<std::pair<int, int>, Echelon> cells;
  // frontier: left-normed brackets of a given weight
  struct Item {
    TensorPoly p;
    int weight, degree;
  };
  std::vector<Item> frontier;
  for (size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].weight > m) continue;
    frontier.push_back({{{letter(static_cast<int>(k)), Q(1)}}, gens[k].weight, gens[k].degree});
  }
  std::vector<Item> all = frontier;
  while (!frontier.empty()) {
    std::vector<Item> next;
    for (const auto& it : frontier)
      for (size_t k = 0; k < gens.size(); ++k) {
        int w = it.weight + gens[k].weight;
        if (w > m) continue;
        TensorPoly g{{letter(static_cast<int>(k)), Q(1)}};
        next.push_back({commutator(gens, g, it.p), w, it.degree + gens[k].degree});
      }
    for (const auto& it : next) all.push_back(it);
    frontier = std::move(next);
  }
  std::map<std::pair<int, int>, int> out;
  for (const auto& it : all) {
    if (it.p.empty()) continue;
    auto& e = cells[{it.weight, it.degree}];
    e.insert(coords(it.p));
  }
  for (auto& [k, e] : cells) out[k] = e.rank();
  return out;
}

// Classical CE cochains of a Lie algebra concentrated in degree 0 with
// zero differential: Lambda^k g*, d f(x_0..x_k) = sum_{i<j} (-1)^{i+j}
// f([x_i,x_j], x_0..^..^..x_k). Returns weight -> degree k -> dim H^k,
// k >= 1 (the reduced complex). Weights come from g (all 1 if absent).
inline std::map<int, std::map<int, int>> ce_bruteforce(const Dgla& g) {
  const int n = g.dim();
  auto w = [&](int i) { return g.has_weights() ? g.weights()[i] : 1; };
  // subsets as bitmasks, cochain e^S dual to the wedge of basis vectors in S
  std::map<int, std::map<int, std::vector<unsigned>>> cells;  // weight -> k -> masks
  for (unsigned s = 1; s < (1u << n); ++s) {
    int k = __builtin_popcount(s), wt = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) wt += w(i);
    cells[wt][k].push_back(s);
  }
  auto idx_in = [](const std::vector<unsigned>& v, unsigned s) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == s) return static_cast<int>(i);
    return -1;
  };
  // (d e^S)(x_T) for |T| = |S| + 1 is computed by evaluating on T.
  auto d_matrix = [&](const std::vector<unsigned>& src, const std::vector<unsigned>& dst) {
    Matrix M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < dst.size(); ++c) {
      unsigned T = dst[c];
      std::vector<int> xs;
      for (int i = 0; i < n; ++i)
        if (T >> i & 1) xs.push_back(i);
      for (size_t a = 0; a < xs.size(); ++a)
        for (size_t b = a + 1; b < xs.size(); ++b) {
          Vec br = g.bracket_basis(xs[a], xs[b]);
          int sign = ((a + b) % 2 == 0) ? 1 : -1;
          std::vector<int> rest;
          for (size_t r = 0; r < xs.size(); ++r)
            if (r != a && r != b) rest.push_back(xs[r]);
          for (const auto& [l, coef] : br) {
            // e^S(l, rest...) is nonzero iff {l} + rest = S, with the sign
            // of sorting (l, rest)
            if (std::find(rest.begin(), rest.end(), l) != rest.end()) continue;
            unsigned S = 1u << l;
            int inv = 0;
            for (int r : rest) {
              S |= 1u << r;
              if (r < l) ++inv;
            }
            int col = idx_in(src, S);
            if (col < 0) continue;
            Q val = coef * sign * (inv % 2 == 0 ? 1 : -1);
            // matrix entry: row c (target T), column col (source S)
            Vec& cv = M.col[col];
            axpy(cv, val, unit_vec(static_cast<int>(c)));
          }
        }
    }
    return M;
  };
  std::map<int, std::map<int, int>> out;
  for (auto& [wt, byk] : cells) {
    for (auto& [k, masks] : byk) {
      int dim = static_cast<int>(masks.size());
      int rank_out = 0, rank_in = 0;
      auto it = byk.find(k + 1);
      if (it != byk.end()) rank_out = rank(d_matrix(masks, it->second));
      auto jt = byk.find(k - 1);
      if (jt != byk.end()) rank_in = rank(d_matrix(jt->second, masks));
      int h = dim - rank_out - rank_in;
      if (h) out[wt][k] = h;
    }
  }
  return out;
}

// dim per homological degree of H(A)[u^-1], read off as the image of a high
// power of multiplication by u on H(A).
inline std::map<int, int> localized_homology_dims(const FiniteCdga& a, const Vec& u) {
  HomologyReport h = homology(a.complex());
  const int N = a.dim() + 1;
  std::map<int, int> out;
  for (const auto& [n, hd] : h.degrees) {
    Echelon e;
    for (const auto& b : hd.boundary_basis) e.insert(b);
    int base = e.rank();
    for (const auto& z : hd.representatives) {
      Vec v = z;
      for (int k = 0; k < N; ++k) v = a.mul(u, v);
      e.insert(v);
    }
    if (e.rank() > base) out[n] = e.rank() - base;
  }
  return out;
}

inline Q small_q(std::mt19937& r, int lim = 3) {
  std::uniform_int_distribution<int> num(-lim, lim), den(1, 2);
  Q q(num(r), den(r));
  q.canonicalize();
  return q;
}

}  // namespace oracle
