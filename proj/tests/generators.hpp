#pragma once

// Hand-rolled random generators for property tests.

#include <map>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ratdg/cdga.hpp"

namespace gen {

using namespace ratdg;

inline FiniteCdga block(std::mt19937& r) {
  switch (std::uniform_int_distribution<int>(0, 6)(r)) {
    case 0: return FiniteCdga::ground();
    case 1: return FiniteCdga::product_of_fields(2);
    case 2: return FiniteCdga::product_of_fields(3);
    case 3: return FiniteCdga::dual_numbers();
    case 4: return FiniteCdga::square_zero(std::uniform_int_distribution<int>(1, 2)(r));
    case 5: return omega_quotient(1, 1);
    default: return omega_quotient(1, 2);
  }
}

// Unitriangular mixing inside each degree, so the result is the same
// algebra in a scrambled basis.
inline FiniteCdga scramble(std::mt19937& r, const FiniteCdga& a) {
  std::vector<Vec> basis;
  for (int i = 0; i < a.dim(); ++i) {
    Vec v = unit_vec(i);
    for (int j : a.space().in_degree(a.degree(i)))
      if (j > i && r() % 2) axpy(v, oracle::small_q(r, 2), unit_vec(j));
    basis.push_back(v);
  }
  return change_basis(a, basis);
}

// Products and tensors of small blocks, dim <= max_dim.
inline FiniteCdga random_cdga(std::mt19937& r, int max_dim = 12) {
  while (true) {
    FiniteCdga a = block(r);
    int parts = std::uniform_int_distribution<int>(0, 2)(r);
    for (int k = 0; k < parts; ++k) {
      FiniteCdga b = block(r);
      a = r() % 2 ? product(a, b) : tensor(a, b);
    }
    if (a.dim() <= max_dim) return scramble(r, a);
  }
}

// Random cocycle of homological degree n (possibly zero).
inline Vec random_cocycle(std::mt19937& r, const FiniteCdga& a, int n) {
  HomologyReport h = homology(a.complex());
  Vec v;
  auto it = h.degrees.find(n);
  if (it == h.degrees.end()) return v;
  for (const auto& z : it->second.representatives) axpy(v, oracle::small_q(r), z);
  for (const auto& b : it->second.boundary_basis) axpy(v, oracle::small_q(r), b);
  return v;
}

// A complex with prescribed homology: acyclic pairs b -> c plus free
// classes, then scrambled by an invertible change of basis per degree.
inline ChainComplex random_complex(std::mt19937& r, std::map<int, int> h, int pairs) {
  std::uniform_int_distribution<int> deg(-2, 2);
  GradedVectorSpace sp;
  std::vector<Vec> d;
  for (auto [n, k] : h)
    for (int i = 0; i < k; ++i) {
      sp.add("h" + std::to_string(sp.size()), n);
      d.push_back({});
    }
  for (int p = 0; p < pairs; ++p) {
    int n = deg(r);
    sp.add("c" + std::to_string(sp.size()), n);
    d.push_back({});
    sp.add("b" + std::to_string(sp.size()), n + 1);
    d.push_back(unit_vec(sp.size() - 2));
  }
  // conjugate by an upper-triangular unipotent change within each degree
  const int N = sp.size();
  std::vector<Vec> P(N), Pinv(N);
  for (int j = 0; j < N; ++j) {
    P[j] = unit_vec(j);
    for (int i : sp.in_degree(sp.degree(j)))
      if (i < j && r() % 2) axpy(P[j], Q(static_cast<int>(r() % 3) - 1), unit_vec(i));
  }
  // invert column by column (triangular)
  for (int j = 0; j < N; ++j) {
    Vec x = unit_vec(j);
    for (int i = j - 1; i >= 0; --i) {
      Q c = 0;
      for (int k = i + 1; k <= j; ++k) c += coeff(P[k], i) * coeff(x, k);
      if (!is_zero(c)) axpy(x, -c, unit_vec(i));
    }
    Pinv[j] = x;
  }
  auto apply = [](const std::vector<Vec>& M, const Vec& v) {
    Vec out;
    for (const auto& [i, c] : v) axpy(out, c, M[i]);
    return out;
  };
  std::vector<Vec> dd(N);
  for (int j = 0; j < N; ++j) dd[j] = apply(Pinv, apply(d, P[j]));
  return ChainComplex(sp, dd);
}

}  // namespace gen
