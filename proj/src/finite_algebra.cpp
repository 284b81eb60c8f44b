#include "ratdg/finite_algebra.hpp"

#include <algorithm>
#include <set>

#include "ratdg/errors.hpp"

namespace ratdg {

FiniteCommutativeAlgebra::FiniteCommutativeAlgebra(std::vector<std::string> labels,
                                                   std::vector<std::vector<Vec>> table,
                                                   Vec unit)
    : labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
  const int n = dim();
  if (static_cast<int>(table_.size()) != n)
    throw AxiomViolation("multiplication table has wrong size");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n)
      throw AxiomViolation("multiplication table has wrong size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table_[i][j] != table_[j][i])
        throw AxiomViolation("not commutative at " + labels_[i] + "*" + labels_[j]);
  for (int i = 0; i < n; ++i) {
    if (mul(unit_, unit_vec(i)) != unit_vec(i))
      throw AxiomViolation("unit fails on " + labels_[i]);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (mul(table_[i][j], unit_vec(k)) != mul(unit_vec(i), table_[j][k]))
          throw AxiomViolation("not associative");
  }
}

Vec FiniteCommutativeAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) axpy(out, x * y, table_[i][j]);
  return out;
}

FiniteCommutativeAlgebra FiniteCommutativeAlgebra::product_of_fields(int k) {
  std::vector<std::string> labels;
  std::vector<std::vector<Vec>> table(k, std::vector<Vec>(k));
  Vec unit;
  for (int i = 0; i < k; ++i) {
    labels.push_back("e" + std::to_string(i + 1));
    table[i][i] = unit_vec(i);
    unit.emplace_back(i, Q(1));
  }
  return FiniteCommutativeAlgebra(labels, table, unit);
}

namespace {

// Positive divisors of |n| by trial division; nullopt if n has a large
// composite cofactor we refuse to factor.
std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class p = 2; p * p <= n && p < 1000000; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) fac.emplace_back(p, e);
  }
  if (n > 1) {
    if (n >= mpz_class(1000000) * mpz_class(1000000) &&
        mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      return std::nullopt;
    fac.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : fac) {
    size_t cur = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

Q eval_poly(const std::vector<Q>& c, const Q& x) {
  Q acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

std::vector<Q> rational_roots(const std::vector<Q>& c_in) {
  std::vector<Q> c = c_in;
  while (!c.empty() && is_zero(c.back())) c.pop_back();
  std::set<Q> roots;
  if (c.size() <= 1) return {};
  // strip the X^k factor
  size_t low = 0;
  while (low < c.size() && is_zero(c[low])) ++low;
  if (low > 0) {
    roots.insert(Q(0));
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
  }
  if (c.size() > 1) {
    mpz_class l = 1;
    for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    mpz_class a0 = Q(c.front() * l).get_num();
    mpz_class an = Q(c.back() * l).get_num();
    auto dp = divisors(a0);
    auto dq = divisors(an);
    if (!dp || !dq) throw NonSplitAlgebra("polynomial coefficients too large to factor");
    for (const auto& p : *dp)
      for (const auto& q : *dq)
        for (int s : {1, -1}) {
          Q r(p * s, q);
          r.canonicalize();
          if (is_zero(eval_poly(c, r))) roots.insert(r);
        }
  }
  return {roots.begin(), roots.end()};
}

std::vector<Vec> idempotents(const FiniteCommutativeAlgebra& a) {
  auto block_dim = [&](const Vec& e) {
    Echelon ech;
    for (int j = 0; j < a.dim(); ++j) ech.insert(a.mul(e, unit_vec(j)));
    return ech.rank();
  };
  std::vector<Vec> blocks{a.unit()};
  for (int b = 0; b < a.dim(); ++b) {
    std::vector<Vec> next;
    for (const auto& e : blocks) {
      if (block_dim(e) <= 1) {
        next.push_back(e);
        continue;
      }
      Vec y = a.mul(e, unit_vec(b));
      // minimal polynomial of y inside the unital algebra eA
      std::vector<Vec> powers{e};
      Echelon ech(true);
      ech.insert(e, 0);
      std::vector<Q> mu;
      for (int k = 1;; ++k) {
        Vec pk = a.mul(powers.back(), y);
        powers.push_back(pk);
        Vec combo;
        Vec rest = ech.reduce(pk, &combo);
        if (rest.empty()) {
          mu.assign(k + 1, Q(0));
          mu[k] = 1;
          for (const auto& [i, cf] : combo) mu[i] = -cf;
          break;
        }
        ech.insert(pk, k);
      }
      auto roots = rational_roots(mu);
      if (roots.size() + 1 != mu.size())
        throw NonSplitAlgebra("multiplication by " + a.label(b) +
                              " has a non-rational or non-semisimple spectrum");
      for (size_t i = 0; i < roots.size(); ++i) {
        Vec ei = e;
        for (size_t j = 0; j < roots.size(); ++j) {
          if (j == i) continue;
          Vec factor = y;
          axpy(factor, -roots[j], e);
          ei = scaled(a.mul(ei, factor), 1 / (roots[i] - roots[j]));
        }
        next.push_back(ei);
      }
    }
    blocks = std::move(next);
  }
  for (const auto& e : blocks)
    if (block_dim(e) != 1) throw NonSplitAlgebra("a block does not reduce to Q");
  std::sort(blocks.begin(), blocks.end(), [](const Vec& x, const Vec& y) {
    return x.front().first < y.front().first ||
           (x.front().first == y.front().first && x.size() < y.size());
  });
  return blocks;
}

}  // namespace ratdg
