#include "ratdg/cdga.hpp"

#include <algorithm>
#include <functional>

#include "ratdg/errors.hpp"

namespace ratdg {

namespace {

// Coordinates against a fixed list of independent vectors.
class SpanCoords {
 public:
  explicit SpanCoords(const std::vector<Vec>& basis) : ech_(true) {
    for (size_t i = 0; i < basis.size(); ++i)
      if (!ech_.insert(basis[i], static_cast<int>(i)))
        throw std::logic_error("basis vectors are dependent");
    ech_.make_reduced();
  }
  // Throws if v is outside the span.
  Vec operator()(const Vec& v) const {
    if (!ech_.contains(v)) throw std::logic_error("vector outside the span");
    return ech_.coordinates(v);
  }
  bool contains(const Vec& v) const { return ech_.contains(v); }

 private:
  Echelon ech_;
};

int koszul(int a, int b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

}  // namespace

FiniteCdga::FiniteCdga(GradedVectorSpace space, const Table& table, Vec unit, std::vector<Vec> d,
                       std::optional<Vec> augmentation, bool check)
    : space_(std::move(space)), rows_(space_.size()), unit_(std::move(unit)), d_(std::move(d)),
      aug_(std::move(augmentation)) {
  const int n = space_.size();
  if (static_cast<int>(d_.size()) != n) throw std::invalid_argument("differential size mismatch");
  std::map<std::pair<int, int>, Vec> full;
  for (const auto& [ij, v] : table) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("table index out of range");
    if (is_zero(v)) continue;
    Vec sw = scaled(v, koszul(degree(i), degree(j)));
    auto put = [&](std::pair<int, int> key, const Vec& val) {
      auto it = full.find(key);
      if (it == full.end()) {
        full.emplace(key, val);
      } else if (check && it->second != val) {
        throw AxiomViolation("product " + space_.label(key.first) + "*" + space_.label(key.second) +
                             " is not graded commutative");
      }
    };
    put({i, j}, v);
    put({j, i}, sw);
  }
  // entries given in one order only must not be contradicted by a zero
  if (check) {
    for (const auto& [ij, v] : table) {
      if (!is_zero(v)) continue;
      if (full.count({ij.second, ij.first}))
        throw AxiomViolation("product table is not graded commutative");
    }
  }
  for (auto& [ij, v] : full) rows_[ij.first].emplace_back(ij.second, std::move(v));
  if (check) check_axioms();
}

Vec FiniteCdga::mul_basis(int i, int j) const {
  const auto& row = rows_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const std::pair<int, Vec>& e, int k) { return e.first < k; });
  if (it == row.end() || it->first != j) return {};
  return it->second;
}

Vec FiniteCdga::mul(const Vec& a, const Vec& b) const {
  Vec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      Vec p = mul_basis(i, j);
      if (!p.empty()) axpy(out, x * y, p);
    }
  return out;
}

Vec FiniteCdga::d(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, d_.at(i));
  return out;
}

Q FiniteCdga::augment(const Vec& v) const {
  if (!aug_) throw NoAugmentation("cdga has no augmentation");
  Q s = 0;
  for (const auto& [i, c] : v) s += c * coeff(*aug_, i);
  return s;
}

FiniteCdga::Table FiniteCdga::table() const {
  Table t;
  for (int i = 0; i < dim(); ++i)
    for (const auto& [j, v] : rows_[i])
      if (i <= j) t[{i, j}] = v;
  return t;
}

void FiniteCdga::check_axioms() const {
  const int n = dim();
  auto lab = [&](int i) { return space_.label(i); };
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : rows_[i]) {
      auto deg = space_.degree_of(v);
      if (deg && *deg != degree(i) + degree(j))
        throw DegreeMismatch("product " + lab(i) + "*" + lab(j) + " has the wrong degree");
    }
  for (int i = 0; i < n; ++i) {
    auto deg = space_.degree_of(d_[i]);
    if (deg && *deg != degree(i) - 1) throw DegreeMismatch("d(" + lab(i) + ") has the wrong degree");
  }
  ChainComplex(space_, d_);  // d^2 = 0
  if (n == 0) {
    if (!unit_.empty()) throw AxiomViolation("zero algebra with nonzero unit");
    if (aug_) throw AxiomViolation("the zero algebra admits no augmentation");
    return;
  }
  if (space_.degree_of(unit_).value_or(0) != 0) throw DegreeMismatch("unit is not in degree 0");
  for (int i = 0; i < n; ++i) {
    Vec b = unit_vec(i);
    if (mul(unit_, b) != b) throw AxiomViolation("unit fails on " + lab(i));
  }
  if (!is_zero(d(unit_))) throw AxiomViolation("d(1) != 0");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec bi = unit_vec(i), bj = unit_vec(j);
      Vec lhs = d(mul_basis(i, j));
      Vec rhs = mul(d_[i], bj);
      axpy(rhs, parity_sign(degree(i)), mul(bi, d_[j]));
      if (lhs != rhs) throw AxiomViolation("Leibniz fails on " + lab(i) + ", " + lab(j));
      if (i == j && is_odd(degree(i)) && !mul_basis(i, i).empty())
        throw AxiomViolation("odd element " + lab(i) + " does not square to zero");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec ij = mul_basis(i, j);
      for (int k = 0; k < n; ++k) {
        Vec lhs = mul(ij, unit_vec(k));
        Vec rhs = mul(unit_vec(i), mul_basis(j, k));
        if (lhs != rhs)
          throw AxiomViolation("associativity fails on " + lab(i) + ", " + lab(j) + ", " + lab(k));
      }
    }
  if (aug_) {
    for (const auto& [i, c] : *aug_)
      if (degree(i) != 0) throw DegreeMismatch("augmentation nonzero outside degree 0");
    if (augment(unit_) != 1) throw AxiomViolation("augmentation does not preserve the unit");
    for (int i = 0; i < n; ++i) {
      if (!is_zero(augment(d_[i]))) throw AxiomViolation("augmentation is not a chain map");
      for (int j = 0; j < n; ++j)
        if (augment(mul_basis(i, j)) != augment(unit_vec(i)) * augment(unit_vec(j)))
          throw AxiomViolation("augmentation is not multiplicative");
    }
  }
}

FiniteCdga FiniteCdga::with_augmentation(const Vec& aug) const {
  return FiniteCdga(space_, table(), unit_, d_, aug, true);
}

FiniteCdga FiniteCdga::ground() {
  GradedVectorSpace s;
  s.add("1", 0);
  return FiniteCdga(s, {{{0, 0}, unit_vec(0)}}, unit_vec(0), {Vec{}}, unit_vec(0));
}

FiniteCdga FiniteCdga::product_of_fields(int k) {
  if (k < 1) throw std::invalid_argument("need at least one factor");
  GradedVectorSpace s;
  Table t;
  Vec unit;
  for (int i = 0; i < k; ++i) {
    s.add("e" + std::to_string(i + 1), 0);
    t[{i, i}] = unit_vec(i);
    unit.emplace_back(i, 1);
  }
  return FiniteCdga(s, t, unit, std::vector<Vec>(k), unit_vec(k - 1));
}

FiniteCdga FiniteCdga::dual_numbers() {
  GradedVectorSpace s;
  s.add("1", 0);
  s.add("eps", 0);
  Table t{{{0, 0}, unit_vec(0)}, {{0, 1}, unit_vec(1)}};
  return FiniteCdga(s, t, unit_vec(0), std::vector<Vec>(2), unit_vec(0));
}

FiniteCdga FiniteCdga::terminal() { return FiniteCdga(GradedVectorSpace{}, {}, {}, {}); }

FiniteCdga FiniteCdga::square_zero(int c) {
  if (c == 0) throw std::invalid_argument("use dual_numbers for a degree-0 square-zero class");
  GradedVectorSpace s;
  s.add("1", 0);
  s.add("u", -c);
  Table t{{{0, 0}, unit_vec(0)}, {{0, 1}, unit_vec(1)}};
  return FiniteCdga(s, t, unit_vec(0), std::vector<Vec>(2), unit_vec(0));
}

FiniteCdga product(const FiniteCdga& a, const FiniteCdga& b) {
  GradedVectorSpace s;
  const int na = a.dim();
  for (int i = 0; i < na; ++i) s.add("(" + a.space().label(i) + ",0)", a.degree(i));
  for (int i = 0; i < b.dim(); ++i) s.add("(0," + b.space().label(i) + ")", b.degree(i));
  auto shift = [&](const Vec& v) {
    Vec out;
    for (const auto& [i, c] : v) out.emplace_back(i + na, c);
    return out;
  };
  FiniteCdga::Table t;
  for (const auto& [ij, v] : a.table()) t[ij] = v;
  for (const auto& [ij, v] : b.table()) t[{ij.first + na, ij.second + na}] = shift(v);
  std::vector<Vec> d = a.differential();
  for (const auto& v : b.differential()) d.push_back(shift(v));
  Vec unit = add(a.unit(), shift(b.unit()));
  std::optional<Vec> aug;
  if (b.augmentation()) aug = shift(*b.augmentation());
  return FiniteCdga(s, t, unit, d, aug);
}

FiniteCdga tensor(const FiniteCdga& a, const FiniteCdga& b) {
  GradedVectorSpace s;
  const int nb = b.dim();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < nb; ++j)
      s.add(a.space().label(i) + "@" + b.space().label(j), a.degree(i) + b.degree(j));
  auto pair_vec = [&](const Vec& x, const Vec& y, const Q& c) {
    std::vector<std::pair<int, Q>> terms;
    for (const auto& [i, p] : x)
      for (const auto& [j, q] : y) terms.emplace_back(i * nb + j, c * p * q);
    return from_terms(std::move(terms));
  };
  FiniteCdga::Table t;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < nb; ++l) {
          int x = i * nb + j, y = k * nb + l;
          if (x > y) continue;
          Vec v = pair_vec(a.mul_basis(i, k), b.mul_basis(j, l), koszul(b.degree(j), a.degree(k)));
          if (!v.empty()) t[{x, y}] = v;
        }
  std::vector<Vec> d;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < nb; ++j) {
      Vec v = pair_vec(a.differential()[i], unit_vec(j), 1);
      axpy(v, parity_sign(a.degree(i)), pair_vec(unit_vec(i), b.differential()[j], 1));
      d.push_back(v);
    }
  Vec unit = pair_vec(a.unit(), b.unit(), 1);
  std::optional<Vec> aug;
  if (a.augmentation() && b.augmentation()) aug = pair_vec(*a.augmentation(), *b.augmentation(), 1);
  return FiniteCdga(s, t, unit, d, aug);
}

namespace {

// Sub-cdga (possibly with a different unit) spanned by homogeneous vectors.
FiniteCdga restrict_to(const FiniteCdga& a, const std::vector<Vec>& basis, const Vec& unit,
                       const std::vector<std::string>& labels) {
  SpanCoords coords(basis);
  GradedVectorSpace s;
  for (size_t i = 0; i < basis.size(); ++i) s.add(labels[i], a.space().degree_of(basis[i]).value());
  FiniteCdga::Table t;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i; j < basis.size(); ++j) {
      Vec v = coords(a.mul(basis[i], basis[j]));
      if (!v.empty()) t[{static_cast<int>(i), static_cast<int>(j)}] = v;
    }
  std::vector<Vec> d;
  for (const auto& b : basis) d.push_back(coords(a.d(b)));
  std::optional<Vec> aug;
  if (a.augmentation() && !basis.empty() && a.augment(unit) == 1) {
    Vec f;
    for (size_t i = 0; i < basis.size(); ++i) {
      Q v = a.augment(basis[i]);
      if (!is_zero(v)) f.emplace_back(static_cast<int>(i), v);
    }
    aug = f;
  }
  return FiniteCdga(s, t, basis.empty() ? Vec{} : coords(unit), d, aug);
}

}  // namespace

FiniteCdga change_basis(const FiniteCdga& a, const std::vector<Vec>& basis) {
  if (static_cast<int>(basis.size()) != a.dim()) throw std::invalid_argument("basis has the wrong size");
  std::vector<std::string> labels;
  for (size_t i = 0; i < basis.size(); ++i) labels.push_back("v" + std::to_string(i));
  return restrict_to(a, basis, a.unit(), labels);
}

CohomologyAlgebra cohomology_algebra(const FiniteCdga& a) {
  HomologyReport h = homology(a.complex());
  std::vector<Vec> reps;
  std::vector<std::string> labels;
  Echelon ech(true);
  int nb = 0;
  for (const auto& [n, hd] : h.degrees)
    for (const auto& b : hd.boundary_basis) ech.insert(b, -1 - nb++);
  for (const auto& [n, hd] : h.degrees)
    for (const auto& r : hd.representatives) {
      labels.push_back("[" + std::to_string(reps.size()) + "]");
      ech.insert(r, static_cast<int>(reps.size()));
      reps.push_back(r);
    }
  ech.make_reduced();
  auto classes = [ech](const Vec& z) {
    Vec c;
    for (const auto& [i, v] : ech.coordinates(z))
      if (i >= 0) c.emplace_back(i, v);
    return c;
  };
  GradedVectorSpace s;
  for (size_t i = 0; i < reps.size(); ++i) s.add(labels[i], a.space().degree_of(reps[i]).value());
  FiniteCdga::Table t;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i; j < reps.size(); ++j) {
      Vec v = classes(a.mul(reps[i], reps[j]));
      if (!v.empty()) t[{static_cast<int>(i), static_cast<int>(j)}] = v;
    }
  Vec unit = reps.empty() ? Vec{} : classes(a.unit());
  std::optional<Vec> aug;
  if (a.augmentation() && !reps.empty()) {
    Vec f;
    for (size_t i = 0; i < reps.size(); ++i) {
      Q v = a.augment(reps[i]);
      if (!is_zero(v)) f.emplace_back(static_cast<int>(i), v);
    }
    aug = f;
  }
  FiniteCdga alg(s, t, unit, std::vector<Vec>(reps.size()), aug);
  return {std::move(alg), std::move(reps), classes};
}

FiniteCommutativeAlgebra h0_algebra(const CohomologyAlgebra& h) {
  const auto& A = h.algebra;
  const auto& zero = A.space().in_degree(0);
  std::vector<std::string> labels;
  std::map<int, int> local;
  for (int i : zero) {
    local[i] = static_cast<int>(labels.size());
    labels.push_back(A.space().label(i));
  }
  auto to_local = [&](const Vec& v) {
    Vec out;
    for (const auto& [i, c] : v) out.emplace_back(local.at(i), c);
    return out;
  };
  std::vector<std::vector<Vec>> table(zero.size(), std::vector<Vec>(zero.size()));
  for (size_t i = 0; i < zero.size(); ++i)
    for (size_t j = 0; j < zero.size(); ++j) table[i][j] = to_local(A.mul_basis(zero[i], zero[j]));
  return FiniteCommutativeAlgebra(labels, table, to_local(A.unit()));
}

Localization localize(const FiniteCdga& a, const Vec& u) {
  const int n = a.dim();
  std::optional<int> deg = a.space().degree_of(u);
  if (deg && is_odd(*deg))
    throw OddDegreeUnit("only the terminal algebra inverts an odd-degree element");
  if (!is_zero(a.d(u))) throw NonCocycle("the element to invert is not a cocycle");
  Localization out;
  // Fitting decomposition of multiplication by u; in nonzero degree u is
  // nilpotent and the stable image is 0.
  Matrix Lu(n, n);
  for (int i = 0; i < n; ++i) Lu.col[i] = a.mul(u, unit_vec(i));
  Matrix power = Matrix::identity(n);
  int r = n + 1;
  while (true) {
    Matrix next = Lu.compose(power);
    int rk = rank(next);
    power = next;
    if (rk == r) break;
    r = rk;
  }
  Vec e;
  if (r > 0) {
    std::vector<Vec> img = image_basis(power);
    std::vector<Vec> ker = kernel_basis(power);
    Matrix both(n, n);
    for (size_t i = 0; i < img.size(); ++i) both.col[i] = img[i];
    for (size_t i = 0; i < ker.size(); ++i) both.col[img.size() + i] = ker[i];
    auto c = solve(both, a.unit());
    if (!c) throw std::logic_error("Fitting decomposition failed");
    for (const auto& [i, v] : *c)
      if (i < static_cast<int>(img.size())) axpy(e, v, img[i]);
  }
  out.idempotent = e;
  if (e.empty()) {
    out.algebra = FiniteCdga::terminal();
    out.map.assign(n, Vec{});
    return out;
  }
  std::vector<Vec> basis;
  std::vector<std::string> labels;
  std::vector<int> chosen;
  Echelon ech;
  for (int i = 0; i < n; ++i) {
    Vec v = a.mul(e, unit_vec(i));
    if (ech.insert(v)) {
      basis.push_back(v);
      chosen.push_back(i);
      labels.push_back(a.space().label(i));
    }
  }
  out.algebra = restrict_to(a, basis, e, labels);
  SpanCoords coords(basis);
  for (int i = 0; i < n; ++i) out.map.push_back(coords(a.mul(e, unit_vec(i))));
  return out;
}

std::vector<SplitFactor> idempotent_split(const FiniteCdga& a) {
  CohomologyAlgebra h = cohomology_algebra(a);
  if (h.algebra.space().dim(0) == 0) return {};
  FiniteCommutativeAlgebra h0 = h0_algebra(h);
  const auto& zero = h.algebra.space().in_degree(0);
  std::vector<SplitFactor> out;
  for (const auto& cls : idempotents(h0)) {
    Vec lift;
    for (const auto& [k, c] : cls) axpy(lift, c, h.representatives[zero[k]]);
    out.push_back({lift, localize(a, lift)});
  }
  return out;
}

std::map<int, int> derivations_report(const FiniteCdga& a) {
  if (!a.augmentation()) throw NoAugmentation("derivations need an augmentation");
  const int n = a.dim();
  // I = ker(aug), homogeneous basis
  std::vector<Vec> ideal;
  int pivot = -1;
  for (const auto& [i, c] : *a.augmentation())
    if (pivot < 0) pivot = i;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    Vec v = unit_vec(i);
    if (pivot >= 0 && a.degree(i) == 0) axpy(v, -a.augment(v) / a.augment(unit_vec(pivot)), unit_vec(pivot));
    ideal.push_back(v);
  }
  Echelon sq(true);
  int id = 0;
  for (size_t i = 0; i < ideal.size(); ++i)
    for (size_t j = i; j < ideal.size(); ++j) {
      Vec p = a.mul(ideal[i], ideal[j]);
      if (!p.empty()) sq.insert(p, -1 - id++);
    }
  std::vector<Vec> quot;
  GradedVectorSpace qs;
  for (const auto& v : ideal) {
    if (sq.insert(v, static_cast<int>(quot.size()))) {
      qs.add("q" + std::to_string(quot.size()), a.space().degree_of(v).value());
      quot.push_back(v);
    }
  }
  sq.make_reduced();
  std::vector<Vec> d;
  for (const auto& v : quot) {
    Vec c;
    for (const auto& [i, x] : sq.coordinates(a.d(v)))
      if (i >= 0) c.emplace_back(i, x);
    d.push_back(c);
  }
  HomologyReport h = homology(ChainComplex(qs, d));
  std::map<int, int> out;
  for (const auto& [deg, hd] : h.degrees)
    if (hd.dim) out[-deg] = hd.dim;
  return out;
}

// ---------------------------------------------------------------- PolyCdga

PolyCdga::PolyCdga(FiniteCdga base, std::vector<Gen> gens)
    : base_(std::move(base)), gens_(std::move(gens)), dgen_(gens_.size()) {}

void PolyCdga::set_differential(int gen, Elem value) { dgen_.at(gen) = std::move(value); }

void PolyCdga::add_into(Elem& acc, const Elem& x, const Q& c) {
  if (ratdg::is_zero(c)) return;
  for (const auto& [k, v] : x) {
    if (ratdg::is_zero(v)) continue;
    auto it = acc.find(k);
    if (it == acc.end()) {
      acc.emplace(k, c * v);
    } else {
      it->second += c * v;
      if (ratdg::is_zero(it->second)) acc.erase(it);
    }
  }
}

PolyCdga::Elem PolyCdga::one() const { return from_base(base_.unit()); }

PolyCdga::Elem PolyCdga::gen(int k) const {
  Elem out;
  for (const auto& [i, c] : base_.unit()) out[{i, Mono{{k, 1}}}] = c;
  return out;
}

PolyCdga::Elem PolyCdga::from_base(const Vec& b) const {
  Elem out;
  for (const auto& [i, c] : b) out[{i, Mono{}}] = c;
  return out;
}

int PolyCdga::mono_degree(const Mono& m) const {
  int s = 0;
  for (const auto& [g, e] : m) s += gens_[g].degree * e;
  return s;
}

int PolyCdga::word_length(const Mono& m) {
  int s = 0;
  for (const auto& [g, e] : m) s += e;
  return s;
}

PolyCdga::Elem PolyCdga::mul(const Elem& a, const Elem& b) const {
  Elem out;
  for (const auto& [ka, x] : a)
    for (const auto& [kb, y] : b) {
      const auto& [ia, ma] = ka;
      const auto& [ib, mb] = kb;
      Vec bb = base_.mul_basis(ia, ib);
      if (bb.empty()) continue;
      int sign = koszul(mono_degree(ma), base_.degree(ib));
      // merge the generator words, counting odd transpositions
      bool dead = false;
      for (const auto& [g, e] : mb) {
        if (!is_odd(gens_[g].degree)) continue;
        for (const auto& [h, f] : ma) {
          if (!is_odd(gens_[h].degree)) continue;
          if (h == g) dead = true;
          else if (h > g) sign = -sign;
        }
      }
      if (dead) continue;
      Mono m = mono_mul(ma, mb);
      Elem term;
      for (const auto& [i, c] : bb) term[{i, m}] = c;
      add_into(out, term, x * y * sign);
    }
  return out;
}

PolyCdga::Elem PolyCdga::d(const Elem& a) const {
  Elem out;
  for (const auto& [k, c] : a) {
    const auto& [i, m] = k;
    // d(b x^m) = db x^m + (-1)^|b| b d(x^m)
    Elem xm;
    for (const auto& [j, u] : base_.unit()) xm[{j, m}] = u;
    Elem db = from_base(base_.differential()[i]);
    add_into(out, mul(db, xm), c);
    // d(x^m) by Leibniz over the factors in order
    Elem dxm;
    Elem prefix = one();
    for (size_t f = 0; f < m.size(); ++f) {
      auto [g, e] = m[f];
      Mono rest(m.begin() + f + 1, m.end());
      Elem restE;
      for (const auto& [j, u] : base_.unit()) restE[{j, rest}] = u;
      // d(x_g^e) = e x_g^{e-1} dx_g (odd generators have e = 1)
      Elem power;
      for (const auto& [j, u] : base_.unit()) {
        Mono pm;
        if (e > 1) pm.emplace_back(g, e - 1);
        power[{j, pm}] = u;
      }
      Elem dpow = mul(power, dgen_[g]);
      Elem term = mul(mul(prefix, dpow), restE);
      add_into(dxm, term, Q(e) * parity_sign(mono_degree(Mono(m.begin(), m.begin() + f))));
      prefix = mul(prefix, gen_power(g, e));
    }
    add_into(out, mul(from_base(unit_vec(i)), dxm), c * parity_sign(base_.degree(i)));
  }
  return out;
}

PolyCdga::Elem PolyCdga::gen_power(int g, int e) const {
  Elem out;
  for (const auto& [j, u] : base_.unit()) out[{j, Mono{{g, e}}}] = u;
  return out;
}

PolyCdga::Truncation PolyCdga::truncation(int K) const {
  Truncation t;
  std::vector<Mono> monos;
  Mono cur;
  std::function<void(int, int)> rec = [&](int g, int left) {
    if (g == static_cast<int>(gens_.size())) {
      monos.push_back(cur);
      return;
    }
    int maxe = is_odd(gens_[g].degree) ? std::min(1, left) : left;
    for (int e = 0; e <= maxe; ++e) {
      if (e) cur.emplace_back(g, e);
      rec(g + 1, left - e);
      if (e) cur.pop_back();
    }
  };
  rec(0, K);
  std::stable_sort(monos.begin(), monos.end(),
                   [](const Mono& x, const Mono& y) { return word_length(x) < word_length(y); });
  for (const auto& m : monos)
    for (int i = 0; i < base_.dim(); ++i) {
      t.index[{i, m}] = static_cast<int>(t.keys.size());
      t.keys.emplace_back(i, m);
      Elem e;
      e[{i, m}] = 1;
      t.space.add(to_string(e), base_.degree(i) + mono_degree(m));
    }
  return t;
}

Vec PolyCdga::coordinates(const Truncation& t, const Elem& e) const {
  std::vector<std::pair<int, Q>> terms;
  for (const auto& [k, c] : e) {
    auto it = t.index.find(k);
    if (it == t.index.end()) throw TruncationTooLarge("element leaves the word-length truncation");
    terms.emplace_back(it->second, c);
  }
  return from_terms(std::move(terms));
}

ChainComplex PolyCdga::complex(const Truncation& t) const {
  std::vector<Vec> d;
  for (const auto& k : t.keys) {
    Elem e;
    e[k] = 1;
    d.push_back(coordinates(t, this->d(e)));
  }
  return ChainComplex(t.space, d);
}

std::map<int, int> PolyCdga::persistent_homology(int K) const {
  Truncation lo = truncation(K - 1), hi = truncation(K);
  HomologyReport hl = homology(complex(lo));
  HomologyReport hh = homology(complex(hi));
  std::map<int, int> out;
  for (const auto& [n, h] : hl.degrees) {
    Echelon span;
    auto it = hh.degrees.find(n);
    if (it != hh.degrees.end())
      for (const auto& b : it->second.boundary_basis) span.insert(b);
    int base = span.rank();
    for (const auto& z : h.representatives) {
      Vec img;
      for (const auto& [q, c] : z) img.emplace_back(hi.index.at(lo.keys[q]), c);
      span.insert(from_terms(img));
    }
    out[n] = span.rank() - base;
  }
  return out;
}

std::string PolyCdga::to_string(const Elem& e) const {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : e) {
    if (!out.empty()) out += " + ";
    // over the ground field the base label is just noise
    bool bare = base_.dim() == 1 && !k.second.empty();
    std::string term = bare ? "" : base_.space().label(k.first);
    for (const auto& [g, p] : k.second) {
      if (!term.empty()) term += "*";
      term += gens_[g].name;
      if (p > 1) term += "^" + std::to_string(p);
    }
    out += (c != 1 ? ratdg::to_string(c) + "*" : "") + term;
  }
  return out;
}

Vec PathObject::eval(const PolyCdga::Elem& e, int at) const {
  Vec out;
  for (const auto& [k, c] : e) {
    bool has_dt = false;
    int tp = 0;
    for (const auto& [g, p] : k.second) {
      if (g == 1) has_dt = true;
      else tp = p;
    }
    if (has_dt) continue;
    if (at == 0 && tp > 0) continue;
    axpy(out, c, unit_vec(k.first));
  }
  return out;
}

PolyCdga::Elem PathObject::include(const Vec& v) const { return cdga.from_base(v); }

PathObject path_object(const FiniteCdga& D) {
  PolyCdga p(D, {{"t", 0}, {"dt", -1}});
  p.set_differential(0, p.gen(1));
  return {std::move(p)};
}

PolyCdga localization_cell_model(const FiniteCdga& a, const Vec& u) {
  std::optional<int> deg = a.space().degree_of(u);
  int h = deg.value_or(0);
  if (is_odd(h)) throw OddDegreeUnit("only the terminal algebra inverts an odd-degree element");
  if (!is_zero(a.d(u))) throw NonCocycle("the element to invert is not a cocycle");
  PolyCdga p(a, {{"y", -h}, {"z", 1}});
  PolyCdga::Elem dz = p.mul(p.from_base(u), p.gen(0));
  PolyCdga::add_into(dz, p.one(), -1);
  p.set_differential(1, dz);
  return p;
}

FiniteCdga omega_quotient(int n, int D) {
  DeRhamForms f(n, D);
  FiniteCdga::Table t;
  for (int i = 0; i < f.size(); ++i)
    for (int j = i; j < f.size(); ++j) {
      Vec v = f.coordinates(f.basis_form(i) * f.basis_form(j), true);
      if (!v.empty()) t[{i, j}] = v;
    }
  std::vector<Vec> d;
  for (int i = 0; i < f.size(); ++i) d.push_back(f.coordinates(f.basis_form(i).d()));
  return FiniteCdga(f.space(), t, unit_vec(0), d, unit_vec(0));
}

TensorDglaForms tensor_dgla_forms(const Dgla& g, int n, int D, bool check) {
  DeRhamForms f(n, D);
  const int nf = f.size();
  GradedVectorSpace s;
  std::vector<int> weights;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < nf; ++j) {
      s.add(g.label(i) + "@" + f.space().label(j), g.degree(i) + f.space().degree(j));
      if (g.has_weights()) weights.push_back(g.weights()[i]);
    }
  // products of basis forms
  std::vector<std::vector<Vec>> fprod(nf, std::vector<Vec>(nf));
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < nf; ++b) fprod[a][b] = f.coordinates(f.basis_form(a) * f.basis_form(b), true);
  Dgla::BracketTable br;
  for (const auto& [ij, v] : g.bracket_table()) {
    auto [i, k] = ij;
    for (int a = 0; a < nf; ++a)
      for (int b = 0; b < nf; ++b) {
        if (fprod[a][b].empty()) continue;
        int x = i * nf + a, y = k * nf + b;
        int sign = koszul(f.space().degree(a), g.degree(k));
        std::vector<std::pair<int, Q>> terms;
        for (const auto& [p, c] : v)
          for (const auto& [q, e] : fprod[a][b]) terms.emplace_back(p * nf + q, c * e * sign);
        Vec val = from_terms(std::move(terms));
        if (val.empty()) continue;
        br[{x, y}] = val;
        // the table only stores i <= k; fill the mirrored pair too
        if (i != k) {
          int x2 = k * nf + b, y2 = i * nf + a;
          int s2 = koszul(f.space().degree(b), g.degree(i));
          Vec mirror = g.bracket_basis(k, i);
          std::vector<std::pair<int, Q>> t2;
          for (const auto& [p, c] : mirror)
            for (const auto& [q, e] : fprod[b][a]) t2.emplace_back(p * nf + q, c * e * s2);
          Vec v2 = from_terms(std::move(t2));
          if (!v2.empty()) br[{x2, y2}] = v2;
        }
      }
  }
  std::vector<Vec> d;
  for (int i = 0; i < g.dim(); ++i)
    for (int a = 0; a < nf; ++a) {
      std::vector<std::pair<int, Q>> terms;
      for (const auto& [p, c] : g.d_basis(i)) terms.emplace_back(p * nf + a, c);
      int sign = parity_sign(g.degree(i));
      for (const auto& [q, c] : f.coordinates(f.basis_form(a).d())) terms.emplace_back(i * nf + q, c * sign);
      d.push_back(from_terms(std::move(terms)));
    }
  Dgla out(s, br, d, weights, check);
  return {std::move(out), std::move(f)};
}

}  // namespace ratdg
