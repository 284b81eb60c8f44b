#include "ratdg/dgla.hpp"

#include <algorithm>
#include <numeric>

#include "ratdg/errors.hpp"
#include "ratdg/free_lie.hpp"

namespace ratdg {

namespace {

long long pair_key(int i, int j, int n) { return static_cast<long long>(i) * n + j; }

std::string show(const GradedVectorSpace& sp, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += c.get_str() + "*" + sp.label(i);
  }
  return s;
}

}  // namespace

Dgla::Dgla(GradedVectorSpace space, const BracketTable& brackets, std::vector<Vec> d,
           std::vector<int> weights, bool check)
    : space_(std::move(space)), d_(std::move(d)), weights_(std::move(weights)) {
  const int n = space_.size();
  if (d_.empty()) d_.assign(n, Vec{});
  if (static_cast<int>(d_.size()) != n)
    throw AxiomViolation("differential size does not match basis");
  if (!weights_.empty() && static_cast<int>(weights_.size()) != n)
    throw AxiomViolation("weight list size does not match basis");
  for (const auto& [ij, v] : brackets) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n) throw AxiomViolation("bracket index out of range");
    for (const auto& [k, c] : v)
      if (k < 0 || k >= n) throw AxiomViolation("bracket value out of range");
    Vec canon = v;
    int a = i, b = j;
    if (i > j) {
      std::swap(a, b);
      canon = scaled(v, -parity_sign(static_cast<long>(degree(i)) * degree(j)));
    }
    long long key = pair_key(a, b, n);
    auto it = br_.find(key);
    if (it != br_.end()) {
      if (it->second != canon)
        throw AxiomViolation("bracket table violates graded antisymmetry at [" + label(i) + "," +
                             label(j) + "]");
    } else if (!canon.empty()) {
      br_.emplace(key, std::move(canon));
    }
  }
  if (check) check_axioms();
}

Vec Dgla::d(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, d_.at(i));
  return out;
}

Vec Dgla::bracket_basis(int i, int j) const {
  const int n = dim();
  if (i <= j) {
    auto it = br_.find(pair_key(i, j, n));
    return it == br_.end() ? Vec{} : it->second;
  }
  auto it = br_.find(pair_key(j, i, n));
  if (it == br_.end()) return {};
  return scaled(it->second, -parity_sign(static_cast<long>(degree(i)) * degree(j)));
}

Vec Dgla::bracket(const Vec& u, const Vec& v) const {
  Vec out;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v) {
      Vec e = bracket_basis(i, j);
      if (!e.empty()) axpy(out, a * b, e);
    }
  return out;
}

Dgla::BracketTable Dgla::bracket_table() const {
  BracketTable t;
  const int n = dim();
  for (const auto& [key, v] : br_) t[{static_cast<int>(key / n), static_cast<int>(key % n)}] = v;
  return t;
}

int Dgla::max_weight() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

void Dgla::check_axioms() const {
  const int n = dim();
  // degrees and antisymmetry on the diagonal
  for (int i = 0; i < n; ++i) {
    for (const auto& [k, c] : d_[i])
      if (k < 0 || k >= n || degree(k) != degree(i) - 1)
        throw AxiomViolation("d(" + label(i) + ") is not of degree -1");
    if (!is_odd(degree(i)) && !bracket_basis(i, i).empty())
      throw AxiomViolation("[" + label(i) + "," + label(i) + "] must vanish in even degree");
  }
  for (const auto& [key, v] : br_) {
    int i = static_cast<int>(key / n), j = static_cast<int>(key % n);
    for (const auto& [k, c] : v)
      if (degree(k) != degree(i) + degree(j))
        throw DegreeMismatch("[" + label(i) + "," + label(j) + "] has wrong degree");
  }
  if (has_weights()) {
    for (int i = 0; i < n; ++i) {
      if (weights_[i] < 1) throw AxiomViolation("weights must be positive");
      for (const auto& [k, c] : d_[i])
        if (weights_[k] < weights_[i])
          throw AxiomViolation("d lowers weight at " + label(i));
    }
    for (const auto& [key, v] : br_) {
      int i = static_cast<int>(key / n), j = static_cast<int>(key % n);
      for (const auto& [k, c] : v)
        if (weights_[k] < weights_[i] + weights_[j])
          throw AxiomViolation("bracket [" + label(i) + "," + label(j) + "] lowers weight");
    }
  }
  // d^2 = 0
  for (int i = 0; i < n; ++i)
    if (!d(d_[i]).empty()) throw AxiomViolation("d^2 != 0 on " + label(i));

  // Order basis by weight so weight pruning can cut loops short.
  std::vector<int> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  auto w = [&](int i) { return has_weights() ? weights_[i] : 0; };
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return w(a) < w(b); });
  const int wmax = has_weights() ? max_weight() : 0;
  auto too_heavy = [&](int s) { return has_weights() && s > wmax; };

  // Leibniz: d[u,v] = [du,v] + (-1)^{|u|}[u,dv]
  for (int p = 0; p < n; ++p) {
    int i = ord[p];
    for (int q = p; q < n; ++q) {
      int j = ord[q];
      if (too_heavy(w(i) + w(j))) break;
      Vec lhs = d(bracket_basis(i, j));
      Vec rhs = bracket(d_[i], unit_vec(j));
      axpy(rhs, parity_sign(degree(i)), bracket(unit_vec(i), d_[j]));
      if (lhs != rhs)
        throw AxiomViolation("Leibniz rule fails on (" + label(i) + ", " + label(j) +
                             "): " + show(space_, sub(lhs, rhs)));
    }
  }
  // Jacobi in cyclic form
  for (int p = 0; p < n; ++p) {
    int a = ord[p];
    for (int q = p; q < n; ++q) {
      int b = ord[q];
      if (too_heavy(w(a) + 2 * w(b))) break;
      for (int r = q; r < n; ++r) {
        int c = ord[r];
        if (too_heavy(w(a) + w(b) + w(c))) break;
        Vec bc = bracket_basis(b, c), ca = bracket_basis(c, a), ab = bracket_basis(a, b);
        if (bc.empty() && ca.empty() && ab.empty()) continue;
        long da = degree(a), db = degree(b), dc = degree(c);
        Vec j = scaled(bracket(unit_vec(a), bc), parity_sign(da * dc));
        axpy(j, parity_sign(db * da), bracket(unit_vec(b), ca));
        axpy(j, parity_sign(dc * db), bracket(unit_vec(c), ab));
        if (!j.empty())
          throw AxiomViolation("Jacobi identity fails on (" + label(a) + ", " + label(b) + ", " +
                               label(c) + ")");
      }
    }
  }
}

Dgla sphere_dgla() {
  GradedVectorSpace sp;
  sp.add("x", -1);
  sp.add("[x,x]", -2);
  Dgla::BracketTable br{{{0, 0}, unit_vec(1)}};
  std::vector<Vec> d{unit_vec(1, Q(-1, 2)), {}};
  return Dgla(sp, br, d, {1, 2});
}

Dgla abelian_dgla(const GradedVectorSpace& space, std::vector<Vec> d) {
  std::vector<int> w(space.size(), 1);
  return Dgla(space, {}, std::move(d), w);
}

McCheck is_mc(const Dgla& g, const Vec& xi) {
  auto deg = g.space().degree_of(xi);
  if (deg && *deg != -1)
    throw DegreeMismatch("MC candidate must have degree -1, got " + std::to_string(*deg));
  McCheck r;
  r.residual = g.d(xi);
  axpy(r.residual, Q(1, 2), g.bracket(xi, xi));
  r.ok = r.residual.empty();
  return r;
}

Dgla twist(const Dgla& g, const Vec& xi) {
  if (!is_mc(g, xi).ok) throw NotMaurerCartan("element is not Maurer-Cartan");
  std::vector<Vec> d(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    d[i] = g.d_basis(i);
    axpy(d[i], 1, g.bracket(xi, unit_vec(i)));
  }
  Dgla out(g.space(), g.bracket_table(), d, g.weights());
  if (g.mc_element) out.mc_element = sub(*g.mc_element, xi);
  return out;
}

ConnectedCover connected_cover(const Dgla& g) {
  const auto& sp = g.space();
  // degree-0 kernel of d, in reduced form so coordinates are easy
  const auto& zero_cells = sp.in_degree(0);
  ChainComplex cx = g.complex();
  std::vector<Vec> ker_local = kernel_basis(cx.block(0));
  std::vector<Vec> ker;
  for (const auto& k : ker_local) {
    Vec v;
    for (const auto& [i, c] : k) v.emplace_back(zero_cells[i], c);
    ker.push_back(from_terms(std::move(v)));
  }
  GradedVectorSpace cs;
  std::vector<Vec> incl;
  std::vector<int> pos(g.dim(), -1);  // g index -> cover index (degree > 0 only)
  Echelon kernel_span(true);
  for (size_t k = 0; k < ker.size(); ++k) {
    std::string lab = ker[k].size() == 1 && ker[k][0].second == 1 ? sp.label(ker[k][0].first)
                                                                   : "z" + std::to_string(k);
    cs.add(lab, 0);
    kernel_span.insert(ker[k], static_cast<int>(incl.size()));
    incl.push_back(ker[k]);
  }
  kernel_span.make_reduced();
  for (int i = 0; i < g.dim(); ++i) {
    if (sp.degree(i) <= 0) continue;
    pos[i] = cs.size();
    cs.add(sp.label(i), sp.degree(i));
    incl.push_back(unit_vec(i));
  }
  auto to_cover = [&](const Vec& v) -> Vec {
    if (v.empty()) return {};
    int deg = *sp.degree_of(v);
    if (deg < 0) throw std::logic_error("connected cover: negative degree image");
    if (deg == 0) {
      if (!kernel_span.reduce(v).empty()) throw std::logic_error("connected cover: not a cycle");
      return kernel_span.coordinates(v);
    }
    Vec out;
    for (const auto& [i, c] : v) out.emplace_back(pos[i], c);
    return from_terms(std::move(out));
  };
  const int n = cs.size();
  Dgla::BracketTable br;
  std::vector<Vec> d(n);
  for (int a = 0; a < n; ++a) {
    d[a] = to_cover(g.d(incl[a]));
    for (int b = a; b < n; ++b) {
      Vec v = to_cover(g.bracket(incl[a], incl[b]));
      if (!v.empty()) br[{a, b}] = v;
    }
  }
  return {Dgla(cs, br, d), incl};
}

HomologyReport homology(const Dgla& g) { return homology(g.complex()); }

int nilpotency_bound(const Dgla& g) {
  if (g.has_weights()) return g.max_weight();
  // lower central series on the basis
  Echelon cur;
  for (int i = 0; i < g.dim(); ++i) cur.insert(unit_vec(i));
  for (int c = 1; c <= g.dim() + 1; ++c) {
    if (cur.rank() == 0) return c - 1;
    Echelon next;
    for (const auto& [p, row] : cur.rows())
      for (int i = 0; i < g.dim(); ++i) next.insert(g.bracket(unit_vec(i), row));
    if (next.rank() == cur.rank()) break;
    cur = std::move(next);
  }
  if (cur.rank() == 0) return g.dim() + 1;
  throw NotNilpotent("lower central series does not terminate");
}

Vec gauge_act(const Dgla& g, const Vec& a, const Vec& xi) {
  auto deg = g.space().degree_of(a);
  if (deg && *deg != 0) throw DegreeMismatch("gauge parameter must have degree 0");
  if (auto dx = g.space().degree_of(xi); dx && *dx != -1)
    throw DegreeMismatch("gauge action needs a degree -1 element");
  const int limit = g.dim() + 2;
  // e^{ad a} xi
  Vec out, term = xi;
  for (int k = 0; !term.empty(); ++k) {
    if (k > limit) throw NotNilpotent("ad(a) is not nilpotent on xi");
    axpy(out, 1, term);
    term = scaled(g.bracket(a, term), Q(1, k + 1));
  }
  // - sum_k ad_a^k (da) / (k+1)!
  term = g.d(a);
  Q fact = 1;
  for (int k = 0; !term.empty(); ++k) {
    if (k > limit) throw NotNilpotent("ad(a) is not nilpotent on da");
    fact *= (k + 1);
    axpy(out, -1 / fact, term);
    term = g.bracket(a, term);
  }
  return out;
}

Vec bch(const Dgla& g, const Vec& a, const Vec& b) {
  int N = nilpotency_bound(g);
  if (N < 1) return add(a, b);
  GeneratorSet gens{{"A", 0}, {"B", 0}};
  FreeLie L(gens, N);
  auto exp_t = [&](int gen) {
    TensorPoly x{{letter(gen), Q(1)}};
    TensorPoly out{{Word(), Q(1)}}, pw{{Word(), Q(1)}};
    Q fact = 1;
    for (int k = 1; k <= N; ++k) {
      pw = multiply(pw, x, N);
      fact *= k;
      add_into(out, pw, 1 / fact);
    }
    return out;
  };
  TensorPoly z = multiply(exp_t(0), exp_t(1), N);
  z.erase(Word());  // z = exp(A)exp(B) - 1
  TensorPoly log, pw{{Word(), Q(1)}};
  for (int k = 1; k <= N; ++k) {
    pw = multiply(pw, z, N);
    add_into(log, pw, Q(parity_sign(k + 1), k));
  }
  Vec coords = L.from_tensor(log);
  auto img = extend_lie_map(L, {a, b}, [&](const Vec& u, const Vec& v) { return g.bracket(u, v); });
  Vec out;
  for (const auto& [i, c] : coords) axpy(out, c, img[i]);
  return out;
}

}  // namespace ratdg
