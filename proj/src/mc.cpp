#include "ratdg/mc.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "ratdg/errors.hpp"
#include "ratdg/finite_algebra.hpp"
#include "ratdg/forms.hpp"

namespace ratdg {

using Elem = PolyCdga::Elem;

namespace {

int U(int u) { return 2 * u; }
int dU(int u) { return 2 * u + 1; }
int unknown_of(int gen) { return gen / 2; }
bool is_d(int gen) { return gen % 2 == 1; }

int form_degree(const PolyCdga& R, const Mono& m) { return -R.mono_degree(m); }

Elem constant(const Q& c) {
  if (is_zero(c)) return {};
  return {{{0, Mono{}}, c}};
}

bool is_constant_elem(const Elem& e) {
  for (const auto& [k, c] : e)
    if (!k.second.empty()) return false;
  return true;
}

Elem scale(const Elem& e, const Q& c) {
  Elem out;
  PolyCdga::add_into(out, e, c);
  return out;
}

// Algebra map given on generators; missing generators map to themselves.
Elem substitute(const PolyCdga& R, const Elem& e, const std::map<int, Elem>& images, int n) {
  Elem out;
  for (const auto& [k, c] : e) {
    bool touched = false;
    for (const auto& [g, p] : k.second)
      if (images.count(g)) touched = true;
    if (!touched) {
      PolyCdga::add_into(out, Elem{{k, c}});
      continue;
    }
    Elem acc = constant(c);
    for (const auto& [g, p] : k.second) {
      auto it = images.find(g);
      for (int r = 0; r < p && !acc.empty(); ++r)
        acc = truncate_forms(R, R.mul(acc, it != images.end() ? it->second : R.gen(g)), n);
    }
    PolyCdga::add_into(out, acc);
  }
  return out;
}

Elem normalized(const Elem& e) {
  if (e.empty()) return e;
  return scale(e, 1 / e.begin()->second);
}

std::set<int> atoms(const Elem& e) {
  std::set<int> s;
  for (const auto& [k, c] : e)
    for (const auto& [g, p] : k.second) s.insert(g);
  return s;
}

struct Branch {
  std::map<int, Elem> values;  // eliminated unknown -> expression
  std::set<int> constant;      // free 0-forms with dU = 0
  std::vector<Elem> eqs;
  std::vector<std::string> log;
};

class Solver {
 public:
  explicit Solver(const McSystem& s) : s_(s), R_(s.ring) {}

  void apply(Branch& b, const std::map<int, Elem>& images) const {
    for (auto& e : b.eqs) e = substitute(R_, e, images, s_.n);
    for (auto& [u, v] : b.values) v = substitute(R_, v, images, s_.n);
  }

  // U_u := value (and dU_u := d value).
  void assign(Branch& b, int u, const Elem& value) const {
    Elem dv = truncate_forms(R_, R_.d(value), s_.n);
    std::map<int, Elem> images{{U(u), value}, {dU(u), dv}};
    for (int c : b.constant)
      if (c != u) images[dU(c)] = {};
    apply(b, images);
    b.values[u] = value;
    if (b.constant.erase(u) && !dv.empty()) b.eqs.push_back(dv);
  }

  void make_constant(Branch& b, int u) const {
    apply(b, {{dU(u), Elem{}}});
    b.constant.insert(u);
  }

  // true if the branch is infeasible
  bool tidy(Branch& b) const {
    std::set<Elem> seen;
    std::vector<Elem> out;
    for (auto& e : b.eqs) {
      Elem t = normalized(truncate_forms(R_, e, s_.n));
      if (t.empty()) continue;
      if (is_constant_elem(t)) return true;
      if (seen.insert(t).second) out.push_back(t);
    }
    b.eqs = std::move(out);
    return false;
  }

  bool settled(const Branch& b, const Elem& e) const {
    if (e.size() != 1) return false;
    const Mono& m = e.begin()->first.second;
    if (m.size() != 1 || m[0].second != 1 || !is_d(m[0].first)) return false;
    int u = unknown_of(m[0].first);
    return s_.unknowns[u].form_degree >= 1 && !b.values.count(u);
  }

  McSolution run(int max_branches) {
    McSolution sol;
    Branch root;
    for (const auto& eq : s_.equations) root.eqs.push_back(eq.lhs);
    std::vector<Branch> stack{root};
    int opened = 1;
    std::set<std::string> seen_families;
    while (!stack.empty()) {
      Branch b = std::move(stack.back());
      stack.pop_back();
      std::vector<Branch> children;
      bool dead = false, done = false;
      while (true) {
        if (tidy(b)) {
          dead = true;
          break;
        }
        if (step_constant(b) || step_linear(b)) continue;
        if (step_univariate(b, children)) break;
        if (step_factor(b, children)) break;
        done = true;
        break;
      }
      if (dead) continue;
      if (!done) {
        opened += static_cast<int>(children.size());
        if (opened > max_branches) {
          sol.complete = false;
          sol.certificate = "branch limit " + std::to_string(max_branches) + " reached";
          break;
        }
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
        continue;
      }
      McFamily f = finish(b);
      std::string key;
      for (const auto& v : f.values) key += s_.to_string(v) + ";";
      for (int c : f.constant) key += "c" + std::to_string(c);
      for (const auto& r : f.residual) key += "r" + s_.to_string(r);
      if (!seen_families.insert(key).second) continue;
      if (!f.complete) sol.complete = false;
      sol.families.push_back(std::move(f));
    }
    if (sol.certificate.empty()) {
      std::ostringstream os;
      os << (sol.complete ? "complete" : "incomplete") << ": " << sol.families.size()
         << " families from " << opened << " branches";
      sol.certificate = os.str();
    }
    return sol;
  }

 private:
  // d alpha = 0 for a 0-form forces alpha constant
  bool step_constant(Branch& b) const {
    for (const auto& e : b.eqs) {
      if (e.size() != 1) continue;
      const Mono& m = e.begin()->first.second;
      if (m.size() != 1 || m[0].second != 1 || !is_d(m[0].first)) continue;
      int u = unknown_of(m[0].first);
      if (s_.unknowns[u].form_degree != 0 || b.constant.count(u) || b.values.count(u)) continue;
      make_constant(b, u);
      b.log.push_back("constant " + s_.unknowns[u].name);
      return true;
    }
    return false;
  }

  // an unknown occurring only as c * U, c constant
  bool step_linear(Branch& b) const {
    int best = -1, best_eq = -1;
    Q best_c;
    for (size_t i = 0; i < b.eqs.size(); ++i) {
      const Elem& e = b.eqs[i];
      std::map<int, Q> lone;
      std::set<int> bad;
      for (const auto& [k, c] : e) {
        const Mono& m = k.second;
        if (m.size() == 1 && m[0].second == 1 && !is_d(m[0].first)) lone[m[0].first] += c;
        else
          for (const auto& [g, p] : m) bad.insert(g);
      }
      for (const auto& [g, c] : lone) {
        if (bad.count(g)) continue;
        int u = unknown_of(g);
        if (best < 0 || better(u, best)) {
          best = u;
          best_eq = static_cast<int>(i);
          best_c = c;
        }
      }
    }
    if (best < 0) return false;
    Elem rest = b.eqs[best_eq];
    PolyCdga::add_into(rest, R_.gen(U(best)), -best_c);
    assign(b, best, scale(rest, -1 / best_c));
    b.log.push_back("eliminate " + s_.unknowns[best].name);
    return true;
  }

  bool better(int u, int v) const {
    const auto& a = s_.unknowns[u];
    const auto& c = s_.unknowns[v];
    if (a.weight != c.weight) return a.weight > c.weight;
    if (a.form_degree != c.form_degree) return a.form_degree > c.form_degree;
    return u > v;
  }

  bool step_univariate(Branch& b, std::vector<Branch>& out) const {
    for (const auto& e : b.eqs) {
      auto at = atoms(e);
      if (at.size() != 1) continue;
      int g = *at.begin();
      if (is_d(g) || s_.unknowns[unknown_of(g)].form_degree != 0) continue;
      int u = unknown_of(g);
      std::vector<Q> coeffs;
      for (const auto& [k, c] : e) {
        int p = k.second.empty() ? 0 : k.second[0].second;
        if (static_cast<int>(coeffs.size()) <= p) coeffs.resize(p + 1);
        coeffs[p] += c;
      }
      // a rational polynomial root in Q[t] is a rational constant
      for (const Q& r : rational_roots(coeffs)) {
        Branch child = b;
        child.log.push_back(s_.unknowns[u].name + " = " + ratdg::to_string(r));
        assign(child, u, constant(r));
        out.push_back(std::move(child));
      }
      return true;
    }
    return false;
  }

  // e = U * rest with U a 0-form, or U a p-form and rest made of 0-forms
  bool step_factor(Branch& b, std::vector<Branch>& out) const {
    for (size_t i = 0; i < b.eqs.size(); ++i) {
      const Elem& e = b.eqs[i];
      for (int g : atoms(e)) {
        if (is_d(g)) continue;
        int u = unknown_of(g);
        int p = s_.unknowns[u].form_degree;
        bool common = true;
        Elem rest;
        for (const auto& [k, c] : e) {
          Mono m = k.second;
          auto it = std::find_if(m.begin(), m.end(), [&](const auto& t) { return t.first == g; });
          if (it == m.end()) {
            common = false;
            break;
          }
          if (--it->second == 0) m.erase(it);
          if (p > 0 && form_degree(R_, m) != 0) {
            common = false;
            break;
          }
          PolyCdga::add_into(rest, Elem{{{0, m}, c}});
        }
        if (!common) continue;
        Branch zero = b;
        zero.log.push_back(s_.unknowns[u].name + " = 0");
        assign(zero, u, {});
        Branch other = b;
        other.eqs[i] = rest;
        other.log.push_back("factor " + s_.unknowns[u].name);
        out.push_back(std::move(zero));
        out.push_back(std::move(other));
        return true;
      }
    }
    return false;
  }

  McFamily finish(const Branch& b) const {
    McFamily f;
    const int N = static_cast<int>(s_.unknowns.size());
    f.values.resize(N);
    for (int u = 0; u < N; ++u) {
      auto it = b.values.find(u);
      if (it != b.values.end()) f.values[u] = it->second;
      else {
        f.values[u] = R_.gen(U(u));
        f.free.push_back(u);
      }
    }
    f.constant = b.constant;
    for (const auto& e : b.eqs) {
      if (settled(b, e)) f.closed.insert(unknown_of(e.begin()->first.second[0].first));
      else f.residual.push_back(e);
    }
    f.complete = f.residual.empty();
    f.log = b.log;
    return f;
  }

  const McSystem& s_;
  const PolyCdga& R_;
};

std::string sanitize_label(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

Q small_rational(std::mt19937& r) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  return Q(num(r), den(r));
}

}  // namespace

Elem truncate_forms(const PolyCdga& ring, const Elem& e, int n) {
  Elem out;
  for (const auto& [k, c] : e)
    if (form_degree(ring, k.second) <= n) out.emplace(k, c);
  return out;
}

std::string McSystem::to_string(const Elem& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : e) {
    const Mono& m = k.second;
    Q a = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (m.empty() || a != 1) {
      os << ratdg::to_string(a);
      if (!m.empty()) os << "*";
    }
    bool f2 = true;
    for (const auto& [g, p] : m) {
      if (!f2) os << "*";
      f2 = false;
      const std::string& nm = unknowns[unknown_of(g)].name;
      os << (is_d(g) ? "d(" + nm + ")" : nm);
      if (p > 1) os << "^" << p;
    }
  }
  return os.str();
}

std::string McSystem::equation_text(const McEquation& eq) const {
  if (eq.lhs.empty()) return "0 = 0";
  size_t best = 1000;
  Q lead;
  for (const auto& [k, c] : eq.lhs) {
    size_t len = PolyCdga::word_length(k.second);
    if (len < best) {
      best = len;
      lead = c;
    }
  }
  return to_string(scale(eq.lhs, 1 / lead)) + " = 0";
}

std::vector<std::string> McSystem::texts() const {
  std::vector<std::string> out;
  for (const auto& e : equations) out.push_back(equation_text(e));
  return out;
}

McSystem derive_constraints(const Dgla& g, int n, int max_unknown_weight) {
  if (n < 0) throw std::invalid_argument("simplex dimension must be >= 0");
  std::vector<McUnknown> unknowns;
  std::vector<int> unknown_at(g.dim(), -1);
  for (int e = 0; e < g.dim(); ++e) {
    int p = g.degree(e) + 1;
    if (p < 0 || p > n) continue;
    int w = g.has_weights() ? g.weights()[e] : 1;
    if (max_unknown_weight >= 0 && w > max_unknown_weight) continue;
    std::string stem = p == 0 ? "alpha" : (p == 1 ? "omega" : "form" + std::to_string(p));
    unknown_at[e] = static_cast<int>(unknowns.size());
    unknowns.push_back({e, p, w, stem + "_" + sanitize_label(g.label(e))});
  }
  std::vector<PolyCdga::Gen> gens;
  for (const auto& u : unknowns) {
    gens.push_back({u.name, -u.form_degree});
    gens.push_back({"d" + u.name, -u.form_degree - 1});
  }
  PolyCdga R(FiniteCdga::ground(), gens);
  for (size_t u = 0; u < unknowns.size(); ++u) R.set_differential(U(u), R.gen(dU(u)));

  std::map<int, Elem> eqs;
  auto wanted = [&](int k) {
    int q = g.degree(k) + 2;
    return q >= 0 && q <= n;
  };
  const int N = static_cast<int>(unknowns.size());
  for (int u = 0; u < N; ++u) {
    for (const auto& [k, c] : g.d_basis(unknowns[u].element))
      if (wanted(k)) PolyCdga::add_into(eqs[k], R.gen(U(u)), c);
  }
  for (int k = 0; k < g.dim(); ++k)
    if (wanted(k) && unknown_at[k] >= 0)
      PolyCdga::add_into(eqs[k], R.gen(dU(unknown_at[k])), parity_sign(g.degree(k)));
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      Vec br = g.bracket_basis(unknowns[u].element, unknowns[v].element);
      if (br.empty()) continue;
      int s = (is_odd(unknowns[u].form_degree) && is_odd(g.degree(unknowns[v].element))) ? -1 : 1;
      Elem prod = R.mul(R.gen(U(u)), R.gen(U(v)));
      for (const auto& [k, c] : br)
        if (wanted(k)) PolyCdga::add_into(eqs[k], prod, c * s / 2);
    }
  McSystem s{g, n, std::move(unknowns), std::move(R), {}};
  for (auto& [k, e] : eqs) {
    Elem t = truncate_forms(s.ring, e, n);
    if (!t.empty()) s.equations.push_back({k, g.degree(k) + 2, std::move(t)});
  }
  return s;
}

McSolution solve_structured(const McSystem& s, int max_branches) {
  Solver solver(s);
  return solver.run(max_branches);
}

Vec instantiate(const McSystem& s, const McFamily& f, const std::map<int, Q>& params) {
  if (s.n != 0) throw std::invalid_argument("instantiate is for vertices (n = 0)");
  std::vector<std::pair<int, Q>> terms;
  for (size_t u = 0; u < f.values.size(); ++u) {
    Q val = 0;
    for (const auto& [k, c] : f.values[u]) {
      Q t = c;
      for (const auto& [g, p] : k.second) {
        auto it = params.find(unknown_of(g));
        Q x = (it == params.end() || is_d(g)) ? Q(0) : it->second;
        for (int r = 0; r < p; ++r) t *= x;
      }
      val += t;
    }
    if (!is_zero(val)) terms.emplace_back(s.unknowns[u].element, val);
  }
  return from_terms(terms);
}

McVertices mc_vertices(const DglaPresentation& p, int m, int cap) {
  if (m < 1) throw std::invalid_argument("weight bound must be >= 1");
  int delta = 0;
  for (size_t i = 0; i < p.gens.size(); ++i)
    for (const auto& [w, c] : p.differential[i])
      delta = std::max(delta, word_weight(p.gens, w) - p.gens[i].weight);
  int L = std::max(2 * m, m + delta);
  PresentedDgla real = realize(p, L, cap);
  McSystem sys = derive_constraints(real.dgla, 0, m);
  McSolution sol = solve_structured(sys);
  McVertices out{m, L, sys, sol, {}, real};
  for (const auto& f : sol.families)
    if (f.free.empty() && f.complete) out.points.push_back(instantiate(sys, f, {}));
  return out;
}

namespace {

// Concrete forms for the free unknowns of a family and the resulting
// values of all unknowns.
std::vector<Form> sample_forms(const McSystem& s, const McFamily& f, std::mt19937& r) {
  const int N = static_cast<int>(s.unknowns.size());
  const int n = s.n;
  std::map<int, Form> atom;
  auto random_poly = [&](bool constant_only) {
    Poly p(small_rational(r));
    if (!constant_only && n >= 1) p += Poly(small_rational(r)) * Poly::var(tvar(1));
    return p;
  };
  // random form of degree p with affine coefficients
  auto random_form = [&](int p, bool affine) {
    Form out;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      if (__builtin_popcount(mask) == p) out.add(mask, random_poly(!affine));
    return out;
  };
  for (int u : f.free) {
    int p = s.unknowns[u].form_degree;
    Form val;
    if (p == 0) val = Form(random_poly(f.constant.count(u) > 0));
    else if (f.closed.count(u)) val = random_form(p - 1, true).d();
    else val = random_form(p, true);
    atom[U(u)] = val;
    atom[dU(u)] = val.d();
  }
  std::vector<Form> values(N);
  for (int u = 0; u < N; ++u) {
    Form acc;
    for (const auto& [k, c] : f.values[u]) {
      Form t{Poly(c)};
      for (const auto& [g, p] : k.second)
        for (int e = 0; e < p; ++e) t = t * atom.at(g);
      acc += t;
    }
    values[u] = acc;
  }
  return values;
}

Vec to_tensor(const McSystem& s, const TensorDglaForms& T, const std::vector<Form>& values) {
  std::vector<std::pair<int, Q>> terms;
  for (size_t u = 0; u < values.size(); ++u)
    for (const auto& [j, c] : T.forms.coordinates(values[u], true))
      terms.emplace_back(T.index(s.unknowns[u].element, j), c);
  return from_terms(terms);
}

}  // namespace

McSimplices mc_simplices(const Dgla& g, int n, int D, unsigned seed) {
  McSystem sys = derive_constraints(g, n);
  McSolution sol = solve_structured(sys);
  McSimplices out{n, D, sys, sol};
  std::mt19937 r(seed);
  TensorDglaForms T = tensor_dgla_forms(g, n, D, false);
  std::optional<TensorDglaForms> Tf, Td;
  if (n >= 1) Tf = tensor_dgla_forms(g, n - 1, D, false);
  Td = tensor_dgla_forms(g, n + 1, D, false);
  for (const auto& f : sol.families) {
    if (!f.complete) continue;
    for (int rep = 0; rep < 3; ++rep) {
      auto values = sample_forms(sys, f, r);
      ++out.samples;
      if (!is_mc(T.dgla, to_tensor(sys, T, values)).ok) out.samples_mc = false;
      for (int j = 0; j <= n && n >= 1; ++j) {
        std::vector<Form> face;
        for (const auto& v : values) face.push_back(v.pullback(face_images(n, j)));
        if (!is_mc(Tf->dgla, to_tensor(sys, *Tf, face)).ok) out.faces_mc = false;
      }
      for (int j = 0; j <= n; ++j) {
        std::vector<Form> deg;
        for (const auto& v : values) deg.push_back(v.pullback(degeneracy_images(n, j)));
        if (!is_mc(Td->dgla, to_tensor(sys, *Td, deg)).ok) out.degeneracies_mc = false;
      }
    }
  }
  return out;
}

std::optional<std::vector<Vec>> gauge_connect(const Dgla& g, const Vec& xi, const Vec& eta,
                                              int max_steps) {
  auto weight = [&](int i) { return g.has_weights() ? g.weights()[i] : 1; };
  std::vector<int> zero_cells = g.space().in_degree(0);
  std::stable_sort(zero_cells.begin(), zero_cells.end(),
                   [&](int a, int b) { return weight(a) > weight(b); });
  std::vector<Vec> steps;
  Vec cur = eta;
  for (int it = 0; it < max_steps; ++it) {
    Vec delta = sub(xi, cur);
    if (delta.empty()) return steps;
    int w = 1 << 30;
    for (const auto& [i, c] : delta) w = std::min(w, weight(i));
    auto low = [&](const Vec& v) {
      Vec out;
      for (const auto& [i, c] : v)
        if (weight(i) <= w) out.emplace_back(i, c);
      return out;
    };
    Matrix M(g.dim(), static_cast<int>(zero_cells.size()));
    for (size_t j = 0; j < zero_cells.size(); ++j) {
      Vec a = unit_vec(zero_cells[j]);
      M.col[j] = low(scaled(add(g.d(a), g.bracket(cur, a)), -1));
    }
    auto sol = solve(M, low(delta));
    if (!sol) return std::nullopt;
    Vec a;
    for (const auto& [j, c] : *sol) axpy(a, c, unit_vec(zero_cells[j]));
    a = from_terms(std::vector<std::pair<int, Q>>(a.begin(), a.end()));
    Vec next = gauge_act(g, a, cur);
    Vec nd = sub(xi, next);
    for (const auto& [i, c] : nd)
      if (weight(i) <= w) return std::nullopt;
    steps.push_back(a);
    cur = next;
  }
  return std::nullopt;
}

namespace {

std::string vec_text(const Dgla& g, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (abs(c) != 1) os << ratdg::to_string(abs(c)) << "*";
    os << g.label(i);
  }
  return os.str();
}

bool abelian(const Dgla& g) { return g.bracket_table().empty(); }

McModuli abelian_moduli(const Dgla& g) {
  McModuli out;
  out.abelian = true;
  out.method = "abelian: solver family modulo gauge directions";
  McSystem sys = derive_constraints(g, 0);
  McSolution sol = solve_structured(sys);
  out.complete = sol.complete;
  out.certificate = sol.certificate;
  Echelon gauge, span;
  for (int a : g.space().in_degree(0)) {
    Vec v = gauge_act(g, unit_vec(a), {});
    gauge.insert(v);
    span.insert(v);
  }
  for (const auto& f : sol.families) {
    Vec base = instantiate(sys, f, {});
    span.insert(base);
    for (int u : f.free) span.insert(sub(instantiate(sys, f, {{u, 1}}), base));
  }
  out.h_minus1 = span.rank() - gauge.rank();
  McClass c;
  c.representative = {};
  c.parameter_dim = out.h_minus1;
  c.families = static_cast<int>(sol.families.size());
  c.text = out.h_minus1 == 0 ? "0" : "affine space of dim " + std::to_string(out.h_minus1);
  out.classes.push_back(c);
  return out;
}

}  // namespace

McModuli pi0_moduli(const Dgla& g, unsigned seed) {
  if (g.space().in_degree(-1).empty()) {
    McModuli out;
    out.method = "no degree -1 part";
    out.abelian = abelian(g);
    out.certificate = "MC(g) = {0}";
    out.classes.push_back({{}, "0", 1, 0, 0, 0});
    return out;
  }
  if (abelian(g)) return abelian_moduli(g);
  if (!g.has_weights()) throw NotNilpotent("components need a weight grading");

  McModuli out;
  out.method = "weight-1 invariant plus greedy gauge";
  McSystem sys = derive_constraints(g, 0);
  McSolution sol = solve_structured(sys);
  out.complete = sol.complete;
  out.certificate = sol.certificate;

  const auto& W = g.weights();
  // B_1: weight-1 part of d on weight-1 degree-0 elements
  Echelon b1;
  for (int a : g.space().in_degree(0)) {
    if (W[a] != 1) continue;
    Vec v;
    for (const auto& [i, c] : g.d_basis(a))
      if (W[i] == 1) v.emplace_back(i, c);
    b1.insert(v);
  }
  auto invariant = [&](const Vec& xi) {
    Vec v;
    for (const auto& [i, c] : xi)
      if (W[i] == 1) v.emplace_back(i, c);
    return b1.reduce(v);
  };

  std::mt19937 r(seed);
  struct Point {
    Vec xi;
    int family;
  };
  std::vector<Point> points;
  for (size_t fi = 0; fi < sol.families.size(); ++fi) {
    const auto& f = sol.families[fi];
    if (!f.complete) continue;
    points.push_back({instantiate(sys, f, {}), static_cast<int>(fi)});
    if (f.free.empty()) continue;
    out.sampled = true;
    for (int k = 0; k < 3; ++k) {
      std::map<int, Q> pr;
      for (int u : f.free) pr[u] = small_rational(r);
      points.push_back({instantiate(sys, f, pr), static_cast<int>(fi)});
    }
  }
  std::map<Vec, std::vector<int>> by_invariant;  // invariant -> class ids
  std::map<int, std::set<int>> class_families;
  for (const auto& pt : points) {
    if (!is_mc(g, pt.xi).ok) throw std::logic_error("solver produced a non-MC point");
    Vec key = invariant(pt.xi);
    auto& ids = by_invariant[key];
    bool joined = false;
    for (int id : ids) {
      auto& cls = out.classes[id];
      ++cls.samples_tried;
      if (gauge_connect(g, cls.representative, pt.xi)) {
        ++cls.samples_connected;
        class_families[id].insert(pt.family);
        joined = true;
        break;
      }
    }
    if (joined) continue;
    if (!ids.empty()) out.sampled = true;
    ids.push_back(static_cast<int>(out.classes.size()));
    class_families[ids.back()].insert(pt.family);
    out.classes.push_back({pt.xi, vec_text(g, pt.xi), 0, 0, 0, 0});
  }
  for (auto& [id, fams] : class_families) out.classes[id].families = static_cast<int>(fams.size());
  for (const auto& c : out.classes)
    if (c.samples_tried > 0) out.sampled = true;
  return out;
}

McModuli pi0_moduli(const DglaPresentation& p, int m, unsigned seed, int cap) {
  PresentedDgla hi = realize(p, m + 1, cap);
  McModuli out = pi0_moduli(hi.dgla, seed);
  if (out.abelian || out.classes.empty()) return out;
  PresentedDgla lo = realize(p, m, cap);
  const FreeLie& Lh = hi.quotient->lie();
  std::vector<McClass> merged;
  for (auto c : out.classes) {
    Vec img;
    for (const auto& [q, v] : c.representative)
      axpy(img, v, lo.element(Lh.element(hi.quotient->representative(q)).tensor));
    c.representative = img;
    c.text = vec_text(lo.dgla, img);
    bool same = false;
    if (lo.dgla.has_weights())
      for (auto& k : merged)
        if (gauge_connect(lo.dgla, k.representative, img)) {
          k.families += c.families;
          same = true;
          break;
        }
    if (!same) merged.push_back(c);
  }
  out.classes = merged;
  out.method += ", lifted from weight " + std::to_string(m + 1);
  return out;
}

bool TheoremFReport::ok() const {
  if (!counts_match || !all_complete) return false;
  for (bool b : acyclic_with_zero)
    if (!b) return false;
  return true;
}

TheoremFReport verify_theorem_f(const std::vector<DglaPresentation>& gs, int m, int cap) {
  if (gs.empty()) throw std::invalid_argument("need at least one dgla");
  TheoremFReport rep;
  rep.m = m;
  DglaPresentation acc = gs[0];
  for (size_t i = 1; i < gs.size(); ++i) acc = disjoint_product(acc, gs[i]);
  McModuli lhs = pi0_moduli(acc, m, 1, cap);
  rep.lhs = lhs.finite() ? lhs.count() : -1;
  rep.all_complete = lhs.complete;
  rep.sampled = lhs.sampled;
  bool finite = lhs.finite();
  for (const auto& g : gs) {
    McModuli part = pi0_moduli(g, m, 1, cap);
    finite = finite && part.finite();
    rep.rhs_parts.push_back(part.finite() ? part.count() : -1);
    rep.rhs += part.count();
    rep.all_complete = rep.all_complete && part.complete;
    rep.sampled = rep.sampled || part.sampled;
    StableHomology sh = stable_homology(disjoint_product(g, zero_presentation()), m, cap);
    bool zero = true;
    for (const auto& [deg, d] : sh.stable_dims)
      if (d != 0) zero = false;
    rep.acyclic_with_zero.push_back(zero);
  }
  rep.counts_match = finite && rep.lhs == rep.rhs;
  return rep;
}

namespace {

std::map<int, int> dims_0_to_3(const Dgla& g) {
  HomologyReport h = homology(g);
  std::map<int, int> out;
  for (int n = 0; n <= 3; ++n) {
    auto it = h.degrees.find(n);
    out[n] = it == h.degrees.end() ? 0 : it->second.dim;
  }
  return out;
}

ComponentReport decompose(const Dgla& g, McModuli moduli) {
  ComponentReport rep{std::move(moduli), {}};
  for (const auto& c : rep.moduli.classes) {
    Dgla tw = twist(g, c.representative);
    ConnectedCover cc = connected_cover(tw);
    rep.rows.push_back({c.text, dims_0_to_3(cc.cover), dims_0_to_3(tw)});
  }
  return rep;
}

}  // namespace

bool ComponentReport::ok() const {
  if (!moduli.complete || rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.equal()) return false;
  return true;
}

ComponentReport verify_component_decomposition(const Dgla& g, unsigned seed) {
  return decompose(g, pi0_moduli(g, seed));
}

ComponentReport verify_component_decomposition(const DglaPresentation& p, int m, unsigned seed,
                                               int cap) {
  McModuli mod = pi0_moduli(p, m, seed, cap);
  return decompose(realize(p, m, cap).dgla, std::move(mod));
}

}  // namespace ratdg
