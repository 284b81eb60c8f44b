#include "ratdg/forms.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "ratdg/errors.hpp"

namespace ratdg {

int wedge_sign(unsigned s, unsigned t) {
  if (s & t) return 0;
  int inv = 0;
  for (unsigned a = s; a; a &= a - 1) {
    int i = std::countr_zero(a);
    // indices j in t with j < i
    inv += std::popcount(t & ((1u << i) - 1));
  }
  return parity_sign(inv);
}

Form Form::dt(int i) {
  Form f;
  f.add(1u << (i - 1), Poly(Q(1)));
  return f;
}

void Form::add(unsigned mask, const Poly& f) {
  if (f.is_zero()) return;
  auto it = parts_.find(mask);
  if (it == parts_.end()) {
    parts_.emplace(mask, f);
  } else {
    it->second += f;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

Form& Form::operator+=(const Form& o) {
  for (const auto& [m, f] : o.parts_) add(m, f);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  for (const auto& [m, f] : o.parts_) add(m, -f);
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  Form out;
  for (const auto& [s, f] : a.parts_)
    for (const auto& [t, g] : b.parts_) {
      int sg = wedge_sign(s, t);
      if (sg == 0) continue;
      out.add(s | t, f * g * Poly(Q(sg)));
    }
  return out;
}

Form Form::scaled(const Poly& c) const {
  Form out;
  for (const auto& [m, f] : parts_) out.add(m, f * c);
  return out;
}

Form Form::d() const {
  Form out;
  for (const auto& [s, f] : parts_) {
    for (int v : f.variables()) {
      if (!is_tvar(v)) continue;
      int i = v - kTimeVarBase;
      unsigned bit = 1u << (i - 1);
      int sg = wedge_sign(bit, s);
      if (sg == 0) continue;
      out.add(s | bit, f.derivative(v) * Poly(Q(sg)));
    }
  }
  return out;
}

int Form::form_degree() const {
  int deg = -1;
  for (const auto& [s, f] : parts_) {
    int k = std::popcount(s);
    if (deg >= 0 && k != deg) throw DegreeMismatch("form of mixed degree");
    deg = k;
  }
  return deg;
}

Form Form::pullback(const std::vector<Poly>& t_images) const {
  std::map<int, Poly> sub;
  std::vector<Form> dts;
  for (size_t i = 0; i < t_images.size(); ++i) {
    sub[tvar(static_cast<int>(i) + 1)] = t_images[i];
    dts.push_back(Form(t_images[i]).d());
  }
  Form out;
  for (const auto& [s, f] : parts_) {
    Form term(f.substitute(sub));
    for (unsigned a = s; a; a &= a - 1) {
      int i = std::countr_zero(a);
      term = term * dts.at(i);
    }
    out += term;
  }
  return out;
}

Form Form::substitute(const std::map<int, Poly>& s) const {
  Form out;
  for (const auto& [m, f] : parts_) out.add(m, f.substitute(s));
  return out;
}

std::string Form::to_string(const std::function<std::string(int)>& name) const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [s, f] : parts_) {
    if (!out.empty()) out += " + ";
    std::string c = f.to_string(name);
    if (s == 0) {
      out += c;
      continue;
    }
    out += "(" + c + ")";
    for (unsigned a = s; a; a &= a - 1) out += "*dt" + std::to_string(std::countr_zero(a) + 1);
  }
  return out;
}

std::vector<Poly> face_images(int n, int j) {
  // t_i on Delta^n pulled back to Delta^{n-1}
  std::vector<Poly> img(n);
  Poly s0(Q(1));
  for (int k = 1; k <= n - 1; ++k) s0 -= Poly::var(tvar(k));
  for (int i = 1; i <= n; ++i) {
    if (j == 0) img[i - 1] = i == 1 ? s0 : Poly::var(tvar(i - 1));
    else if (i < j) img[i - 1] = Poly::var(tvar(i));
    else if (i == j) img[i - 1] = Poly();
    else img[i - 1] = Poly::var(tvar(i - 1));
  }
  return img;
}

std::vector<Poly> degeneracy_images(int n, int j) {
  std::vector<Poly> img(n);
  for (int i = 1; i <= n; ++i) {
    if (j == 0) img[i - 1] = Poly::var(tvar(i + 1));
    else if (i < j) img[i - 1] = Poly::var(tvar(i));
    else if (i == j) img[i - 1] = Poly::var(tvar(i)) + Poly::var(tvar(i + 1));
    else img[i - 1] = Poly::var(tvar(i + 1));
  }
  return img;
}

std::vector<Poly> vertex_images(int n, int v) {
  std::vector<Poly> img(n);
  for (int i = 1; i <= n; ++i) img[i - 1] = Poly(Q(i == v ? 1 : 0));
  return img;
}

DeRhamForms::DeRhamForms(int n, int D) : n_(n), D_(D) {
  if (n < 0 || n > 16) throw std::invalid_argument("simplex dimension out of range");
  if (D < 0) throw std::invalid_argument("polynomial degree bound must be non-negative");
  // exponent vectors of total degree k, lexicographically descending
  std::function<void(int, int, Mono&, std::vector<Mono>&)> gen = [&](int var, int left, Mono& cur,
                                                                     std::vector<Mono>& out) {
    if (var > n) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      if (e) cur.emplace_back(tvar(var), e);
      gen(var + 1, left - e, cur, out);
      if (e) cur.pop_back();
    }
  };
  for (int total = 0; total <= D; ++total) {
    for (unsigned s = 0; s < (1u << n); ++s) {
      int p = std::popcount(s);
      if (p > total) continue;
      std::vector<Mono> monos;
      Mono cur;
      gen(1, total - p, cur, monos);
      for (const auto& m : monos) {
        Poly f;
        f.add_term(m, 1);
        Form fm;
        fm.add(s, f);
        index_[{m, s}] = static_cast<int>(basis_.size());
        basis_.push_back(fm);
        std::string lab = fm.to_string([](int v) { return "t" + std::to_string(v - kTimeVarBase); });
        space_.add(lab, -p);
      }
    }
  }
}

Vec DeRhamForms::coordinates(const Form& f, bool drop_high) const {
  std::vector<std::pair<int, Q>> terms;
  for (const auto& [s, p] : f.parts()) {
    for (const auto& [m, c] : p.terms()) {
      for (const auto& [v, e] : m)
        if (!is_tvar(v)) throw std::invalid_argument("form has symbolic coefficients");
      auto it = index_.find({m, s});
      if (it == index_.end()) {
        if (drop_high) continue;
        throw TruncationTooLarge("form exceeds the polynomial degree bound");
      }
      terms.emplace_back(it->second, c);
    }
  }
  return from_terms(std::move(terms));
}

ChainComplex DeRhamForms::complex() const {
  std::vector<Vec> d;
  for (const auto& b : basis_) d.push_back(coordinates(b.d()));
  return ChainComplex(space_, d);
}

}  // namespace ratdg
