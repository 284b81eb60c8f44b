#include "ratdg/poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ratdg {

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Poly::Poly(const Q& c) {
  if (!ratdg::is_zero(c)) t_.emplace(Mono{}, c);
}

Poly Poly::var(int v) {
  Poly p;
  p.t_.emplace(Mono{{v, 1}}, Q(1));
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Q Poly::constant_term() const {
  auto it = t_.find(Mono{});
  return it == t_.end() ? Q(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (const auto& [v, e] : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (const auto& [m, c] : t_)
    for (const auto& [w, e] : m)
      if (w == v) d = std::max(d, e);
  return d;
}

std::vector<int> Poly::variables() const {
  std::set<int> s;
  for (const auto& [m, c] : t_)
    for (const auto& [v, e] : m) s.insert(v);
  return {s.begin(), s.end()};
}

void Poly::add_term(const Mono& m, const Q& c) {
  if (ratdg::is_zero(c)) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (ratdg::is_zero(it->second)) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [m, c] : a.t_)
    for (const auto& [n, d] : b.t_) out.add_term(mono_mul(m, n), c * d);
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator-(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a.t_) out.t_.emplace(m, -c);
  return out;
}

Poly Poly::derivative(int v) const {
  Poly out;
  for (const auto& [m, c] : t_) {
    for (size_t k = 0; k < m.size(); ++k) {
      if (m[k].first != v) continue;
      Mono n = m;
      int e = n[k].second;
      if (e == 1) n.erase(n.begin() + k);
      else n[k].second = e - 1;
      out.add_term(n, c * e);
    }
  }
  return out;
}

Poly Poly::substitute(int v, const Poly& p) const { return substitute(std::map<int, Poly>{{v, p}}); }

Poly Poly::substitute(const std::map<int, Poly>& s) const {
  Poly out;
  for (const auto& [m, c] : t_) {
    Poly term(c);
    Mono rest;
    for (const auto& [v, e] : m) {
      auto it = s.find(v);
      if (it == s.end()) {
        rest.emplace_back(v, e);
        continue;
      }
      for (int k = 0; k < e; ++k) term *= it->second;
    }
    Poly r;
    r.t_.emplace(rest, Q(1));
    out += term * r;
  }
  return out;
}

Q Poly::evaluate(const std::map<int, Q>& point) const {
  Q s = 0;
  for (const auto& [m, c] : t_) {
    Q x = c;
    for (const auto& [v, e] : m) {
      auto it = point.find(v);
      if (it == point.end()) throw std::invalid_argument("unbound variable in evaluation");
      for (int k = 0; k < e; ++k) x *= it->second;
    }
    s += x;
  }
  return s;
}

std::vector<Poly> Poly::coefficients_in(int v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& [m, c] : t_) {
    Mono rest;
    int e = 0;
    for (const auto& [w, k] : m) {
      if (w == v) e = k;
      else rest.emplace_back(w, k);
    }
    out[e].add_term(rest, c);
  }
  return out;
}

std::map<Mono, Poly> Poly::collect(const std::function<bool(int)>& is_outer) const {
  std::map<Mono, Poly> out;
  for (const auto& [m, c] : t_) {
    Mono outer, inner;
    for (const auto& t : m) (is_outer(t.first) ? outer : inner).push_back(t);
    out[outer].add_term(inner, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

Poly Poly::monic() const {
  if (t_.empty()) return *this;
  Q lead = t_.rbegin()->second;
  Poly out;
  for (const auto& [m, c] : t_) out.t_.emplace(m, c / lead);
  return out;
}

std::string Poly::to_string(const std::function<std::string(int)>& name) const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  // highest degree first reads more naturally
  std::vector<std::pair<Mono, Q>> items(t_.begin(), t_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (const auto& [v, e] : a.first) da += e;
    for (const auto& [v, e] : b.first) db += e;
    return da > db;
  });
  for (const auto& [m, c] : items) {
    bool neg = sgn(c) < 0;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    Q a = abs(c);
    bool unit = a == 1;
    if (!unit || m.empty()) s += a.get_str();
    for (size_t k = 0; k < m.size(); ++k) {
      if (!unit || k > 0) s += "*";
      s += name(m[k].first);
      if (m[k].second > 1) s += "^" + std::to_string(m[k].second);
    }
  }
  return s;
}

}  // namespace ratdg
