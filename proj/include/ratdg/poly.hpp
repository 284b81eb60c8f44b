#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/rational.hpp"

namespace ratdg {

// Commutative polynomials over Q in integer-indexed variables.
// Monomial: sorted (variable, exponent > 0) pairs.
using Mono = std::vector<std::pair<int, int>>;

class Poly {
 public:
  Poly() = default;
  Poly(const Q& c);  // constant
  static Poly var(int v);

  const std::map<Mono, Q>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Q constant_term() const;
  int total_degree() const;
  int degree_in(int v) const;
  std::vector<int> variables() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return t_ != o.t_; }
  bool operator<(const Poly& o) const { return t_ < o.t_; }

  void add_term(const Mono& m, const Q& c);
  Poly derivative(int v) const;
  // Replace variable v by p.
  Poly substitute(int v, const Poly& p) const;
  Poly substitute(const std::map<int, Poly>& s) const;
  Q evaluate(const std::map<int, Q>& point) const;  // all variables must be bound
  // Coefficients as a polynomial in v: c[k] multiplies v^k.
  std::vector<Poly> coefficients_in(int v) const;
  // Collects coefficients with respect to the given variables.
  std::map<Mono, Poly> collect(const std::function<bool(int)>& is_outer) const;
  // Divides by the content so that the leading coefficient is 1.
  Poly monic() const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  std::map<Mono, Q> t_;
};

Mono mono_mul(const Mono& a, const Mono& b);

}  // namespace ratdg
