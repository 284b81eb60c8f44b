#pragma once

#include <map>
#include <string>
#include <vector>

#include "ratdg/graded.hpp"
#include "ratdg/poly.hpp"

namespace ratdg {

// Coordinates t_1..t_n of the affine chart t_0 = 1 - sum t_i are Poly
// variables with large ids so they never collide with solver unknowns.
constexpr int kTimeVarBase = 1 << 24;
inline int tvar(int i) { return kTimeVarBase + i; }
inline bool is_tvar(int v) { return v > kTimeVarBase; }

// Polynomial differential form: dt-mask -> coefficient. Coefficients may
// involve other (constant) variables, which is how symbolic unknowns ride
// along. Form degree of dt_S is |S| (homological degree -|S|).
class Form {
 public:
  Form() = default;
  explicit Form(const Poly& f) { add(0, f); }
  static Form dt(int i);

  const std::map<unsigned, Poly>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  void add(unsigned mask, const Poly& f);
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& a, const Form& b);
  Form scaled(const Poly& c) const;
  bool operator==(const Form& o) const { return parts_ == o.parts_; }

  Form d() const;
  // Homogeneous form degree; -1 for zero; throws on mixed degree.
  int form_degree() const;
  // Pullback along an affine map given by images of t_1..t_n.
  Form pullback(const std::vector<Poly>& t_images) const;
  Form substitute(const std::map<int, Poly>& s) const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  std::map<unsigned, Poly> parts_;
};

// Sign of dt_S ^ dt_T (0 if they share an index).
int wedge_sign(unsigned s, unsigned t);

// Images of t_1..t_n under the face map delta_j : Delta^{n-1} -> Delta^n
// and the degeneracy sigma_j : Delta^{n+1} -> Delta^n.
std::vector<Poly> face_images(int n, int j);
std::vector<Poly> degeneracy_images(int n, int j);
// Value at vertex v of Delta^n (v = 0 is the origin of the chart).
std::vector<Poly> vertex_images(int n, int v);

// Sullivan-de Rham forms on Delta^n spanned by t^alpha dt_S with
// |alpha| + |S| <= D, ordered by (total degree, exponents, mask).
class DeRhamForms {
 public:
  DeRhamForms(int n, int D);
  int n() const { return n_; }
  int D() const { return D_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const GradedVectorSpace& space() const { return space_; }
  const Form& basis_form(int i) const { return basis_[i]; }
  // Coordinates of a form with rational coefficients; terms of total
  // degree > D are dropped when `drop_high` is set, else they throw.
  Vec coordinates(const Form& f, bool drop_high = false) const;
  // The complex of forms of total degree <= D (d preserves total degree).
  ChainComplex complex() const;

 private:
  int n_, D_;
  std::vector<Form> basis_;
  std::map<std::pair<Mono, unsigned>, int> index_;
  GradedVectorSpace space_;
};

}  // namespace ratdg
