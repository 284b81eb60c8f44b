#include "ratdg/graded.hpp"

#include "ratdg/errors.hpp"

#ifdef RATDG_HAVE_OPENMP
#include <omp.h>
#endif

namespace ratdg {

void GradedVectorSpace::add(std::string label, int degree) {
  if (index_.count(label))
    throw std::invalid_argument("duplicate basis label '" + label + "'");
  int i = size();
  index_[label] = i;
  labels_.push_back(std::move(label));
  degrees_.push_back(degree);
  auto& cell = by_degree_[degree];
  local_.push_back(static_cast<int>(cell.size()));
  cell.push_back(i);
}

const std::vector<int>& GradedVectorSpace::in_degree(int n) const {
  static const std::vector<int> empty;
  auto it = by_degree_.find(n);
  return it == by_degree_.end() ? empty : it->second;
}

std::vector<int> GradedVectorSpace::occupied_degrees() const {
  std::vector<int> out;
  for (const auto& [d, v] : by_degree_) out.push_back(d);
  return out;
}

std::optional<int> GradedVectorSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> GradedVectorSpace::degree_of(const Vec& v) const {
  if (v.empty()) return std::nullopt;
  int d = degree(v.front().first);
  for (const auto& [i, c] : v)
    if (degree(i) != d) throw DegreeMismatch("inhomogeneous element");
  return d;
}

Vec GradedLinearMap::apply(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, image.at(i));
  return out;
}

Matrix GradedLinearMap::block(int n) const {
  const auto& src = source->in_degree(n);
  Matrix m(target->dim(n + shift), static_cast<int>(src.size()));
  for (size_t j = 0; j < src.size(); ++j) {
    std::vector<std::pair<int, Q>> terms;
    for (const auto& [i, c] : image[src[j]]) {
      if (target->degree(i) != n + shift)
        throw DegreeMismatch("map does not have the declared shift");
      terms.emplace_back(target->local_index(i), c);
    }
    m.col[j] = from_terms(std::move(terms));
  }
  return m;
}

ChainComplex::ChainComplex(GradedVectorSpace space, std::vector<Vec> differential)
    : space_(std::move(space)), d_(std::move(differential)) {
  if (static_cast<int>(d_.size()) != space_.size())
    throw AxiomViolation("differential size does not match basis");
  for (int i = 0; i < space_.size(); ++i) {
    for (const auto& [j, c] : d_[i])
      if (space_.degree(j) != space_.degree(i) - 1)
        throw AxiomViolation("differential of " + space_.label(i) + " is not of degree -1");
  }
  for (int i = 0; i < space_.size(); ++i) {
    if (!d(d_[i]).empty())
      throw AxiomViolation("d^2 != 0 on " + space_.label(i));
  }
}

Vec ChainComplex::d(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, d_.at(i));
  return out;
}

Matrix ChainComplex::block(int n) const {
  GradedLinearMap f{&space_, &space_, -1, d_};
  return f.block(n);
}

int HomologyReport::dim(int n) const {
  auto it = degrees.find(n);
  return it == degrees.end() ? 0 : it->second.dim;
}

int HomologyReport::total() const {
  int t = 0;
  for (const auto& [n, h] : degrees) t += h.dim;
  return t;
}

std::map<int, int> HomologyReport::dims() const {
  std::map<int, int> out;
  for (const auto& [n, h] : degrees) out[n] = h.dim;
  return out;
}

namespace {

HomologyDegree homology_in_degree(const ChainComplex& c, int n) {
  const auto& sp = c.space();
  const auto& cells = sp.in_degree(n);
  HomologyDegree h;
  h.degree = n;
  h.chains = static_cast<int>(cells.size());
  auto to_flat = [&](const Vec& local) {
    Vec out;
    for (const auto& [i, v] : local) out.emplace_back(cells[i], v);
    return out;
  };
  Echelon bounds;
  for (const auto& b : image_basis(c.block(n + 1))) bounds.insert(b);
  bounds.make_reduced();
  for (const auto& [p, row] : bounds.rows()) h.boundary_basis.push_back(to_flat(row));
  h.boundaries = bounds.rank();
  auto ker = kernel_basis(c.block(n));
  h.cycles = static_cast<int>(ker.size());
  Echelon span = bounds;
  for (const auto& z : ker) {
    if (span.insert(z)) h.representatives.push_back(to_flat(z));
  }
  h.dim = static_cast<int>(h.representatives.size());
  return h;
}

}  // namespace

HomologyReport homology(const ChainComplex& c, bool parallel) {
  std::vector<int> degs = c.space().occupied_degrees();
  std::vector<HomologyDegree> out(degs.size());
  const long n = static_cast<long>(degs.size());
  if (parallel) {
#ifdef RATDG_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long i = 0; i < n; ++i) out[i] = homology_in_degree(c, degs[i]);
  } else {
    for (long i = 0; i < n; ++i) out[i] = homology_in_degree(c, degs[i]);
  }
  HomologyReport r;
  for (auto& h : out) r.degrees[h.degree] = std::move(h);
  return r;
}

bool is_boundary(const ChainComplex& c, const Vec& z) {
  auto deg = c.space().degree_of(z);
  if (!deg) return true;
  Vec local;
  for (const auto& [i, v] : z) local.emplace_back(c.space().local_index(i), v);
  local = from_terms(std::move(local));
  return solve(c.block(*deg + 1), local).has_value();
}

std::optional<Vec> solve(const GradedLinearMap& f, const Vec& target) {
  auto deg = f.target->degree_of(target);
  if (!deg) return Vec{};
  int src_deg = *deg - f.shift;
  Vec local;
  for (const auto& [i, v] : target) local.emplace_back(f.target->local_index(i), v);
  auto x = solve(f.block(src_deg), from_terms(std::move(local)));
  if (!x) return std::nullopt;
  const auto& cells = f.source->in_degree(src_deg);
  Vec out;
  for (const auto& [i, v] : *x) out.emplace_back(cells[i], v);
  return out;
}

}  // namespace ratdg
