#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/sparse.hpp"

namespace ratdg {

// Finite graded space with a flat, labelled basis. Degrees are homological;
// cohomologically graded objects are stored with negated degrees.
class GradedVectorSpace {
 public:
  GradedVectorSpace() = default;
  void add(std::string label, int degree);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  int degree(int i) const { return degrees_.at(i); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Flat indices of the basis elements in degree n, ascending.
  const std::vector<int>& in_degree(int n) const;
  int dim(int n) const { return static_cast<int>(in_degree(n).size()); }
  // Position of flat index i among the elements of its degree.
  int local_index(int i) const { return local_.at(i); }
  std::vector<int> occupied_degrees() const;
  std::optional<int> find(const std::string& label) const;

  // Degree of a homogeneous element (nullopt for zero); throws
  // DegreeMismatch for inhomogeneous input.
  std::optional<int> degree_of(const Vec& v) const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::vector<int> local_;
  std::map<int, std::vector<int>> by_degree_;
  std::map<std::string, int> index_;
};

// Linear map of fixed degree shift, stored as images of source basis vectors.
struct GradedLinearMap {
  const GradedVectorSpace* source = nullptr;
  const GradedVectorSpace* target = nullptr;
  int shift = 0;
  std::vector<Vec> image;  // indexed by source flat index

  Vec apply(const Vec& v) const;
  // Block from source degree n to target degree n + shift, local indices.
  Matrix block(int n) const;
};

class ChainComplex {
 public:
  // Checks d o d = 0 and the -1 shift; throws AxiomViolation otherwise.
  ChainComplex(GradedVectorSpace space, std::vector<Vec> differential);

  const GradedVectorSpace& space() const { return space_; }
  const std::vector<Vec>& differential() const { return d_; }
  Vec d(const Vec& v) const;
  // Local-index block of d from degree n to n-1.
  Matrix block(int n) const;

 private:
  GradedVectorSpace space_;
  std::vector<Vec> d_;
};

struct HomologyDegree {
  int degree = 0;
  int chains = 0;
  int cycles = 0;
  int boundaries = 0;
  int dim = 0;
  std::vector<Vec> representatives;   // flat indices
  std::vector<Vec> boundary_basis;    // flat indices
};

struct HomologyReport {
  std::map<int, HomologyDegree> degrees;
  int dim(int n) const;
  int total() const;
  std::map<int, int> dims() const;
};

HomologyReport homology(const ChainComplex& c, bool parallel = false);

// Homology class test: is the cycle z a boundary?
bool is_boundary(const ChainComplex& c, const Vec& z);

std::optional<Vec> solve(const GradedLinearMap& f, const Vec& target);

}  // namespace ratdg
