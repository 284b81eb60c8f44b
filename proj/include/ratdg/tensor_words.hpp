#pragma once

#include <map>
#include <string>
#include <vector>

#include "ratdg/rational.hpp"

namespace ratdg {

struct Generator {
  std::string name;
  int degree = 0;
  int weight = 1;  // >= 1; a word's weight is the sum over its letters
};
using GeneratorSet = std::vector<Generator>;

// Words in the generators are byte strings of generator indices.
using Word = std::string;
// Noncommutative polynomial: the tensor algebra on the generators.
using TensorPoly = std::map<Word, Q>;

int word_degree(const GeneratorSet& g, const Word& w);
int word_weight(const GeneratorSet& g, const Word& w);
// Drops words of weight > m.
TensorPoly truncate_weight(const GeneratorSet& g, const TensorPoly& p, int m);
Word letter(int gen);

void add_into(TensorPoly& acc, const TensorPoly& p, const Q& scale = 1);
TensorPoly scaled(const TensorPoly& p, const Q& c);
// Product, dropping words longer than max_len (max_len < 0: no limit).
TensorPoly multiply(const TensorPoly& a, const TensorPoly& b, int max_len = -1);
// Graded commutator ab - (-1)^{|a||b|} ba of homogeneous polynomials.
TensorPoly commutator(const GeneratorSet& g, const TensorPoly& a, const TensorPoly& b,
                      int max_len = -1);
// Derivation of degree -1 determined by its values on generators.
TensorPoly derivation(const GeneratorSet& g, const std::vector<TensorPoly>& on_gens,
                      const TensorPoly& p, int max_len = -1);
TensorPoly truncate(const TensorPoly& p, int max_len);
// Substitutes a polynomial for each generator (an algebra map).
TensorPoly substitute(const std::vector<TensorPoly>& images, const TensorPoly& p,
                      int max_len = -1);
// Homogeneous degree, or throws DegreeMismatch; 0 for the zero polynomial.
int poly_degree(const GeneratorSet& g, const TensorPoly& p);

std::string word_to_string(const GeneratorSet& g, const Word& w);
std::string poly_to_string(const GeneratorSet& g, const TensorPoly& p);

// Parses a bracket expression such as "-1/2[x,x] + 3[a,[a,x]] - y" into its
// tensor image. Throws std::invalid_argument with a column on bad input.
TensorPoly parse_lie_expression(const GeneratorSet& g, const std::string& text);

// Lyndon words of length <= max_len over an alphabet of size k, in
// increasing lexicographic order (Duval's algorithm).
std::vector<Word> lyndon_words(int k, int max_len);
// Standard factorization w = uv with v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

}  // namespace ratdg
