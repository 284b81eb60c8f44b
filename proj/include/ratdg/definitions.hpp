#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdg/cdga.hpp"
#include "ratdg/dgla.hpp"
#include "ratdg/errors.hpp"
#include "ratdg/presentation.hpp"

namespace ratdg {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// A parsed algebra. A finite dgla also carries its presentation (every
// basis vector a generator) so weight-truncated commands accept it too.
struct AlgebraDefinition {
  enum class Kind { Dgla, Cdga, FreeDgla };
  Kind kind = Kind::Dgla;
  std::string name;
  std::optional<Dgla> dgla;
  std::optional<DglaPresentation> presentation;
  std::optional<FiniteCdga> cdga;
  std::map<std::string, int> truncation;  // m, P, D, n as stated

  std::optional<int> param(const std::string& key) const;
};

// Builtins: sphere, zero, g_S:k, f_xa, heisenberg, line, abelian:d:deg,
// and the cdgas qxq, fields:k, dual_numbers, square_zero:c, omega:n:D,
// ground; four_cell is a small dgla with a nonzero cubic transferred
// bracket. `size` stands in for a missing trailing parameter.
AlgebraDefinition builtin_definition(const std::string& spec, std::optional<int> size = {});
std::vector<std::string> builtin_names();

// Line-oriented format, one statement per line, '#' starts a comment:
//   kind dgla | cdga | free-dgla | builtin
//   name <text>
//   builtin <spec>                     (kind builtin)
//   gen <name> <degree> [weight <w>]   (dgla, free-dgla; homological degree)
//   basis <name> <degree>              (cdga)
//   bracket <u> <v> = <combination>    (dgla)
//   mul <u> <v> = <combination>        (cdga)
//   unit <combination>                 (cdga)
//   augmentation <name> <value> ...    (cdga)
//   d <name> = <combination or Lie expression>
//   relation <Lie expression>          (free-dgla)
//   mc <combination or Lie expression>
//   truncation <key> <value>           (m, P, D, n)
// Combinations look like "2 y - 1/2 z + w"; Lie expressions like
// "-1/2[x,x] + [a,b]". Unlisted brackets, products and d are zero.
AlgebraDefinition parse_definition(const std::string& text);
// A single combination such as "2 y - 1/2 z" against a basis.
Vec parse_combination(const GradedVectorSpace& space, const std::string& text);
AlgebraDefinition load_definition(const std::string& path);

}  // namespace ratdg
