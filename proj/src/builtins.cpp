#include <sstream>

#include "ratdg/definitions.hpp"
#include "ratdg/tensor_words.hpp"

namespace ratdg {

std::optional<int> AlgebraDefinition::param(const std::string& key) const {
  auto it = truncation.find(key);
  if (it == truncation.end()) return std::nullopt;
  return it->second;
}

namespace {

AlgebraDefinition from_dgla(std::string name, Dgla g, std::optional<DglaPresentation> p = {}) {
  AlgebraDefinition def;
  def.kind = AlgebraDefinition::Kind::Dgla;
  def.name = std::move(name);
  def.presentation = p ? std::move(*p) : present(g);
  def.dgla = std::move(g);
  return def;
}

AlgebraDefinition from_presentation(std::string name, DglaPresentation p) {
  AlgebraDefinition def;
  def.kind = AlgebraDefinition::Kind::FreeDgla;
  def.name = std::move(name);
  def.presentation = std::move(p);
  return def;
}

AlgebraDefinition from_cdga(std::string name, FiniteCdga a) {
  AlgebraDefinition def;
  def.kind = AlgebraDefinition::Kind::Cdga;
  def.name = std::move(name);
  def.cdga = std::move(a);
  return def;
}

Dgla abelian(int dim, int degree) {
  GradedVectorSpace sp;
  for (int i = 1; i <= dim; ++i) sp.add("e" + std::to_string(i), degree);
  return abelian_dgla(sp, std::vector<Vec>(dim));
}

Dgla heisenberg() {
  GradedVectorSpace sp;
  sp.add("a", 0);
  sp.add("b", 0);
  sp.add("c", 0);
  return Dgla(sp, {{{0, 1}, unit_vec(2)}}, std::vector<Vec>(3), {1, 1, 2});
}

// [a,a] = c, [u,a] = z, du = c: H is spanned by a and z, and the
// transferred structure has a cubic term.
Dgla four_cell() {
  GradedVectorSpace sp;
  sp.add("a", -1);
  sp.add("u", -1);
  sp.add("c", -2);
  sp.add("z", -2);
  return Dgla(sp, {{{0, 0}, unit_vec(2)}, {{1, 0}, unit_vec(3)}}, {Vec{}, unit_vec(2), Vec{}, Vec{}});
}

DglaPresentation g_s(int k) {
  DglaPresentation p;
  for (int s = 1; s <= k; ++s) p.gens.push_back({"x" + std::to_string(s), -1, 1});
  for (int s = 1; s <= k; ++s) {
    std::string x = "x" + std::to_string(s);
    p.differential.push_back(parse_lie_expression(p.gens, "-1/2[" + x + "," + x + "]"));
  }
  return p;
}

DglaPresentation f_xa() {
  DglaPresentation p;
  p.gens = {{"a", 0, 1}, {"x", -1, 1}};
  p.differential = {{}, parse_lie_expression(p.gens, "-1/2[x,x]")};
  return p;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) out.push_back(part);
  return out;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"sphere", "zero",         "g_S:k",         "f_xa",      "heisenberg", "line",
          "abelian:d:deg", "four_cell", "qxq", "fields:k", "dual_numbers", "square_zero:c",
          "omega:n:D", "ground"};
}

namespace {

AlgebraDefinition lookup(const std::string& spec, std::optional<int> size) {
  auto parts = split(spec);
  if (parts.empty()) throw std::invalid_argument("empty builtin name");
  const std::string& head = parts[0];
  auto arg = [&](size_t i, const char* what) {
    if (i < parts.size()) {
      try {
        return std::stoi(parts[i]);
      } catch (const std::exception&) {
        throw std::invalid_argument("builtin " + head + ": bad " + what + " '" + parts[i] + "'");
      }
    }
    if (i == parts.size() && size) return *size;
    throw std::invalid_argument("builtin " + head + " needs " + what);
  };
  if (head == "sphere") return from_dgla("sphere", sphere_dgla(), sphere_presentation());
  if (head == "zero") return from_dgla("zero", Dgla(), zero_presentation());
  if (head == "g_S") {
    int k = arg(1, "size k");
    if (k < 0) throw std::invalid_argument("g_S needs k >= 0");
    return from_presentation("g_S:" + std::to_string(k), g_s(k));
  }
  if (head == "f_xa") return from_presentation("f_xa", f_xa());
  if (head == "heisenberg") return from_dgla("heisenberg", heisenberg());
  if (head == "line") return from_dgla("line", abelian(1, 0));
  if (head == "abelian") {
    int d = arg(1, "dimension");
    int deg = arg(2, "degree");
    if (d < 0) throw std::invalid_argument("abelian needs dimension >= 0");
    return from_dgla("abelian:" + std::to_string(d) + ":" + std::to_string(deg), abelian(d, deg));
  }
  if (head == "four_cell") return from_dgla("four_cell", four_cell());
  if (head == "qxq") return from_cdga("qxq", FiniteCdga::product_of_fields(2));
  if (head == "fields") {
    int k = arg(1, "number of factors");
    return from_cdga("fields:" + std::to_string(k), FiniteCdga::product_of_fields(k));
  }
  if (head == "dual_numbers") return from_cdga("dual_numbers", FiniteCdga::dual_numbers());
  if (head == "square_zero") {
    int c = arg(1, "degree");
    return from_cdga("square_zero:" + std::to_string(c), FiniteCdga::square_zero(c));
  }
  if (head == "omega") {
    int n = arg(1, "simplex dimension");
    int D = arg(2, "form degree bound");
    return from_cdga("omega:" + std::to_string(n) + ":" + std::to_string(D), omega_quotient(n, D));
  }
  if (head == "ground") return from_cdga("ground", FiniteCdga::ground());
  throw std::invalid_argument("unknown builtin '" + head + "'");
}

}  // namespace

// Every builtin states its weight window: 2 for g_S (all MC data sits in
// weight 1), 5 for f_xa, 4 otherwise.
AlgebraDefinition builtin_definition(const std::string& spec, std::optional<int> size) {
  AlgebraDefinition def = lookup(spec, size);
  if (def.presentation) {
    int m = 4;
    if (def.name.rfind("g_S", 0) == 0) m = 2;
    if (def.name == "f_xa") m = 5;
    def.truncation["m"] = m;
  }
  return def;
}

}  // namespace ratdg
