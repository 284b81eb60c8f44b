#include <fstream>
#include <sstream>

#include "ratdg/definitions.hpp"
#include "ratdg/tensor_words.hpp"

namespace ratdg {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Builder {
  std::string kind;
  std::string name;
  std::string builtin;
  int builtin_line = 0;
  GradedVectorSpace space;
  std::vector<int> weights;
  GeneratorSet gens;
  bool any_weight = false;
  // raw statements, resolved once all generators are known
  struct Stmt {
    std::string op;
    std::vector<std::string> names;
    std::string rhs;
    int line, column, rhs_column;
  };
  std::vector<Stmt> stmts;
  std::map<std::string, int> truncation;
};

[[noreturn]] void fail(int line, int col, const std::string& what) { throw ParseError(line, col, what); }

int to_int(const Token& t, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(line, t.column, "expected an integer, got '" + t.text + "'");
  }
}

// "2 y - 1/2 z + w" against the basis of `space`.
Vec parse_combination(const GradedVectorSpace& space, const std::string& text, int line, int col0) {
  std::vector<std::pair<int, Q>> terms;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.find_first_not_of(" \t0", i) == std::string::npos && text.find('0', i) != std::string::npos)
    return {};
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) {
      if (first) fail(line, col0 + static_cast<int>(i), "empty combination");
      break;
    }
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail(line, col0 + static_cast<int>(i), "expected '+' or '-'");
    }
    first = false;
    Q c = 1;
    size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    if (i > start) {
      try {
        c = parse_rational(text.substr(start, i - start));
      } catch (const std::exception& e) {
        fail(line, col0 + static_cast<int>(start), e.what());
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    size_t ns = i;
    while (i < text.size() && (is_name_char(text[i]) || text[i] == '[' || text[i] == ']' ||
                               text[i] == ',' || text[i] == '\''))
      ++i;
    if (i == ns) {
      if (ns > start) {  // bare number: multiple of the unit is not allowed here
        fail(line, col0 + static_cast<int>(start), "coefficient without a basis name");
      }
      fail(line, col0 + static_cast<int>(ns), "expected a basis name");
    }
    std::string nm = text.substr(ns, i - ns);
    auto idx = space.find(nm);
    if (!idx) fail(line, col0 + static_cast<int>(ns), "unknown name '" + nm + "'");
    terms.emplace_back(*idx, c * sign);
  }
  return from_terms(terms);
}

TensorPoly parse_lie(const GeneratorSet& gens, const std::string& text, int line, int col0) {
  try {
    return parse_lie_expression(gens, text);
  } catch (const std::invalid_argument& e) {
    // messages carry "column N" relative to the expression when available
    std::string msg = e.what();
    int col = col0;
    auto pos = msg.find("column ");
    if (pos != std::string::npos) col = col0 + std::atoi(msg.c_str() + pos + 7) - 1;
    fail(line, col, msg);
  }
}

AlgebraDefinition build(Builder& b) {
  using Kind = AlgebraDefinition::Kind;
  if (b.kind.empty()) fail(1, 1, "missing 'kind' statement");
  AlgebraDefinition def;
  if (b.kind == "builtin") {
    if (b.builtin.empty()) fail(1, 1, "builtin definition without 'builtin' statement");
    try {
      def = builtin_definition(b.builtin);
    } catch (const std::invalid_argument& e) {
      fail(b.builtin_line, 1, e.what());
    }
    for (const auto& [k, v] : b.truncation) def.truncation[k] = v;
    if (!b.name.empty()) def.name = b.name;
    return def;
  }
  def.name = b.name.empty() ? b.kind : b.name;
  def.truncation = b.truncation;
  const int n = b.space.size();
  if (b.kind == "dgla") {
    Dgla::BracketTable br;
    std::vector<Vec> d(n);
    std::optional<Vec> mc;
    for (const auto& s : b.stmts) {
      if (s.op == "bracket") {
        int i = *b.space.find(s.names[0]), j = *b.space.find(s.names[1]);
        br[{i, j}] = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
      } else if (s.op == "d") {
        d[*b.space.find(s.names[0])] = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
      } else if (s.op == "mc") {
        mc = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
      } else {
        fail(s.line, s.column, "'" + s.op + "' is not allowed in a dgla definition");
      }
    }
    std::vector<int> w = b.any_weight ? b.weights : std::vector<int>{};
    Dgla g(b.space, br, d, w);
    g.mc_element = mc;
    def.kind = Kind::Dgla;
    def.presentation = present(g);
    def.dgla = std::move(g);
    return def;
  }
  if (b.kind == "free-dgla") {
    DglaPresentation p;
    p.gens = b.gens;
    p.differential.assign(b.gens.size(), {});
    for (const auto& s : b.stmts) {
      if (s.op == "d") {
        int i = *b.space.find(s.names[0]);
        p.differential[i] = parse_lie(p.gens, s.rhs, s.line, s.rhs_column);
      } else if (s.op == "relation") {
        p.relations.push_back(parse_lie(p.gens, s.rhs, s.line, s.rhs_column));
      } else if (s.op == "mc") {
        p.mc = parse_lie(p.gens, s.rhs, s.line, s.rhs_column);
      } else {
        fail(s.line, s.column, "'" + s.op + "' is not allowed in a free-dgla definition");
      }
    }
    def.kind = Kind::FreeDgla;
    def.presentation = std::move(p);
    return def;
  }
  if (b.kind == "cdga") {
    FiniteCdga::Table table;
    std::vector<Vec> d(n);
    Vec unit;
    bool have_unit = false;
    std::optional<Vec> aug;
    for (const auto& s : b.stmts) {
      if (s.op == "mul") {
        int i = *b.space.find(s.names[0]), j = *b.space.find(s.names[1]);
        table[{i, j}] = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
      } else if (s.op == "d") {
        d[*b.space.find(s.names[0])] = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
      } else if (s.op == "unit") {
        unit = parse_combination(b.space, s.rhs, s.line, s.rhs_column);
        have_unit = true;
      } else if (s.op == "augmentation") {
        std::vector<std::pair<int, Q>> t;
        auto toks = tokenize(s.rhs);
        if (toks.size() % 2 != 0) fail(s.line, s.rhs_column, "augmentation needs name/value pairs");
        for (size_t k = 0; k < toks.size(); k += 2) {
          auto idx = b.space.find(toks[k].text);
          if (!idx) fail(s.line, s.rhs_column + toks[k].column - 1, "unknown name '" + toks[k].text + "'");
          try {
            t.emplace_back(*idx, parse_rational(toks[k + 1].text));
          } catch (const std::exception& e) {
            fail(s.line, s.rhs_column + toks[k + 1].column - 1, e.what());
          }
        }
        aug = from_terms(t);
      } else {
        fail(s.line, s.column, "'" + s.op + "' is not allowed in a cdga definition");
      }
    }
    if (!have_unit && n > 0) fail(1, 1, "cdga definition needs a 'unit' statement");
    def.kind = Kind::Cdga;
    def.cdga = FiniteCdga(b.space, table, unit, d, aug);
    return def;
  }
  fail(1, 1, "unknown kind '" + b.kind + "'");
}

}  // namespace

AlgebraDefinition parse_definition(const std::string& text) {
  Builder b;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    auto toks = tokenize(s);
    if (toks.empty()) continue;
    const std::string& op = toks[0].text;
    auto need = [&](size_t k) {
      if (toks.size() < k)
        fail(line, static_cast<int>(s.size()) + 1, "'" + op + "' needs " + std::to_string(k - 1) + " arguments");
    };
    auto known = [&](const Token& t) {
      if (!b.space.find(t.text)) fail(line, t.column, "unknown name '" + t.text + "'");
    };
    // text after '=' (or after the first `skip` tokens)
    auto rest_after = [&](size_t skip, bool equals) -> std::pair<std::string, int> {
      if (equals) {
        if (toks.size() <= skip || toks[skip].text != "=")
          fail(line, toks.size() > skip ? toks[skip].column : static_cast<int>(s.size()) + 1, "expected '='");
        ++skip;
      }
      if (toks.size() <= skip) fail(line, static_cast<int>(s.size()) + 1, "missing right-hand side");
      int col = toks[skip].column;
      return {s.substr(col - 1), col};
    };
    if (op == "kind") {
      need(2);
      b.kind = toks[1].text;
      if (b.kind != "dgla" && b.kind != "cdga" && b.kind != "free-dgla" && b.kind != "builtin")
        fail(line, toks[1].column, "unknown kind '" + b.kind + "'");
    } else if (op == "name") {
      need(2);
      b.name = s.substr(toks[1].column - 1);
      while (!b.name.empty() && std::isspace(static_cast<unsigned char>(b.name.back()))) b.name.pop_back();
    } else if (op == "builtin") {
      need(2);
      b.builtin = toks[1].text;
      b.builtin_line = line;
    } else if (op == "gen" || op == "basis") {
      need(3);
      const std::string& nm = toks[1].text;
      for (char c : nm)
        if (!is_name_char(c)) fail(line, toks[1].column, "names use letters, digits and '_'");
      if (b.space.find(nm)) fail(line, toks[1].column, "duplicate name '" + nm + "'");
      int deg = to_int(toks[2], line);
      int w = 1;
      if (toks.size() >= 4) {
        if (toks[3].text != "weight" || toks.size() != 5) fail(line, toks[3].column, "expected 'weight <w>'");
        w = to_int(toks[4], line);
        if (w < 1) fail(line, toks[4].column, "weights must be >= 1");
        b.any_weight = true;
      }
      b.space.add(nm, deg);
      b.weights.push_back(w);
      b.gens.push_back({nm, deg, w});
    } else if (op == "bracket" || op == "mul") {
      need(5);
      known(toks[1]);
      known(toks[2]);
      auto [rhs, col] = rest_after(3, true);
      b.stmts.push_back({op, {toks[1].text, toks[2].text}, rhs, line, toks[0].column, col});
    } else if (op == "d") {
      need(4);
      known(toks[1]);
      auto [rhs, col] = rest_after(2, true);
      b.stmts.push_back({op, {toks[1].text}, rhs, line, toks[0].column, col});
    } else if (op == "relation" || op == "mc" || op == "unit" || op == "augmentation") {
      need(2);
      auto [rhs, col] = rest_after(1, false);
      b.stmts.push_back({op, {}, rhs, line, toks[0].column, col});
    } else if (op == "truncation") {
      need(3);
      const std::string& key = toks[1].text;
      if (key != "m" && key != "P" && key != "D" && key != "n")
        fail(line, toks[1].column, "truncation keys are m, P, D, n");
      int v = to_int(toks[2], line);
      if (v < 0) fail(line, toks[2].column, "truncation parameters are >= 0");
      b.truncation[key] = v;
    } else {
      fail(line, toks[0].column, "unknown statement '" + op + "'");
    }
  }
  return build(b);
}

Vec parse_combination(const GradedVectorSpace& space, const std::string& text) {
  return parse_combination(space, text, 1, 1);
}

AlgebraDefinition load_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_definition(ss.str());
}

}  // namespace ratdg
