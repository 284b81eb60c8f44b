#include "ratdg/tensor_words.hpp"

#include <cctype>
#include <stdexcept>

#include "ratdg/errors.hpp"

namespace ratdg {

int word_degree(const GeneratorSet& g, const Word& w) {
  int d = 0;
  for (unsigned char c : w) d += g.at(c).degree;
  return d;
}

int word_weight(const GeneratorSet& g, const Word& w) {
  int d = 0;
  for (unsigned char c : w) d += g.at(c).weight;
  return d;
}

TensorPoly truncate_weight(const GeneratorSet& g, const TensorPoly& p, int m) {
  TensorPoly out;
  for (const auto& [w, c] : p)
    if (word_weight(g, w) <= m) out.emplace(w, c);
  return out;
}

Word letter(int gen) {
  if (gen < 0 || gen > 250) throw std::out_of_range("generator index");
  return Word(1, static_cast<char>(gen));
}

void add_into(TensorPoly& acc, const TensorPoly& p, const Q& scale) {
  if (is_zero(scale)) return;
  for (const auto& [w, c] : p) {
    auto it = acc.find(w);
    if (it == acc.end()) {
      acc.emplace(w, c * scale);
    } else {
      it->second += c * scale;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

TensorPoly scaled(const TensorPoly& p, const Q& c) {
  TensorPoly out;
  if (is_zero(c)) return out;
  for (const auto& [w, x] : p) out.emplace(w, x * c);
  return out;
}

TensorPoly multiply(const TensorPoly& a, const TensorPoly& b, int max_len) {
  TensorPoly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      if (max_len >= 0 && static_cast<int>(u.size() + v.size()) > max_len) continue;
      Word w = u + v;
      auto it = out.find(w);
      if (it == out.end()) {
        out.emplace(std::move(w), x * y);
      } else {
        it->second += x * y;
        if (is_zero(it->second)) out.erase(it);
      }
    }
  return out;
}

int poly_degree(const GeneratorSet& g, const TensorPoly& p) {
  if (p.empty()) return 0;
  int d = word_degree(g, p.begin()->first);
  for (const auto& [w, c] : p)
    if (word_degree(g, w) != d) throw DegreeMismatch("inhomogeneous tensor polynomial");
  return d;
}

TensorPoly commutator(const GeneratorSet& g, const TensorPoly& a, const TensorPoly& b,
                      int max_len) {
  if (a.empty() || b.empty()) return {};
  int da = poly_degree(g, a), db = poly_degree(g, b);
  TensorPoly out = multiply(a, b, max_len);
  add_into(out, multiply(b, a, max_len), -Q(parity_sign(static_cast<long>(da) * db)));
  return out;
}

TensorPoly derivation(const GeneratorSet& g, const std::vector<TensorPoly>& on_gens,
                      const TensorPoly& p, int max_len) {
  TensorPoly out;
  for (const auto& [w, c] : p) {
    int prefix_deg = 0;
    for (size_t k = 0; k < w.size(); ++k) {
      unsigned char gen = w[k];
      const TensorPoly& dg = on_gens.at(gen);
      Q s = c * parity_sign(prefix_deg);
      Word pre = w.substr(0, k), post = w.substr(k + 1);
      for (const auto& [v, y] : dg) {
        if (max_len >= 0 && static_cast<int>(pre.size() + v.size() + post.size()) > max_len)
          continue;
        TensorPoly term{{pre + v + post, s * y}};
        add_into(out, term);
      }
      prefix_deg += g.at(gen).degree;
    }
  }
  return out;
}

TensorPoly truncate(const TensorPoly& p, int max_len) {
  TensorPoly out;
  for (const auto& [w, c] : p)
    if (static_cast<int>(w.size()) <= max_len) out.emplace(w, c);
  return out;
}

TensorPoly substitute(const std::vector<TensorPoly>& images, const TensorPoly& p,
                      int max_len) {
  TensorPoly out;
  for (const auto& [w, c] : p) {
    TensorPoly acc{{Word(), c}};
    for (unsigned char gen : w) {
      acc = multiply(acc, images.at(gen), max_len);
      if (acc.empty()) break;
    }
    add_into(out, acc);
  }
  return out;
}

std::string word_to_string(const GeneratorSet& g, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += g.at(static_cast<unsigned char>(w[i])).name;
  }
  return s;
}

std::string poly_to_string(const GeneratorSet& g, const TensorPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p) {
    if (!first) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    first = false;
    Q a = abs(c);
    if (a != 1) s += a.get_str() + " ";
    s += word_to_string(g, w);
  }
  return s;
}

namespace {

struct ExprParser {
  const GeneratorSet& g;
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("column " + std::to_string(pos + 1) + ": " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  TensorPoly sum() {
    TensorPoly acc;
    skip();
    Q sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    add_into(acc, term(), sign);
    for (;;) {
      skip();
      if (eat('+')) add_into(acc, term());
      else if (eat('-')) add_into(acc, term(), -1);
      else break;
    }
    return acc;
  }

  TensorPoly term() {
    skip();
    Q c = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
        ++pos;
      c = parse_rational(s.substr(start, pos - start));
      skip();
      eat('*');
      skip();
      if (pos >= s.size() || s[pos] == '+' || s[pos] == '-' || s[pos] == ',' || s[pos] == ']')
        fail("a scalar alone is not a Lie element");
    }
    return scaled(atom(), c);
  }

  TensorPoly atom() {
    skip();
    if (eat('[')) {
      TensorPoly a = sum();
      if (!eat(',')) fail("expected ','");
      TensorPoly b = sum();
      if (!eat(']')) fail("expected ']'");
      return commutator(g, a, b);
    }
    if (eat('(')) {
      TensorPoly a = sum();
      if (!eat(')')) fail("expected ')'");
      return a;
    }
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                              s[pos] == '\''))
      ++pos;
    if (start == pos) fail("expected a generator or '['");
    std::string name = s.substr(start, pos - start);
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i].name == name) return TensorPoly{{letter(static_cast<int>(i)), Q(1)}};
    pos = start;
    fail("unknown generator '" + name + "'");
  }
};

}  // namespace

TensorPoly parse_lie_expression(const GeneratorSet& g, const std::string& text) {
  ExprParser p{g, text};
  p.skip();
  if (p.pos < text.size() && text[p.pos] == '0') {
    size_t save = p.pos;
    ++p.pos;
    p.skip();
    if (p.pos == text.size()) return {};
    p.pos = save;
  }
  TensorPoly r = p.sum();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return r;
}

std::vector<Word> lyndon_words(int k, int max_len) {
  std::vector<Word> out;
  if (k <= 0 || max_len <= 0) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    Word word;
    for (int c : w) word.push_back(static_cast<char>(c));
    out.push_back(word);
    size_t m = w.size();
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  auto is_lyndon = [](const Word& u) {
    for (size_t i = 1; i < u.size(); ++i)
      if (u.substr(i) <= u) return false;
    return true;
  };
  for (size_t i = 1; i < w.size(); ++i) {
    Word v = w.substr(i);
    if (is_lyndon(v)) return {w.substr(0, i), v};
  }
  throw std::logic_error("word of length 1 has no standard factorization");
}

}  // namespace ratdg
