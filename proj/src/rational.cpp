#include "ratdg/rational.hpp"

#include <stdexcept>

namespace ratdg {

std::string to_string(const Q& q) {
  return q.get_str();
}

Q parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num = num.substr(1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw std::invalid_argument("bad rational '" + s + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Q q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace ratdg
