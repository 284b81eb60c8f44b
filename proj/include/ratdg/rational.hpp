#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ratdg {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation we use.
using Q = mpq_class;

std::string to_string(const Q& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on junk or q = 0.
Q parse_rational(std::string_view text);

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

// Sign (-1)^n for an integer n, as int.
inline int parity_sign(long n) { return (n % 2 == 0) ? 1 : -1; }

inline bool is_odd(long n) { return (n % 2) != 0; }

}  // namespace ratdg
