#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gdga {

using Q = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "-p", "p/q". Zero denominators are rejected.
Q parse_rational(const std::string& s);

// Lowest terms, sign on the numerator, "p" when the denominator is 1.
std::string to_string(const Q& q);

inline int parity(long long e) { return static_cast<int>(((e % 2) + 2) % 2); }
inline int sign_of(long long e) { return parity(e) ? -1 : 1; }

}  // namespace gdga
