#pragma once

// Exact rationals. Everything in the library is computed over Q; there is no
// floating point anywhere on the computation path.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specrec {

using Integer = mpz_class;
using Scalar = mpq_class;

/// Thrown for malformed rational literals ("0.5", "1e3", "3/0", ...).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Canonical "p/q" form; integers are written with an explicit "/1".
inline std::string to_string(const Scalar& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "[+-]digits" or "[+-]digits/digits". Anything else is rejected,
/// in particular decimal points and exponents.
inline Scalar parse_scalar(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
        throw ParseError("not an exact rational literal: '" + std::string(text) + "'");
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Scalar q(negative ? Integer(-n) : n, d);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

} // namespace specrec
