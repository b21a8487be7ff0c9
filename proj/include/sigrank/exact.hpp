#pragma once

// Exact rational scalars and the small combinatorial helpers shared by every
// other header. All arithmetic is over Q; nothing here ever rounds.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigrank {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when a mathematical precondition of an operation is violated.
class MathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised on malformed textual input (JSON, rational strings, words).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". The result is canonicalized (lowest terms,
/// positive denominator).
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    auto check_digits = [&](std::string_view part, bool allow_sign) {
        if (part.empty()) throw ParseError("malformed rational '" + s + "'");
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) ++i;
        if (i == part.size()) throw ParseError("malformed rational '" + s + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw ParseError("malformed rational '" + s + "'");
    };
    if (slash == std::string::npos) {
        check_digits(s, true);
    } else {
        check_digits(std::string_view(s).substr(0, slash), true);
        check_digits(std::string_view(s).substr(slash + 1), false);
    }
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer factorial(unsigned n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Rational inv_factorial(unsigned n) { return Rational(Integer(1), factorial(n)); }

/// Binomial coefficient C(n, k), zero when k < 0 or k > n or n < 0.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out.get_si();
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    while (exp-- > 0) out *= base;
    return out;
}

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) { return (num + den - 1) / den; }

using Vec = std::vector<Rational>;

}  // namespace sigrank
