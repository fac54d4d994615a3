#ifndef ORDSEP_RATIONAL_HPP
#define ORDSEP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ordsep {

// Exact arithmetic everywhere: separation decisions are equality-sensitive,
// so no floating point appears in any decision path.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Renders "p/q" (or just "p" when q == 1).
inline std::string to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "p/q" or "p"; throws ParseError on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&](std::size_t pos) { return ParseError("malformed rational '" + s + "'", pos); };
    if (s.empty()) throw bad(0);
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw bad(slash + 1);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw bad(slash == std::string::npos ? 0 : slash + 1);
    }
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace ordsep

#endif
