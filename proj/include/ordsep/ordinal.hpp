#ifndef ORDSEP_ORDINAL_HPP
#define ORDSEP_ORDINAL_HPP

#include "ordsep/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ordsep {

/**
 * Ordinals below epsilon-zero in Cantor normal form:
 *
 *     a = w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck
 *
 * with exponents e1 > e2 > ... > ek (themselves ordinals) and coefficients
 * ci >= 1 arbitrary-precision naturals.  The empty term list is 0.  Values
 * are immutable after construction and every operation is pure.
 */
class Ordinal {
public:
    struct Term {
        Ordinal exponent;
        BigInt coefficient; // >= 1
    };

    Ordinal() = default;                       // zero
    Ordinal(std::uint64_t n);                  // finite ordinal (implicit)
    static Ordinal omega();                    // w
    static Ordinal omega_power(const Ordinal& e, BigInt coeff = 1);

    /// Builds from terms, validating strict exponent descent and coeff >= 1.
    static Ordinal from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    /// Value as a natural number; throws std::domain_error if infinite.
    BigInt finite_value() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

    enum class Kind { zero, successor, limit };
    struct Classification {
        Kind kind;
        Ordinal predecessor; // meaningful only when kind == successor
    };
    Classification classify() const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
bool operator==(const Ordinal& a, const Ordinal& b);
inline bool operator!=(const Ordinal& a, const Ordinal& b) { return !(a == b); }

/// Ordinary (non-commutative) ordinal sum: terms of `a` below the leading
/// exponent of `b` are absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

/// Ordinary ordinal product (b copies of a, non-commutative).
Ordinal multiply(const Ordinal& a, const Ordinal& b);

/// Hessenberg (natural) sum: merge like exponents, add coefficients.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);

/// w^a (omega_power(0) = 1).
Ordinal omega_power(const Ordinal& a);

/**
 * All pairs (g0, g1) with g0 (+) g1 == x, where (+) is the natural sum.
 * The list is complete and duplicate-free; its size is the product of
 * (coefficient + 1) over the terms of x.  Pairs are emitted in ascending
 * lexicographic order of the coefficient splits assigned to g0, scanning
 * terms from the leading one.
 */
std::vector<std::pair<Ordinal, Ordinal>> natural_decompositions(const Ordinal& x);

/**
 * Canonical text grammar, with `w` standing for omega:
 *
 *   ordinal :=  "0"  |  term (" + " term)*          (exponents strictly decreasing)
 *   term    :=  nat  |  "w" power? mult?
 *   power   :=  "^" nat  |  "^(" ordinal ")"
 *   mult    :=  "*" nat
 *
 * render() emits the canonical form (coefficient 1 omitted, exponent 1 bare,
 * finite exponents unparenthesised); parse() accepts the grammar and throws
 * ParseError with a position otherwise.
 */
Ordinal parse_ordinal(const std::string& text);
std::string render_ordinal(const Ordinal& a);

} // namespace ordsep

#endif
