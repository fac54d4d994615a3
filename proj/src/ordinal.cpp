#include "ordsep/ordinal.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ordsep {

Ordinal::Ordinal(std::uint64_t n) {
    if (n > 0) terms_.push_back(Term{Ordinal(), BigInt(n)});
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(const Ordinal& e, BigInt coeff) {
    Ordinal r;
    if (coeff < 0) throw std::invalid_argument("negative coefficient");
    if (coeff > 0) r.terms_.push_back(Term{e, std::move(coeff)});
    return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient < 1) throw std::invalid_argument("coefficient < 1 in CNF");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw std::invalid_argument("exponents not strictly decreasing in CNF");
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    return r;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

BigInt Ordinal::finite_value() const {
    if (!is_finite()) throw std::domain_error("ordinal is infinite");
    return terms_.empty() ? BigInt(0) : terms_[0].coefficient;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& ta = a.terms_;
    const auto& tb = b.terms_;
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        auto c = ta[i].exponent <=> tb[i].exponent;
        if (c != 0) return c;
        if (ta[i].coefficient != tb[i].coefficient)
            return ta[i].coefficient < tb[i].coefficient ? std::strong_ordering::less
                                                         : std::strong_ordering::greater;
    }
    return ta.size() <=> tb.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

Ordinal::Classification Ordinal::classify() const {
    if (terms_.empty()) return {Kind::zero, Ordinal()};
    if (!terms_.back().exponent.is_zero()) return {Kind::limit, Ordinal()};
    std::vector<Term> pred = terms_;
    if (pred.back().coefficient == 1)
        pred.pop_back();
    else
        pred.back().coefficient -= 1;
    return {Kind::successor, from_terms(std::move(pred))};
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.terms()[0].exponent;
    std::vector<Ordinal::Term> out;
    for (const auto& t : a.terms()) {
        if (t.exponent > lead)
            out.push_back(t);
        else
            break; // remaining exponents <= lead are absorbed
    }
    out.push_back(b.terms()[0]);
    if (a.terms().size() > out.size() - 1) {
        // merge like leading exponent if a had one
        const auto& at = a.terms()[out.size() - 1];
        if (at.exponent == lead) out.back().coefficient += at.coefficient;
    }
    for (std::size_t i = 1; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
    return Ordinal::from_terms(std::move(out));
}

Ordinal multiply(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    const Ordinal& alpha = a.terms()[0].exponent;
    Ordinal acc;
    for (const auto& bt : b.terms()) {
        Ordinal piece;
        if (!bt.exponent.is_zero()) {
            piece = Ordinal::omega_power(add(alpha, bt.exponent), bt.coefficient);
        } else {
            // right-multiplication by a finite m: scale the leading
            // coefficient, keep the tail of a.
            std::vector<Ordinal::Term> terms = a.terms();
            terms[0].coefficient *= bt.coefficient;
            piece = Ordinal::from_terms(std::move(terms));
        }
        acc = add(acc, piece);
    }
    return acc;
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
    std::vector<Ordinal::Term> out;
    std::size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && ta[i].exponent > tb[j].exponent)) {
            out.push_back(ta[i++]);
        } else if (i == ta.size() || tb[j].exponent > ta[i].exponent) {
            out.push_back(tb[j++]);
        } else {
            out.push_back(Ordinal::Term{ta[i].exponent, ta[i].coefficient + tb[j].coefficient});
            ++i, ++j;
        }
    }
    return Ordinal::from_terms(std::move(out));
}

Ordinal omega_power(const Ordinal& a) { return Ordinal::omega_power(a); }

std::vector<std::pair<Ordinal, Ordinal>> natural_decompositions(const Ordinal& x) {
    const auto& terms = x.terms();
    std::vector<BigInt> split(terms.size(), 0);
    std::vector<std::pair<Ordinal, Ordinal>> out;
    for (;;) {
        std::vector<Ordinal::Term> left, right;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (split[i] > 0) left.push_back({terms[i].exponent, split[i]});
            BigInt rest = terms[i].coefficient - split[i];
            if (rest > 0) right.push_back({terms[i].exponent, rest});
        }
        out.emplace_back(Ordinal::from_terms(std::move(left)), Ordinal::from_terms(std::move(right)));
        // next split, counting up with per-digit radix coefficient+1
        std::size_t k = terms.size();
        while (k > 0) {
            --k;
            if (split[k] < terms[k].coefficient) {
                ++split[k];
                for (std::size_t j = k + 1; j < terms.size(); ++j) split[j] = 0;
                break;
            }
            if (k == 0) return out;
        }
        if (terms.empty()) return out;
    }
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    BigInt nat() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected digits", start);
        return BigInt(s.substr(start, pos - start));
    }

    Ordinal::Term term() {
        skip_ws();
        if (peek() == 'w') {
            ++pos;
            Ordinal exp(1);
            if (eat('^')) {
                skip_ws();
                if (eat('(')) {
                    exp = ordinal();
                    skip_ws();
                    if (!eat(')')) throw ParseError("expected ')'", pos);
                } else {
                    BigInt n = nat();
                    if (n == 0) throw ParseError("exponent 0 must be written as a bare natural", pos);
                    exp = Ordinal::from_terms({{Ordinal(), n}});
                }
            }
            BigInt coeff = 1;
            skip_ws();
            if (eat('*')) coeff = nat();
            if (coeff == 0) throw ParseError("coefficient must be >= 1", pos);
            return {exp, coeff};
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) return {Ordinal(), nat()};
        throw ParseError("expected term", pos);
    }

    Ordinal ordinal() {
        skip_ws();
        // bare zero, also allowed as a trailing finite term
        std::vector<Ordinal::Term> terms;
        for (;;) {
            std::size_t at = pos;
            Ordinal::Term t = term();
            if (t.exponent.is_zero() && t.coefficient == 0)
                throw ParseError("unexpected zero term", at);
            terms.push_back(std::move(t));
            skip_ws();
            if (!eat('+')) break;
        }
        // "0" alone parses through term() as coefficient 0? term() rejects 0 coeffs,
        // so handle the literal zero before validation.
        try {
            return Ordinal::from_terms(std::move(terms));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), pos);
        }
    }
};

} // namespace

Ordinal parse_ordinal(const std::string& text) {
    Parser p{text};
    p.skip_ws();
    if (p.peek() == '0') {
        ++p.pos;
        p.skip_ws();
        if (p.pos != text.size()) throw ParseError("trailing input after '0'", p.pos);
        return Ordinal();
    }
    Ordinal r = p.ordinal();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return r;
}

std::string render_ordinal(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) os << " + ";
        first = false;
        if (t.exponent.is_zero()) {
            os << t.coefficient.str();
            continue;
        }
        os << "w";
        if (t.exponent != Ordinal(1)) {
            if (t.exponent.is_finite())
                os << "^" << t.exponent.finite_value().str();
            else
                os << "^(" << render_ordinal(t.exponent) << ")";
        }
        if (t.coefficient != 1) os << "*" << t.coefficient.str();
    }
    return os.str();
}

std::string Ordinal::to_string() const { return render_ordinal(*this); }

} // namespace ordsep
