#ifndef ORDSEP_LABEL_HPP
#define ORDSEP_LABEL_HPP

#include "ordsep/ordinal.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ordsep {

/**
 * Node labels: an integer, an Ordinal, or a pair of labels (pairs arise in
 * tree products).  Totally ordered so node sets have a canonical order.
 */
class Label {
public:
    enum class Kind { integer, ordinal, pair };

    Label() : kind_(Kind::integer), int_(0) {}
    Label(std::int64_t v) : kind_(Kind::integer), int_(v) {}
    Label(Ordinal v) : kind_(Kind::ordinal), ord_(std::move(v)) {}
    Label(const Label& a, const Label& b)
        : kind_(Kind::pair), pair_(std::make_shared<std::pair<Label, Label>>(a, b)) {}

    Kind kind() const { return kind_; }
    std::int64_t as_int() const { return int_; }
    const Ordinal& as_ordinal() const { return ord_; }
    const Label& first() const { return pair_->first; }
    const Label& second() const { return pair_->second; }

    friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        switch (a.kind_) {
            case Kind::integer: return a.int_ <=> b.int_;
            case Kind::ordinal: return a.ord_ <=> b.ord_;
            case Kind::pair: {
                auto c = a.first() <=> b.first();
                return c != 0 ? c : a.second() <=> b.second();
            }
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Label& a, const Label& b) { return (a <=> b) == 0; }

    std::string to_string() const {
        switch (kind_) {
            case Kind::integer: return std::to_string(int_);
            case Kind::ordinal: return ord_.to_string();
            case Kind::pair: return "(" + first().to_string() + "," + second().to_string() + ")";
        }
        return {};
    }

private:
    Kind kind_;
    std::int64_t int_ = 0;
    Ordinal ord_;
    std::shared_ptr<const std::pair<Label, Label>> pair_; // immutable, shared
};

/// A tree node: a nonempty finite label sequence.
using Node = std::vector<Label>;

inline std::string node_to_string(const Node& n) {
    std::string s = "(";
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i) s += ",";
        s += n[i].to_string();
    }
    return s + ")";
}

/// Initial-segment order: s precedes t iff s is a proper prefix of t.
inline bool is_proper_prefix(const Node& s, const Node& t) {
    if (s.size() >= t.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!(s[i] == t[i])) return false;
    return true;
}

inline bool is_prefix(const Node& s, const Node& t) {
    return s.size() == t.size() ? s == t : is_proper_prefix(s, t);
}

} // namespace ordsep

#endif
