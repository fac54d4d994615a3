#ifndef ORDSEP_SYMBOLIC_HPP
#define ORDSEP_SYMBOLIC_HPP

#include "ordsep/btree.hpp"

#include <memory>
#include <vector>

namespace ordsep {

/**
 * Symbolic descriptors for the trees T_xi and products [L, R]: membership is
 * decidable and the order is computed symbolically (o(T_xi) = xi, o([L,R]) =
 * o(L) o(R)) without materializing nodes.  Children are enumerable only
 * under an explicit cutoff, since limit stages branch infinitely.
 */
class SymbolicTree {
public:
    static SymbolicTree t_xi(Ordinal xi); // requires xi > 0
    static SymbolicTree product(SymbolicTree left, SymbolicTree right);

    bool is_txi() const { return kind_ == Kind::txi; }
    const Ordinal& xi() const { return xi_; }
    const SymbolicTree& left() const { return *left_; }
    const SymbolicTree& right() const { return *right_; }

    Ordinal order() const;

    /// Membership of an explicit label sequence (Ordinal labels for T_xi,
    /// pair labels for products).
    bool contains(const Node& t) const;
    bool is_max(const Node& t) const;

    /// Children of t (t may be the empty sequence for roots); limit-stage
    /// branching is truncated to `cutoff` fundamental-sequence members.
    std::vector<Node> children(const Node& t, std::size_t cutoff) const;

private:
    enum class Kind { txi, product };
    Kind kind_ = Kind::txi;
    Ordinal xi_;
    std::shared_ptr<const SymbolicTree> left_, right_;
};

} // namespace ordsep

#endif
