#ifndef ORDSEP_BTREE_HPP
#define ORDSEP_BTREE_HPP

#include "ordsep/label.hpp"
#include "ordsep/ordinal.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace ordsep {

/**
 * A finite B-tree: a set of nonempty label sequences closed under nonempty
 * initial segments.  The empty sequence is deliberately absent; the cs-tree
 * machinery that wants a root keeps that convention explicit at its own API
 * (a B-tree of order n corresponds to a rooted tree of order n+1).
 *
 * Nodes are stored sorted; all operations are pure.
 */
class BTree {
public:
    BTree() = default;

    /// Validates downward closure (minus the empty sequence) and sorts.
    static BTree from_nodes(std::vector<Node> nodes);

    /// Chain of length n with nodes (1), (1,2), ..., (1,..,n).
    static BTree chain(std::size_t n);

    const std::vector<Node>& nodes() const { return nodes_; }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    bool contains(const Node& t) const;

    std::vector<Node> max_nodes() const;
    bool is_max(const Node& t) const;

    /// T' = T minus its maximal nodes.
    BTree derived() const;
    BTree iterated_derived(std::size_t k) const;

    /// Number of derivations to empty (equals the maximum node length).
    Ordinal order() const;
    std::size_t order_nat() const;

    /// Longest-chain rank of t: 1 + max over extensions in the tree.
    std::size_t residual_rank(const Node& t) const;

    /// True when every node has exactly one maximal extension.
    bool has_unique_max_extensions() const;
    Node unique_max_extension(const Node& t) const;
    /// Lexicographically least maximal extension of t.
    Node least_max_extension(const Node& t) const;

    /// Restriction to the prefixes of one deepest maximal node.
    BTree deepest_path() const;

    friend bool operator==(const BTree& a, const BTree& b) { return a.nodes_ == b.nodes_; }

private:
    std::vector<Node> nodes_; // sorted, unique
};

/// Lambda(T): ordered comparable pairs (s, t) with s strictly below t.
std::vector<std::pair<Node, Node>> lambda_pairs(const BTree& t);
/// Lambda^e(T): triples (s, t, v) with s < t <= v and v maximal.
std::vector<std::tuple<Node, Node, Node>> lambda_e_triples(const BTree& t);
/// E(T): pairs (s, t) with s <= t and t maximal.
std::vector<std::pair<Node, Node>> e_pairs(const BTree& t);

/**
 * Finite truncation of the tree T_xi:
 *   T_1 = {(1)},  T_{xi+1} = {(xi+1)} union (xi+1)^T_xi,
 *   T_lambda = union over eta < lambda of T_{eta+1}.
 * A limit stage keeps only the branches T_{lambda[1]}, ..., T_{lambda[c]}
 * along the canonical fundamental sequence, where c is the cutoff for that
 * limit's nesting depth (the last cutoff repeats when the list is short).
 * For finite xi the result is exactly T_xi.  Requires xi > 0.
 */
BTree t_xi_truncate(const Ordinal& xi, const std::vector<std::size_t>& cutoffs);

/// k-th element of the canonical fundamental sequence of a limit ordinal.
Ordinal fundamental_sequence(const Ordinal& lambda, std::size_t k);

/**
 * The tree product [T0, T1]: all concatenations
 *   (s_1, x_1^(|s_1|)) ^ ... ^ (s_k, x_k^(|s_k|))
 * with s_i in T0, s_i maximal for i < k, and (x_1..x_k) in T1.  Nodes carry
 * pair labels.  Satisfies o([T0,T1]) = o(T0) o(T1).
 */
class ProductTree {
public:
    ProductTree(const BTree& t0, const BTree& t1); // throws on empty factor

    const BTree& tree() const { return tree_; }
    const BTree& left() const { return t0_; }
    const BTree& right() const { return t1_; }

    /// Block decomposition of a member (the s_i and x_i above).
    struct Block {
        Node left;   // s_i, a T0 node
        Label right; // x_i
    };
    std::vector<Block> decompose(const Node& t) const;

    /// t is regular iff its final block's T0 part is maximal in T0.
    bool is_regular(const Node& t) const;
    /// Level = number of blocks (for [T, T_k]-shaped right factors this is
    /// the paper's level index).
    std::size_t level_of(const Node& t) const;
    /// The regular proper prefix whose unit contains t (empty node for the
    /// first level).
    Node unit_of(const Node& t) const;

    /// Members of the unit beneath the regular node r (r empty: first level).
    std::vector<Node> unit_beneath(const Node& r) const;

private:
    BTree t0_, t1_, tree_;
};

/// Convenience: the product node set alone.
BTree product(const BTree& t0, const BTree& t1);

/**
 * Order-preserving node map between B-trees: s < t implies map(s) < map(t).
 * Stored as an explicit assignment on the domain's nodes.
 */
class MonotoneMap {
public:
    MonotoneMap() = default;
    MonotoneMap(BTree domain, BTree codomain, std::map<Node, Node> assignment);

    static MonotoneMap identity(const BTree& t);

    const BTree& domain() const { return domain_; }
    const BTree& codomain() const { return codomain_; }
    const Node& operator()(const Node& t) const;
    const std::map<Node, Node>& assignment() const { return map_; }

    bool verify() const; // re-checks the order-preservation invariant

private:
    BTree domain_, codomain_;
    std::map<Node, Node> map_;
};

MonotoneMap compose(const MonotoneMap& inner, const MonotoneMap& outer);

/**
 * Greedy rank-guided construction: returns a verified monotone map iff
 * o(T0) <= o(T1).  Each node maps to the lexicographically least extension
 * of its parent's image whose residual rank suffices.
 */
std::optional<MonotoneMap> find_monotone_map(const BTree& t0, const BTree& t1);

/// A monotone map together with a maximal-node extension e with map(s) <= e(s).
class ExtendedMonotoneMap {
public:
    ExtendedMonotoneMap() = default;
    ExtendedMonotoneMap(MonotoneMap map, std::map<Node, Node> extension);

    static ExtendedMonotoneMap identity(const BTree& t);

    const MonotoneMap& map() const { return map_; }
    const std::map<Node, Node>& extension() const { return ext_; }
    const Node& extend(const Node& max_node) const;

    bool verify() const;

private:
    MonotoneMap map_;
    std::map<Node, Node> ext_; // MAX(domain) -> MAX(codomain)
};

/// Extends theta by sending each maximal node to the lexicographically least
/// maximal extension of its image.
ExtendedMonotoneMap extend(const MonotoneMap& theta);

ExtendedMonotoneMap compose(const ExtendedMonotoneMap& inner, const ExtendedMonotoneMap& outer);

/**
 * Monotone maps theta1 : [T_xi, T_zeta] -> T_{xi zeta} and theta2 the other
 * way, on truncated instances.  Throws std::runtime_error when the
 * truncations fail to realize equal orders.
 */
std::pair<MonotoneMap, MonotoneMap> canonical_product_maps(const Ordinal& xi, const Ordinal& zeta,
                                                           const std::vector<std::size_t>& cutoffs);

} // namespace ordsep

#endif
