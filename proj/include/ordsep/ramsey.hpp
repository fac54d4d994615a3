#ifndef ORDSEP_RAMSEY_HPP
#define ORDSEP_RAMSEY_HPP

#include "ordsep/btree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace ordsep {

using Color = std::int64_t;

/// Total coloring of the comparable pairs Lambda(tree).
struct PairColoring {
    BTree tree;
    std::map<std::pair<Node, Node>, Color> table;

    Color at(const Node& s, const Node& t) const;
    std::set<Color> colors() const;
    void validate_total() const; // throws when a comparable pair is uncolored
};

/// Total coloring of the triples Lambda^e(tree).
struct TripleColoring {
    BTree tree;
    std::map<std::tuple<Node, Node, Node>, Color> table;

    Color at(const Node& s, const Node& t, const Node& v) const;
    std::set<Color> colors() const;
    void validate_total() const;
};

/// One pipeline stage of the quantitative loss ledger: what the stage needs
/// as a function of what it produced.
struct StageReport {
    std::string stage;
    std::size_t input_size = 0;
    std::size_t output_size = 0;
    std::string note;
};

class InsufficientDomain : public std::runtime_error {
public:
    InsufficientDomain(const std::string& what, std::vector<StageReport> stages)
        : std::runtime_error(what), stages_(std::move(stages)) {}
    const std::vector<StageReport>& stages() const { return stages_; }

private:
    std::vector<StageReport> stages_;
};

/// Self-verifying homogenization result: re-checking every mapped pair or
/// triple against the original coloring yields `color`.
struct HomogeneousWitness {
    ExtendedMonotoneMap map;
    Color color = 0;
    bool verified = false;
    std::vector<StageReport> stages;
};

/// Guaranteed-sufficiency bound for a homogeneous n-subset under 2 colors:
/// C(2n-2, n-1).  Exact Ramsey numbers appear only as test oracles.
std::size_t chain_ramsey_bound(std::size_t n);

struct ChainHomogeneous {
    std::vector<std::size_t> indices; // 1-based positions l_1 < ... < l_n
    Color color;
};

/**
 * Searches an M-chain's pair coloring for a homogeneous n-subset
 * (lexicographically first).  Never returns nullopt when the coloring uses
 * at most 2 colors and M >= chain_ramsey_bound(n); below the bound a
 * nullopt is the exhaustive-search negative.  Throws on non-chain domains.
 */
std::optional<ChainHomogeneous> homogenize_chain(std::size_t n, const PairColoring& coloring);

/**
 * Multi-color reduction by nested binary partitions of the color set, each
 * stage delegating to homogenize_chain on the induced 2-coloring; returns a
 * verified witness of size >= n_target or throws InsufficientDomain naming
 * the failing stage.
 */
HomogeneousWitness reduce_colors(const PairColoring& coloring, std::size_t n_target);

/// Largest chain whose pairs all carry color eps (exhaustive; for the
/// sharpness checks, domains stay small).
std::size_t max_homogeneous_chain(const PairColoring& coloring, Color eps);

/**
 * Cross-level homogenization on a product [T, T_k], k = 2^(2n-2): a monotone
 * map from a [T, T_n]-shaped domain such that every mapped comparable pair
 * on distinct levels receives the returned color.  Follows the recursion:
 * per-unit stabilization, then level selection.  Unit stabilization at full
 * order is guaranteed when T is a single node (units are singletons) and
 * attempted by exhaustive search otherwise; failures throw
 * InsufficientDomain.  The right factor must be a chain.
 */
struct LevelsResult {
    MonotoneMap theta;
    Color color = 0;
    std::vector<StageReport> stages;
};
LevelsResult homogenize_levels(const ProductTree& prod, const PairColoring& coloring, std::size_t n);

/**
 * Level selection for a unit-constant node coloring g on [T, T_k], k = n|S|:
 * picks the value x whose n-th occurrence along the canonical unit chain is
 * earliest, and maps [T, T_n] level i onto level l_i unit-isomorphically.
 */
struct SelectResult {
    MonotoneMap theta;
    Color value = 0;
    std::vector<std::size_t> levels;
};
SelectResult select_levels(const ProductTree& prod, const std::map<Node, Color>& g, std::size_t n,
                           const std::vector<Color>& color_set);

/**
 * Removes the maximal-node dependence from a coloring: given f on E(T)
 * (pairs s <= t, t maximal) returns g with g(s) = f(theta(s), e(t)) for all
 * (s, t) in E of the domain; given f on Lambda^e(T) returns g on pairs with
 * g(s, t) = f(theta(s), theta(t), e(v)).  Exact (identity maps) on trees
 * whose nodes have unique maximal extensions; otherwise the domain restricts
 * to the deepest path of each incomparable component.
 */
struct DropResult {
    ExtendedMonotoneMap map;
    std::map<Node, Color> node_table;                  // for E-colorings
    std::map<std::pair<Node, Node>, Color> pair_table; // for Lambda^e-colorings
    std::vector<StageReport> stages;
};
DropResult drop_dependence_e(const BTree& tree, const std::map<std::pair<Node, Node>, Color>& f);
DropResult drop_dependence_lambda_e(const TripleColoring& f);

/**
 * Full pipeline for Lambda^e colorings: drop_dependence, then multi-color
 * pair homogenization, with all maps composed and the result re-verified
 * triple by triple.  n_target = 0 accepts any nonempty output.
 */
HomogeneousWitness homogenize_lambda_e(const TripleColoring& coloring, std::size_t n_target = 0);

/**
 * The shuffle maps p, q : T -> [T_2, T] (T_2 = {(2), (2,1)}), with
 * p(s) < q(s) for every s and q(s) < p(t) whenever s < t, so that
 * p(s|_1) < q(s|_1) < ... < p(s) < q(s) interleaves every branch.
 */
std::pair<MonotoneMap, MonotoneMap> shuffle_maps(const BTree& t);

/**
 * Sharpness construction: for finite xi = zeta0 + zeta1, a truncated tree of
 * order cutoff^xi and a 2-coloring such that every color-eps homogeneous
 * chain has length at most bound_eps = cutoff^zeta_eps.
 */
struct SharpColoring {
    BTree tree;
    PairColoring coloring;
    std::size_t bound0 = 0;
    std::size_t bound1 = 0;
};
SharpColoring sharp_coloring(std::size_t xi, std::size_t zeta0, std::size_t zeta1, std::size_t cutoff);

} // namespace ordsep

#endif
