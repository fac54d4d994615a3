#ifndef ORDSEP_JAMES_HPP
#define ORDSEP_JAMES_HPP

#include "ordsep/body.hpp"
#include "ordsep/btree.hpp"
#include "ordsep/ramsey.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ordsep {

/**
 * Certificate that a sequence is (K, eps)-convexly separated: for each split
 * m, a functional in K (optionally as convex weights over K's vertices)
 * whose margin min over i <= m < j of x*(x_i - x_j) is recorded exactly.
 */
struct CsCertificate {
    struct Split {
        std::size_t m = 0;
        Vec functional;
        std::vector<Rational> weights; // over the body's vertices; may be empty
        Rational margin;
    };
    std::vector<Vec> sequence;
    std::vector<Split> splits;

    /// Re-checks margins (and weight validity when weights are present) by
    /// direct rational arithmetic.
    bool verify(const Body& k, const Rational& eps, bool require_weights = false) const;
};

struct CsCheck {
    bool is_cs = false;
    std::size_t failed_split = 0; // valid when !is_cs
    CsCertificate certificate;    // valid when is_cs
};

/**
 * Decides whether seq is (K, eps)-cs.  Runs both the primal route
 * (hull_distance per split) and the dual route (separating-functional LP);
 * the two must agree exactly, and the dual optimum furnishes the
 * certificate.  The empty and singleton sequences are cs by convention.
 */
CsCheck is_cs(const Body& k, const Rational& eps, const std::vector<Vec>& seq);

/**
 * The tree of all (K, eps)-cs sequences over the finite candidate set P
 * (a lower-bound surrogate for the ball-quantified tree).  Nodes are
 * sequences of 1-based indices into P.  The empty sequence is the implicit
 * root: order_with_root = o(body tree) + 1.  Throws when some p lies
 * outside the unit ball of `ball`.
 */
struct CsEnumTree {
    BTree tree;
    std::size_t order_with_root = 0;
    bool depth_capped = false;
};
CsEnumTree cs_tree(const Body& k, const Rational& eps, const std::vector<Vec>& points,
                   const SpaceNorm& ball, std::size_t depth_cap = 64);

/// A* B_{Y*}: vertices are A^T applied to the dual ball's vertices.
Body operator_body(const Matrix& a, const Body& dual_ball);

/**
 * Finite verification of the ideal properties: composition (nodes of the
 * AB-tree map under B into the A-tree) and perturbation (the A-tree at eps
 * sits inside the B-tree at delta2 = eps - 2 delta1 when ||A - B|| < delta1).
 * Any reported violation indicates an implementation bug, not a theorem
 * failure.
 */
struct IdealReport {
    bool composition_ok = true;
    bool perturbation_ok = true;
    std::size_t composition_nodes = 0;
    std::size_t perturbation_nodes = 0;
    Rational op_distance; // exact ||A - B||
    std::vector<std::string> violations;
};
IdealReport ideal_checks(const Matrix& a, const Matrix& b_compose, const Matrix& b_perturb,
                         const SpaceNorm& domain_norm, const Body& dual_ball, const Rational& eps,
                         const Rational& delta1, const std::vector<Vec>& points);

/**
 * The lower-l1-estimate tree: sequences over P whose A-images satisfy
 * || sum a_i A x_i || >= c^-1 sum |a_i| for all scalars, decided exactly by
 * one LP per sign pattern of the l1-sphere facets.  Also verifies the
 * inclusion T_1(A, c) in J(A* B_{Y*}, c^-1) nodewise.
 */
struct L1TreeResult {
    BTree tree;
    std::size_t order_with_root = 0;
    bool inclusion_ok = true;
    std::vector<std::string> violations;
};
L1TreeResult l1_tree(const Matrix& a, const Rational& c, const std::vector<Vec>& points,
                     const SpaceNorm& y_norm, const SpaceNorm& x_ball);

/**
 * Squared James-tree norm of a finitely supported vector: the exact maximum
 * over families of pairwise disjoint segments of the sum of squared segment
 * sums, by exhaustive search over segment families.
 */
Rational jt_norm_squared(const BTree& tree, const std::map<Node, Rational>& v);

/**
 * A tree-indexed family of points with per-path split certificates; the
 * index tree is a B-tree (the empty root of the paper's J-trees is left
 * implicit, so j-order = o(index) + 1).
 */
struct CsTreeFamily {
    BTree index;
    std::map<Node, Vec> points;
    /// x*_{t,v} for t properly below a maximal v.
    std::map<std::pair<Node, Node>, Vec> certificates;
    std::map<std::pair<Node, Node>, std::vector<Rational>> weights; // optional, per certificate

    std::size_t point_dim() const;
};

/// Re-verifies the full family: every root-to-maximal path, every split,
/// margin >= eps by direct rational arithmetic; when a body is supplied,
/// also weight validity and the independent is_cs decision on every
/// maximal path.
struct FamilyVerification {
    bool ok = true;
    Rational min_margin;  // over all split inequalities (0 when none)
    bool any_margin = false;
    std::vector<std::string> violations;
};
FamilyVerification verify_family(const CsTreeFamily& w, const Rational& eps, const Body* k = nullptr,
                                 bool check_weights = false);

/**
 * The basis witness on a finite index tree: x_t = e_t, certificates are
 * segment indicators through each split prefix, margins exactly 1; the
 * family is (B_{JT*}, 1)-cs and its index order equals o(T).
 */
CsTreeFamily jt_witness(const BTree& t);

/**
 * The coding tree on the naturals: root, one branch (k) per k <= kmax, and
 * below (k) the cs-sequence tree over P at threshold 1/k.  Its order equals
 * 1 + max over k of order_with_root(cs_tree(A, 1/k)), which the result
 * reports on both sides.
 */
struct CodingResult {
    BTree tree; // nodes over int labels; root implicit
    std::size_t order_with_root = 0;
    std::size_t formula_rhs = 0; // 1 + max_k order_with_root(cs tree at 1/k)
    bool capped = false;
};
CodingResult coding_tree(const Matrix& a, const Body& dual_ball, const std::vector<Vec>& points,
                         std::size_t kmax, const SpaceNorm& ball, std::size_t depth_cap = 64);

/**
 * Sum-lemma extraction: from a (K+L, eps)-cs family, a re-verified
 * (K, eps/3)- or (L, eps/3)-cs family via cell homogenization of the
 * certificate values, level shuffling, and exact re-verification.
 */
enum class Side { first, second };
struct ExtractResult {
    Side side = Side::first;
    CsTreeFamily out;
    Rational guaranteed_margin;     // from the chosen side's cell gap
    Rational achieved_margin;       // min exact margin of the output (0: no splits)
    bool any_split = false;
    bool used_shuffle_fallback = false;
    std::vector<StageReport> stages;
};
ExtractResult extract_summand(const Body& k, const Body& l, const Rational& eps, const CsTreeFamily& w);

} // namespace ordsep

#endif
