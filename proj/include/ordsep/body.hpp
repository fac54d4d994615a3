#ifndef ORDSEP_BODY_HPP
#define ORDSEP_BODY_HPP

#include "ordsep/lp.hpp"
#include "ordsep/rational.hpp"

#include <cstddef>
#include <vector>

namespace ordsep {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& c, const Vec& a);

/// Dense rational matrix, row-major.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}
    static Matrix identity(std::size_t n);

    Rational& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Vec apply(const Vec& x) const;           // A x
    Vec apply_transpose(const Vec& y) const; // A^T y
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matsub(const Matrix& a, const Matrix& b);

/**
 * A body: nonempty, symmetric, convex polytope in a dual space, held by its
 * vertex list.  Construction symmetrizes (adds negations) and canonicalizes,
 * so K = conv(vertices) is always symmetric.  Induces the seminorm
 * |x|_K = max over vertices of <v, x>.
 */
class Body {
public:
    static Body from_vertices(std::size_t dim, std::vector<Vec> vertices);
    /// conv{+-e_1, ..., +-e_d}.
    static Body cross_polytope(std::size_t dim);
    /// Minkowski sum, all pairwise vertex sums (unpruned: the certificate
    /// splitting in the sum-lemma pipeline needs the pair decomposition).
    static Body minkowski_sum(const Body& k, const Body& l);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }

    /// |x|_K = sup over K of x*(x), attained at a vertex.
    Rational support(const Vec& x) const;
    /// Exact membership of a point in conv(vertices), by feasibility LP.
    bool contains(const Vec& x) const;
    /// Vertexwise hull containment: every vertex of this lies in other.
    bool subset_of(const Body& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<Vec> vertices_;
};

/**
 * A polyhedral norm given by dual functionals: B_X = {x : |<f, x>| <= 1 for
 * all f in F}.  F must span the dual so the ball is bounded.
 */
class SpaceNorm {
public:
    static SpaceNorm from_functionals(std::size_t dim, std::vector<Vec> functionals);
    /// The sup-norm ball (functionals e_1..e_d).
    static SpaceNorm box(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& functionals() const { return fs_; }

    Rational norm(const Vec& x) const; // max over F of |<f, x>|
    bool in_ball(const Vec& x) const;  // norm(x) <= 1, exact

    /// B_{X*} = conv(+-F) as a Body.
    Body dual_ball() const;
    /// Dual norm: min sum of |c_f| over decompositions g = sum c_f f.
    Rational dual_norm(const Vec& g) const;

private:
    std::size_t dim_ = 0;
    std::vector<Vec> fs_;
};

/**
 * d_K(co(S1), co(S2)): exact minimum of |x - y|_K over the two hulls, by an
 * epigraph LP over convex weights.
 */
Rational hull_distance(const Body& k, const std::vector<Vec>& s1, const std::vector<Vec>& s2);

/// Best separation margin max over x* in K of min over (i,j) of x*(s1_i - s2_j),
/// the Hahn-Banach dual of hull_distance; the two agree exactly by LP duality.
struct SplitMargin {
    Rational margin;
    std::vector<Rational> weights; // convex weights over K's vertices
    Vec functional;                // the induced x* in K
};
SplitMargin best_split_margin(const Body& k, const std::vector<Vec>& s1, const std::vector<Vec>& s2);

/// Operator norm of A : X -> Y with polyhedral B_X and B_{Y*} = dual_ball.
Rational operator_norm(const Matrix& a, const SpaceNorm& domain_norm, const Body& codomain_dual_ball);

} // namespace ordsep

#endif
