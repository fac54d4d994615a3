#include "ordsep/body.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordsep {

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_scale(const Rational& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols) throw std::invalid_argument("dimension mismatch");
    Vec y(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) y[i] += at(i, j) * x[j];
    return y;
}

Vec Matrix::apply_transpose(const Vec& y) const {
    if (y.size() != rows) throw std::invalid_argument("dimension mismatch");
    Vec x(cols, Rational(0));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) x[j] += at(i, j) * y[i];
    return x;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("dimension mismatch");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k)
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    return c;
}

Matrix matsub(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("dimension mismatch");
    Matrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
    return c;
}

Body Body::from_vertices(std::size_t dim, std::vector<Vec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("a body has at least one vertex");
    for (const auto& v : vertices)
        if (v.size() != dim) throw std::invalid_argument("vertex dimension mismatch");
    std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) vertices.push_back(vec_scale(Rational(-1), vertices[i]));
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    Body b;
    b.dim_ = dim;
    b.vertices_ = std::move(vertices);
    return b;
}

Body Body::cross_polytope(std::size_t dim) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, Rational(0));
        e[i] = 1;
        vs.push_back(std::move(e));
    }
    return from_vertices(dim, std::move(vs));
}

Body Body::minkowski_sum(const Body& k, const Body& l) {
    if (k.dim() != l.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<Vec> vs;
    for (const auto& a : k.vertices())
        for (const auto& b : l.vertices()) vs.push_back(vec_add(a, b));
    return from_vertices(k.dim(), std::move(vs));
}

Rational Body::support(const Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("dimension mismatch");
    Rational best = dot(vertices_[0], x);
    for (std::size_t i = 1; i < vertices_.size(); ++i) best = std::max(best, dot(vertices_[i], x));
    return best;
}

bool Body::contains(const Vec& x) const {
    // weights w >= 0, sum w = 1, sum w_i v_i = x
    std::size_t n = vertices_.size();
    std::vector<LpConstraint> cons;
    for (std::size_t d = 0; d < dim_; ++d) {
        LpConstraint c;
        c.coeffs.resize(n);
        for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = vertices_[i][d];
        c.rel = Rel::eq;
        c.rhs = x[d];
        cons.push_back(std::move(c));
    }
    cons.push_back({std::vector<Rational>(n, Rational(1)), Rel::eq, Rational(1)});
    auto r = solve_lp(std::vector<Rational>(n, Rational(0)), cons, std::vector<VarSign>(n, VarSign::nonneg));
    return r.status == LpStatus::optimal;
}

bool Body::subset_of(const Body& other) const {
    for (const auto& v : vertices_)
        if (!other.contains(v)) return false;
    return true;
}

SpaceNorm SpaceNorm::from_functionals(std::size_t dim, std::vector<Vec> functionals) {
    if (functionals.empty()) throw std::invalid_argument("a norm needs at least one functional");
    for (const auto& f : functionals)
        if (f.size() != dim) throw std::invalid_argument("functional dimension mismatch");
    // spanning check by rational Gaussian elimination, so the ball is bounded
    std::vector<Vec> rows = functionals;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rational f = rows[i][col] / rows[rank][col];
            for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    if (rank < dim) throw std::invalid_argument("functionals do not span the dual: ball unbounded");
    SpaceNorm n;
    n.dim_ = dim;
    n.fs_ = std::move(functionals);
    return n;
}

SpaceNorm SpaceNorm::box(std::size_t dim) {
    std::vector<Vec> fs;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, Rational(0));
        e[i] = 1;
        fs.push_back(std::move(e));
    }
    return from_functionals(dim, std::move(fs));
}

Rational SpaceNorm::norm(const Vec& x) const {
    Rational best = 0;
    for (const auto& f : fs_) best = std::max(best, rat_abs(dot(f, x)));
    return best;
}

bool SpaceNorm::in_ball(const Vec& x) const { return norm(x) <= 1; }

Body SpaceNorm::dual_ball() const { return Body::from_vertices(dim_, fs_); }

Rational SpaceNorm::dual_norm(const Vec& g) const {
    // min sum (c+ + c-) subject to sum (c+ - c-) f = g
    std::size_t n = fs_.size();
    std::vector<Rational> obj(2 * n, Rational(-1)); // maximize the negation
    std::vector<LpConstraint> cons;
    for (std::size_t d = 0; d < dim_; ++d) {
        LpConstraint c;
        c.coeffs.resize(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            c.coeffs[2 * i] = fs_[i][d];
            c.coeffs[2 * i + 1] = -fs_[i][d];
        }
        c.rel = Rel::eq;
        c.rhs = g[d];
        cons.push_back(std::move(c));
    }
    auto r = solve_lp(obj, cons, std::vector<VarSign>(2 * n, VarSign::nonneg));
    if (r.status != LpStatus::optimal) throw std::logic_error("dual norm LP infeasible despite spanning F");
    return -r.objective;
}

Rational hull_distance(const Body& k, const std::vector<Vec>& s1, const std::vector<Vec>& s2) {
    if (s1.empty() || s2.empty()) throw std::invalid_argument("hull_distance needs nonempty inputs");
    // vars: lambda (|s1|), mu (|s2|), d free; minimize d with
    //   <v, sum lambda s1 - sum mu s2> <= d  for all vertices v of K
    std::size_t n1 = s1.size(), n2 = s2.size();
    std::size_t nv = n1 + n2 + 1;
    std::vector<Rational> obj(nv, Rational(0));
    obj[nv - 1] = -1; // maximize -d
    std::vector<LpConstraint> cons;
    for (const auto& v : k.vertices()) {
        LpConstraint c;
        c.coeffs.assign(nv, Rational(0));
        for (std::size_t i = 0; i < n1; ++i) c.coeffs[i] = dot(v, s1[i]);
        for (std::size_t j = 0; j < n2; ++j) c.coeffs[n1 + j] = -dot(v, s2[j]);
        c.coeffs[nv - 1] = -1;
        c.rel = Rel::le;
        c.rhs = 0;
        cons.push_back(std::move(c));
    }
    {
        LpConstraint c;
        c.coeffs.assign(nv, Rational(0));
        for (std::size_t i = 0; i < n1; ++i) c.coeffs[i] = 1;
        c.rel = Rel::eq;
        c.rhs = 1;
        cons.push_back(std::move(c));
    }
    {
        LpConstraint c;
        c.coeffs.assign(nv, Rational(0));
        for (std::size_t j = 0; j < n2; ++j) c.coeffs[n1 + j] = 1;
        c.rel = Rel::eq;
        c.rhs = 1;
        cons.push_back(std::move(c));
    }
    std::vector<VarSign> signs(nv, VarSign::nonneg);
    signs[nv - 1] = VarSign::free_var;
    auto r = solve_lp(obj, cons, signs);
    if (r.status != LpStatus::optimal) throw std::logic_error("hull distance LP must be solvable");
    return -r.objective;
}

SplitMargin best_split_margin(const Body& k, const std::vector<Vec>& s1, const std::vector<Vec>& s2) {
    if (s1.empty() || s2.empty()) throw std::invalid_argument("margin needs nonempty inputs");
    // vars: w over K's vertices (convex weights), m free; maximize m with
    //   sum_w w <v, s1_i - s2_j> >= m for all pairs (i, j)
    std::size_t n = k.vertices().size();
    std::vector<Rational> obj(n + 1, Rational(0));
    obj[n] = 1;
    std::vector<LpConstraint> cons;
    for (const auto& a : s1) {
        for (const auto& b : s2) {
            Vec diff = vec_sub(a, b);
            LpConstraint c;
            c.coeffs.assign(n + 1, Rational(0));
            for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = dot(k.vertices()[i], diff);
            c.coeffs[n] = -1;
            c.rel = Rel::ge;
            c.rhs = 0;
            cons.push_back(std::move(c));
        }
    }
    cons.push_back({[&] {
                        std::vector<Rational> v(n + 1, Rational(1));
                        v[n] = 0;
                        return v;
                    }(),
                    Rel::eq, Rational(1)});
    std::vector<VarSign> signs(n + 1, VarSign::nonneg);
    signs[n] = VarSign::free_var;
    auto r = solve_lp(obj, cons, signs);
    if (r.status != LpStatus::optimal) throw std::logic_error("margin LP must be solvable");
    SplitMargin out;
    out.margin = r.objective;
    out.weights.assign(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(n));
    out.functional.assign(k.dim(), Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        out.functional = vec_add(out.functional, vec_scale(out.weights[i], k.vertices()[i]));
    return out;
}

Rational operator_norm(const Matrix& a, const SpaceNorm& domain_norm, const Body& codomain_dual_ball) {
    // ||A|| = max over vertices v of B_{Y*} of ||A^T v||_{X*}
    Rational best = 0;
    for (const auto& v : codomain_dual_ball.vertices())
        best = std::max(best, domain_norm.dual_norm(a.apply_transpose(v)));
    return best;
}

} // namespace ordsep
