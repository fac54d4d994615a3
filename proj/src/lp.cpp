#include "ordsep/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace ordsep {

namespace {

struct Tableau {
    // rows x (cols + 1); the last column is the rhs
    std::vector<std::vector<Rational>> a;
    std::vector<std::size_t> basis; // basic variable per row
    std::size_t cols = 0;

    Rational& rhs(std::size_t i) { return a[i][cols]; }

    void pivot(std::size_t row, std::size_t col) {
        Rational p = a[row][col];
        for (auto& v : a[row]) v /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row) continue;
            Rational f = a[i][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[row][j];
        }
        basis[row] = col;
    }
};

// Maximization with Bland's rule (smallest eligible column enters, smallest
// basic index leaves on ties), which forbids cycling.  Reduced costs are
// recomputed from scratch each round: the tableaus here are tiny and the
// recomputation costs no more than the pivot itself.
bool run_simplex(Tableau& t, const std::vector<Rational>& costs, Rational& zval, bool& unbounded) {
    for (;;) {
        std::vector<Rational> zrow(costs);
        zval = 0;
        for (std::size_t i = 0; i < t.a.size(); ++i) {
            const Rational& cb = costs[t.basis[i]];
            if (cb == 0) continue;
            zval += cb * t.rhs(i);
            for (std::size_t j = 0; j < t.cols; ++j)
                if (t.a[i][j] != 0) zrow[j] -= cb * t.a[i][j];
        }
        std::size_t enter = t.cols;
        for (std::size_t j = 0; j < t.cols; ++j) {
            if (zrow[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == t.cols) return true;
        std::size_t leave = t.a.size();
        Rational best;
        for (std::size_t i = 0; i < t.a.size(); ++i) {
            if (t.a[i][enter] <= 0) continue;
            Rational ratio = t.rhs(i) / t.a[i][enter];
            if (leave == t.a.size() || ratio < best || (ratio == best && t.basis[i] < t.basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == t.a.size()) {
            unbounded = true;
            return false;
        }
        t.pivot(leave, enter);
    }
}

} // namespace

LpResult solve_lp(const std::vector<Rational>& objective, const std::vector<LpConstraint>& constraints,
                  const std::vector<VarSign>& signs) {
    const std::size_t nvars = objective.size();
    if (signs.size() != nvars) throw std::invalid_argument("objective/sign size mismatch");
    for (const auto& c : constraints)
        if (c.coeffs.size() != nvars) throw std::invalid_argument("constraint size mismatch");

    // standard-form columns: free variables split into (+, -) parts
    std::vector<std::size_t> pos_col(nvars), neg_col(nvars, SIZE_MAX);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
        pos_col[v] = ncols++;
        if (signs[v] == VarSign::free_var) neg_col[v] = ncols++;
    }
    const std::size_t nrows = constraints.size();
    std::vector<std::size_t> slack_col(nrows, SIZE_MAX);
    for (std::size_t i = 0; i < nrows; ++i)
        if (constraints[i].rel != Rel::eq) slack_col[i] = ncols++;

    Tableau t;
    t.cols = ncols;
    t.a.assign(nrows, std::vector<Rational>(ncols + 1, Rational(0)));
    t.basis.assign(nrows, SIZE_MAX);
    for (std::size_t i = 0; i < nrows; ++i) {
        const auto& c = constraints[i];
        for (std::size_t v = 0; v < nvars; ++v) {
            t.a[i][pos_col[v]] = c.coeffs[v];
            if (neg_col[v] != SIZE_MAX) t.a[i][neg_col[v]] = -c.coeffs[v];
        }
        if (c.rel == Rel::le) t.a[i][slack_col[i]] = 1;
        if (c.rel == Rel::ge) t.a[i][slack_col[i]] = -1;
        t.a[i][ncols] = c.rhs;
        if (t.a[i][ncols] < 0)
            for (auto& v : t.a[i]) v = -v;
        if (slack_col[i] != SIZE_MAX && t.a[i][slack_col[i]] == 1) t.basis[i] = slack_col[i];
    }

    // artificial columns for rows that lack a ready basic variable
    std::vector<std::size_t> artificial;
    for (std::size_t i = 0; i < nrows; ++i) {
        if (t.basis[i] != SIZE_MAX) continue;
        for (auto& row : t.a) row.insert(row.end() - 1, Rational(0));
        t.a[i][t.cols] = 1;
        t.basis[i] = t.cols;
        artificial.push_back(t.cols);
        ++t.cols;
    }
    auto is_artificial = [&](std::size_t col) {
        return std::find(artificial.begin(), artificial.end(), col) != artificial.end();
    };

    Rational zval = 0;
    bool unbounded = false;

    if (!artificial.empty()) {
        std::vector<Rational> phase1(t.cols, Rational(0));
        for (auto j : artificial) phase1[j] = -1; // maximize -(sum of artificials)
        run_simplex(t, phase1, zval, unbounded);
        if (zval != 0) return {LpStatus::infeasible, Rational(0), {}};
        // pivot leftover (degenerate) artificials out; drop redundant rows
        for (std::size_t i = 0; i < t.a.size();) {
            if (!is_artificial(t.basis[i])) {
                ++i;
                continue;
            }
            std::size_t col = t.cols;
            for (std::size_t j = 0; j < t.cols; ++j) {
                if (!is_artificial(j) && t.a[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == t.cols) {
                t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                t.pivot(i, col);
                ++i;
            }
        }
        // artificials never re-enter: zero their columns and give them cost 0
        for (auto j : artificial)
            for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i][j] = 0;
    }

    std::vector<Rational> costs(t.cols, Rational(0));
    for (std::size_t v = 0; v < nvars; ++v) {
        costs[pos_col[v]] = objective[v];
        if (neg_col[v] != SIZE_MAX) costs[neg_col[v]] = -objective[v];
    }
    unbounded = false;
    if (!run_simplex(t, costs, zval, unbounded)) return {LpStatus::unbounded, Rational(0), {}};

    std::vector<Rational> x(t.cols, Rational(0));
    for (std::size_t i = 0; i < t.a.size(); ++i) x[t.basis[i]] = t.rhs(i);
    std::vector<Rational> sol(nvars);
    for (std::size_t v = 0; v < nvars; ++v) {
        sol[v] = x[pos_col[v]];
        if (neg_col[v] != SIZE_MAX) sol[v] -= x[neg_col[v]];
    }
    return {LpStatus::optimal, zval, std::move(sol)};
}

} // namespace ordsep
