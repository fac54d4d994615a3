#ifndef ORDSEP_LP_HPP
#define ORDSEP_LP_HPP

#include "ordsep/rational.hpp"

#include <vector>

namespace ordsep {

/**
 * Exact-arithmetic linear programming over the rationals.
 *
 * Two-phase dense tableau simplex with Bland's rule, which guarantees
 * termination; all pivots are exact, so feasibility and optimality are
 * decided exactly.  Small and dense on purpose: every instance in this
 * project has a handful of variables and constraints.
 */

enum class Rel { le, ge, eq };
enum class VarSign { nonneg, free_var };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpConstraint {
    std::vector<Rational> coeffs;
    Rel rel;
    Rational rhs;
};

struct LpResult {
    LpStatus status;
    Rational objective;            // meaningful when optimal
    std::vector<Rational> solution; // one value per original variable
};

/// Maximizes objective . x subject to the constraints and sign restrictions.
LpResult solve_lp(const std::vector<Rational>& objective, const std::vector<LpConstraint>& constraints,
                  const std::vector<VarSign>& signs);

} // namespace ordsep

#endif
