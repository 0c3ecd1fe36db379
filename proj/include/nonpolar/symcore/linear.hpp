#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nonpolar/symcore/expr.hpp"

namespace nonpolar::symcore {

/// Splits `e` by every atom outside `unknowns`; each coefficient must be
/// affine in the unknowns. The identity e == 0 for all values of the other
/// atoms is equivalent to all returned conditions vanishing.
std::vector<Expr> linear_conditions(const Expr& e, const std::vector<Atom>& unknowns);

/// Exact Gauss-Jordan elimination over the rationals. Returns nullopt when
/// the system is inconsistent; otherwise the reduced solution: each pivot
/// unknown mapped to an affine expression in the free unknowns (free
/// unknowns do not appear as keys). Throws UnsupportedFormError for a
/// nonlinear or non-rational condition.
std::optional<std::map<Atom, Expr>> solve_linear(const std::vector<Expr>& conditions,
                                                 const std::vector<Atom>& unknowns);

}  // namespace nonpolar::symcore
