#pragma once

#include "xsuperint/rational.hpp"
#include "xsuperint/ratfunc.hpp"

#include <vector>

namespace xsuperint {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// Basis of {u : M u = 0}, exact. Each basis vector has a 1 in its pivot-free
/// column, so the basis is canonical for a given matrix.
std::vector<RationalVector> nullspace(RationalMatrix rows, std::size_t ncols);

/// Unique solution of the square system M u = rhs; throws NoSolutionError
/// or NonUniqueSolutionError.
RationalVector solve(RationalMatrix m, RationalVector rhs);

/// Collects the linear equations on u that make sum_i u_i * columns[i] the
/// zero rational function, and appends them to `rows`.
void append_identity_equations(const std::vector<RatFunc>& columns, RationalMatrix& rows);

/// Nullspace of the coefficient map u -> sum_i u_i * columns[i].
std::vector<RationalVector> linear_relations(const std::vector<RatFunc>& columns);

}  // namespace xsuperint
