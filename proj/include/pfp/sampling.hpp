#pragma once

#include "pfp/algebra.hpp"
#include "pfp/rng.hpp"

namespace pfp {

// Seeded random inputs for the invariant suites and tests.

/// Uniform element of ball(R).
GroupElement random_element(const GroupSpec& spec, int radius, Rng& rng);

/// Up to `terms` atoms in ball(R) with complex normal coefficients.
AlgebraElement random_scalar_element(const GroupSpec& spec, int radius, int terms, Rng& rng);

/// Same with d x d complex normal matrix coefficients and the given action.
AlgebraElement random_matrix_element(const GroupSpec& spec, const ActionSpec& action, int radius, int terms,
                                     Rng& rng);

} // namespace pfp
