#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfp/lp_space.hpp"
#include "pfp/truncated_operator.hpp"

namespace pfp {

/// Largest singular value of T restricted to the first `domain` points.
struct SpectralResult {
    double sigma = 0.0;          // Lanczos Ritz value
    double rayleigh = 0.0;       // ||T y||_2 / ||y||_2 for the Ritz vector y (certified lower bound)
    double upper = 0.0;          // Collatz-Wielandt bound on || |T| ||_2 (certified upper bound)
    int iterations = 0;
    bool converged = false;
    std::vector<Complex> vector;  // Ritz vector, unit l^2 norm
};

SpectralResult largest_singular_value(const TruncatedOperator& op, std::size_t domain, double tol = 1e-10,
                                      int max_iter = 1000, std::uint64_t seed = 0);

/// Norms of the truncation at p = 1, 2, inf.
///
/// `one`/`inf` are block column/row sums of coefficient spectral norms: exact
/// for scalar coefficients, upper bounds for d > 1 (`exact_one_inf`).
/// `two` is the Lanczos value; `two_upper` its certified upper bound.
struct AnchorNorms {
    double one = 0.0;
    double two = 0.0;
    double two_upper = 0.0;
    double inf = 0.0;
    bool exact_one_inf = true;
    int lanczos_iterations = 0;
    bool lanczos_converged = false;
};

AnchorNorms compute_anchors(const TruncatedOperator& op, double tol = 1e-10);

/// Exact norm of the truncation at an anchor exponent (p in {1, 2, inf}).
double pnorm_anchor(const TruncatedOperator& op, PExponent p, double tol = 1e-10);

/// N_p0^(1 - theta) N_p1^theta with 1/p = (1 - theta)/p0 + theta/p1, for p0 <= p <= p1.
double interpolation_bound(double n_p0, double n_p1, double p0, double p1, double p);

/// Best certified upper bound on the truncation at exponent p from l1 and the anchors.
double anchor_upper_bound(const AnchorNorms& anchors, double l1, double p);

struct NormEstimate {
    double p = 2.0;
    double q = 2.0;
    double lower = 0.0;
    double upper = 0.0;
    int radius = 0;
    std::vector<std::string> methods;
    std::uint64_t witness_seed = 0;
    int witness_restart = -1;
    int iterations = 0;
    bool converged = false;
    /// Best witness (unit l^p norm, supported in ball(R - r)).
    std::vector<Complex> witness;
};

struct BoydOptions {
    int restarts = 8;
    double tol = 1e-8;
    int max_iter = 500;
    std::uint64_t seed = 42;
    /// Extra starting vectors tried before the standard restarts.
    std::vector<std::vector<Complex>> warm_starts;
};

/// Nonlinear power method for ||T||_{p->p} with witnesses confined to ball(R - r).
///
/// The lower bound is the best Rayleigh quotient over restarts, recomputed from
/// the stored witness; the upper bound comes only from l1 and the anchors.
/// At p = 2 the witness search is a Lanczos solve on the restricted operator.
NormEstimate pnorm_boyd(const TruncatedOperator& op, PExponent p, const BoydOptions& options,
                        const AnchorNorms* anchors = nullptr);

/// Estimate of max(||T||_p, ||T||_q) for the covariant operator of f on ball(R).
NormEstimate pf_norm(const AlgebraElement& f, PExponent p, int radius, int amplification,
                     const BoydOptions& options);

/// Lower-bound curve in R; each radius is warm-started from the previous witness,
/// so the curve is nondecreasing.
std::vector<NormEstimate> radius_scan(const AlgebraElement& f, PExponent p, const std::vector<int>& radii,
                                      int amplification, const BoydOptions& options);

} // namespace pfp
