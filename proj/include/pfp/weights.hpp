#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pfp/boundary.hpp"
#include "pfp/measure.hpp"

namespace pfp {

enum class WeightKind { constant, phi_beta, omega_alpha, xi_power };

/// Positive function on a group: 1, beta^L, (1 + L)^alpha, or Xi^t.
class WeightFunction {
public:
    static WeightFunction constant();
    static WeightFunction phi(double beta);
    static WeightFunction omega(double alpha);
    /// Xi(s)^exponent for the boundary measure nu (free groups only).
    static WeightFunction xi_power(BoundaryMeasure nu, double exponent);

    WeightKind kind() const { return kind_; }
    double parameter() const { return parameter_; }
    std::string name() const;
    /// Depends on the word length only.
    bool radial() const { return kind_ != WeightKind::xi_power; }

    double value(const GroupSpec& spec, const GroupElement& g) const;
    /// Value at any element of length n (radial kinds only).
    double radial_value(int n) const;

private:
    WeightKind kind_ = WeightKind::constant;
    double parameter_ = 0.0;
    std::shared_ptr<const BoundaryMeasure> boundary_;
};

struct MembershipReport {
    std::string weight;
    double p = 2.0;
    int k = 2;
    bool convergent = false;
    double ratio = 0.0;                   // limiting sphere-term ratio (2k - 1) w_{n+1}^p / w_n^p
    std::optional<double> threshold;      // beta threshold (2k - 1)^(-1/p) for phi
    std::optional<double> closed_form;    // sum over the group when convergent
    std::vector<double> partial_sums;     // sum over ball(n), n = 0, 1, ...
};

/// Partial sums of w^p over balls of free(k) via sphere sizes; convergence verdict
/// for the radial kinds.
MembershipReport weight_membership(const WeightFunction& w, double p, int k);

struct GramReport {
    int radius = 0;
    std::size_t size = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool psd = false;                     // min eigenvalue >= -1e-8
};

/// Gram matrix [w(s^-1 t)] over ball(R).
GramReport psd_gram_check(const GroupSpec& spec, const WeightFunction& w, int radius);

/// sum m log(m / eta) over a common finite support, evaluated termwise as
/// m (r - 1 - log r) + (eta where m = 0), r = eta / m, each term nonnegative.
/// Both inputs must be probability vectors on the same index set.
double relative_entropy(const std::vector<double>& m, const std::vector<double>& eta);

struct GibbsReport {
    int n = 0;
    std::string weight;
    std::size_t support = 0;               // |ball(r n)|, the normalization set
    double entropy = 0.0;                  // H_n
    double divergence = 0.0;               // D(mu^{*n} || eta) >= 0
    double log_normalizer = 0.0;           // log sum_S w^-1
    double mean_log_weight = 0.0;          // sum mu^{*n} log w
    double bound = 0.0;                    // (mean_log_weight + log_normalizer) / n
    double entropy_rate = 0.0;             // H_n / n
    double tightness = 0.0;                // bound / entropy_rate
    bool nonnegative = false;
};

/// eta = w^-1 / Z on ball(r n), r the support radius of mu.
GibbsReport gibbs_bound_check(const Measure& mu, int n, const WeightFunction& w);

struct CriteriaReport {
    int k = 2;
    double h = 0.0;
    double speed = 0.0;
    double hx = 0.0;
    double p = 2.0;
    bool ii = false;                       // h_X < (2/p) h
    bool iii = false;                      // h_X < h - (2 log(2k-1) / p) speed
    std::optional<double> ii_threshold;    // (ii) iff p < this; empty means every p
    std::optional<double> iii_threshold;   // (iii) iff p > this; empty means never
    double ii_endpoint_residual = 0.0;
    double iii_endpoint_residual = 0.0;
    double p0 = 2.0;                       // inf { p >= 2 : h - (2 log(2k-1)/p) speed > 0 }
    bool p0_attained = false;
    std::optional<double> both_lower;      // both criteria hold on (both_lower, both_upper)
    std::optional<double> both_upper;      // empty upper means unbounded
    bool both_nonempty = false;
    double crossing_hx = 0.0;              // h_X at which the two thresholds coincide
    double crossing_p = 0.0;
};

CriteriaReport criteria_report(int k, double h, double speed, double hx, double p);

} // namespace pfp
