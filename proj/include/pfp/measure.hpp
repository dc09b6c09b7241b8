#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pfp/group.hpp"

namespace pfp {

/// Finitely supported probability measure on a group.
class Measure {
public:
    using Masses = std::map<GroupElement, double, ElementLess>;

    /// Validates positivity, membership and total mass 1 (within 1e-12).
    Measure(GroupSpec spec, Masses masses);

    /// Uniform on generators and inverses.
    static Measure srw(const GroupSpec& spec);
    /// Mass q at the identity, the rest spread as srw.
    static Measure lazy(const GroupSpec& spec, double q);
    static Measure dirac(const GroupSpec& spec, const GroupElement& g);
    /// `srw` or `lazy:<q>`.
    static Measure alias(const GroupSpec& spec, std::string_view name);

    const GroupSpec& spec() const { return spec_; }
    const Masses& masses() const { return masses_; }
    double mass(const GroupElement& g) const;
    int support_radius() const;

    /// Support inside generators, inverses and the identity (free groups).
    bool is_nearest_neighbor() const;
    /// Nearest neighbor with equal mass on all 2k letters; `identity_mass` receives mu(e).
    bool is_radial(double* identity_mass = nullptr) const;
    /// On free groups: every one of the 2k letters occurs in some support word,
    /// which the semigroup generated by the support needs. Point masses never pass.
    bool touches_every_direction() const;

private:
    GroupSpec spec_;
    Masses masses_;
};

/// {"terms":[{"word":"a","mass":0.25}, ...]}
Measure measure_from_json(const GroupSpec& spec, const nlohmann::json& j);
nlohmann::json measure_to_json(const Measure& mu);

/// (mu * nu)(t) = sum_s mu(s) nu(s^-1 t).
Measure convolve_measure(const Measure& mu, const Measure& nu);

/// -sum m log m with the 0 log 0 = 0 convention.
double shannon_entropy(const Measure::Masses& masses);

/// Throws PreconditionError unless mu can drive a nondegenerate walk.
void require_nondegenerate(const Measure& mu);

/// Exact distributions of mu^{*n}.
struct PowerSequence {
    std::vector<int> n;                 // 1..n_exact
    std::vector<double> entropy;        // H(mu^{*n})
    std::vector<double> mean_length;    // sum mu^{*n}(s) L(s)
    std::vector<std::size_t> support;   // |supp mu^{*n}|
    std::size_t memory_bytes = 0;
};

/// Computes powers 1..n_max while the support stays within `cap` elements.
PowerSequence exact_powers(const Measure& mu, int n_max, std::size_t cap = element_cap());

/// mu^{*n} itself.
Measure::Masses power_distribution(const Measure& mu, int n, std::size_t cap = element_cap());

/// Aitken delta-squared on the last three terms (last term when degenerate).
double aitken(const std::vector<double>& s);

struct EntropyCurve {
    std::vector<int> n;
    std::vector<double> entropy;          // H_n
    std::vector<double> entropy_rate;     // H_n / n
    std::vector<bool> exact;
    int n_exact = 0;
    double h_fit = 0.0;                   // asymptotic fit H_n = n h + a log n + b + c/n
    double h_aitken_rate = 0.0;           // Aitken on H_n / n
    double h_aitken_increment = 0.0;      // Aitken on H_n - H_{n-1}
    double h_estimate = 0.0;
    std::string extrapolation;
    double fekete_upper = 0.0;            // min exact H_n / n
    double monotonicity_defect = 0.0;     // max (H_{n+1}/(n+1) - H_n/n)^+
    double subadditivity_defect = 0.0;    // max (H_{n+m} - H_n - H_m)^+
    bool monotone = true;
    bool subadditive = true;
    bool monte_carlo = false;
    std::uint64_t mc_samples = 0;
    std::vector<std::string> warnings;
    std::size_t memory_bytes = 0;
};

/// Exact powers up to n_max (or the cap), then Monte Carlo for the remaining n if
/// mc_samples > 0. Monte Carlo values are plug-in estimates (biased low) and never
/// enter the extrapolation or the invariants.
EntropyCurve avez_entropy(const Measure& mu, int n_max, std::uint64_t mc_samples, std::uint64_t seed,
                          std::size_t cap = element_cap());

struct SpeedReport {
    std::string method;                 // "birth-death" or "exact-powers"
    std::vector<double> mean_length;    // E L_n for n = 1..n_max
    double raw = 0.0;                   // E L_n / n at the last n
    double increment = 0.0;             // E L_n - E L_{n-1}
    double aitken = 0.0;                // Aitken on E L_n / n
    double speed = 0.0;                 // reported estimate (the increment)
    int n = 0;
};

/// Radial walks on free(k) use the word-length birth-death chain, others exact powers.
SpeedReport speed(const Measure& mu, int n_max, std::size_t cap = element_cap());

} // namespace pfp
