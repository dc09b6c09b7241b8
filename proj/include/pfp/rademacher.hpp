#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfp/lp_space.hpp"

namespace pfp {

/// Vectors x_1..x_n in l^p(points; C^fiber), the same geometry as the norm engine.
struct VectorFamily {
    std::string name;
    std::vector<std::vector<Complex>> vectors;
    std::size_t fiber = 1;
    double space_p = 2.0;

    std::size_t size() const { return vectors.size(); }
    /// || sum_k signs[k] x_k ||.
    double signed_norm(std::span<const int> signs) const;
};

/// First n standard basis vectors of l^p over `dim` points (n <= dim).
VectorFamily basis_family(std::size_t dim, std::size_t n, double space_p);
/// n vectors with seeded standard normal real entries.
VectorFamily gaussian_family(std::size_t dim, std::size_t n, double space_p, std::uint64_t seed);

struct RademacherSample {
    std::size_t trials = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> norms;  // per-trial || sum eps_k x_k ||
};

/// Trials are drawn in chunks of `kChunk`, chunk c from Rng::derived(seed, c).
inline constexpr std::size_t kChunk = 4096;

RademacherSample sample_rademacher(const VectorFamily& family, std::size_t trials, std::uint64_t seed);

/// (mean X^q)^(1/q) / (mean X^p)^(1/p) over the sample; exactly 1 when p == q.
double moment_ratio(std::span<const double> norms, double p, double q);
double moment_ratio(const RademacherSample& sample, double p, double q);

/// Delta-method standard error of the empirical ratio.
double moment_ratio_standard_error(std::span<const double> norms, double p, double q);

/// Ratio over all 2^n sign patterns (n <= 20).
double exact_moment_ratio(const VectorFamily& family, double p, double q);

inline constexpr std::size_t kExhaustiveLimit = 12;

struct FamilyRatios {
    std::string name;
    std::size_t n = 0;
    double k_p2 = 1.0;          // (E X^2)^(1/2) / (E X^p)^(1/p)
    double k_2p = 1.0;          // (E X^p)^(1/p) / (E X^2)^(1/2)
    double k_p2_se = 0.0;
    double k_2p_se = 0.0;
    bool has_exact = false;
    double k_p2_exact = 1.0;
    double k_2p_exact = 1.0;
    bool direction_ok = false;  // power-mean direction on the sample
};

struct KahaneReport {
    double p = 2.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<FamilyRatios> families;
    double max_k_p2 = 1.0;
    double max_k_2p = 1.0;
    double product = 1.0;        // empirical lower estimate of C_p
    bool direction_ok = false;
};

/// Family i is sampled from Rng::derived(seed, i).
KahaneReport kahane_constant_scan(const std::vector<VectorFamily>& families, double p, std::size_t trials,
                                  std::uint64_t seed);

} // namespace pfp
