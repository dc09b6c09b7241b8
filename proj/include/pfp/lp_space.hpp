#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "pfp/algebra.hpp"

namespace pfp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponent p in [1, inf] paired with its conjugate q, 1/p + 1/q = 1.
class PExponent {
public:
    static PExponent of(double p);

    double p() const { return p_; }
    double q() const { return q_; }
    /// Swaps p and q; conjugate().conjugate() reproduces *this bit for bit.
    PExponent conjugate() const { return PExponent(q_, p_); }
    bool is_anchor() const { return p_ == 1.0 || p_ == 2.0 || p_ == kInfinity; }

private:
    PExponent(double p, double q) : p_(p), q_(q) {}
    double p_;
    double q_;
};

// Vectors in l^p(points; C^fiber) are stored point-major: entry (h, i) at h * fiber + i.
// The norm is (sum_h |v(h)|_2^p)^(1/p), the l^p norm of the fiberwise Hilbert norms.

double lp_norm(std::span<const Complex> v, std::size_t fiber, double p);

/// out(h) = (|v(h)| / max_h |v(h)|)^(p-1) * v(h) / |v(h)|: the duality map up to a
/// positive scale, which keeps large exponents finite.
void duality_map(std::span<const Complex> v, std::size_t fiber, double p, std::span<Complex> out);

/// Rescales v so that lp_norm(v) == 1; returns the previous norm.
double normalize(std::span<Complex> v, std::size_t fiber, double p);

} // namespace pfp
