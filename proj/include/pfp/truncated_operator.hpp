#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pfp/algebra.hpp"
#include "pfp/group.hpp"

namespace pfp {

/// Compression of the covariant convolution operator of f to l^p(ball(R); C^d (x) C^m):
///
///     (T xi)(h) = sum_g (alpha_{h^-1}(f(g)) (x) I_m) xi(g^-1 h),
///
/// with every term whose source g^-1 h leaves the ball dropped. Input vectors
/// restricted to ball(R - r), r the support radius of f, never lose a term, so
/// Rayleigh quotients taken there are exact for the untruncated operator.
///
/// Application is matrix free: each support element stores a source table
/// h -> index(g^-1 h), and a non-trivial action stores U_{h^-1} per point.
class TruncatedOperator {
public:
    TruncatedOperator(const AlgebraElement& f, int amplification, int radius, std::size_t cap = element_cap());

    const BallIndex& ball() const { return ball_; }
    int radius() const { return ball_.radius(); }
    int support_radius() const { return support_radius_; }
    int coefficient_dim() const { return dim_; }
    int amplification() const { return amplification_; }
    std::size_t fiber() const { return fiber_; }
    std::size_t points() const { return ball_.size(); }
    std::size_t vector_size() const { return ball_.size() * fiber_; }
    bool is_zero() const { return terms_.empty(); }

    /// Number of points of ball(R - r).
    std::size_t exact_domain() const { return ball_.ball_end(radius() - support_radius_); }

    /// sum_g ||f(g)||.
    double l1_norm() const { return l1_norm_; }

    /// out = T P in, where P keeps the first `domain` points of `in`.
    void apply(std::span<const Complex> in, std::span<Complex> out, std::size_t domain) const;
    /// out = P T^* in; points of `out` beyond `domain` are zeroed.
    void apply_adjoint(std::span<const Complex> in, std::span<Complex> out, std::size_t domain) const;

    /// Entrywise absolute value |T| and its transpose on nonnegative vectors.
    void apply_abs(std::span<const double> in, std::span<double> out, std::size_t domain) const;
    void apply_abs_transpose(std::span<const double> in, std::span<double> out, std::size_t domain) const;

    /// Block column sums max_k sum_h ||B_hk|| and row sums max_h sum_k ||B_hk||.
    double max_column_sum() const;
    double max_row_sum() const;

    std::size_t memory_bytes() const;

private:
    struct Term {
        std::vector<Complex> coefficient;  // d x d row-major
        std::vector<Complex> adjoint;      // d x d row-major
        std::vector<double> magnitude;     // |coefficient| entrywise
        double norm = 0.0;
        std::vector<std::int32_t> source;  // -1 when g^-1 h leaves the ball
    };

    template <bool Adjoint>
    void apply_block(const Term& term, std::size_t h, const Complex* x, Complex* y) const;

    BallIndex ball_;
    int dim_;
    int amplification_;
    std::size_t fiber_;
    int support_radius_;
    double l1_norm_ = 0.0;
    std::vector<Term> terms_;
    // U_{h^-1} for each point h, `dim_` entries each; empty for the trivial action.
    std::vector<std::int32_t> unitary_perm_;
    std::vector<std::int8_t> unitary_sign_;
};

/// Embeds a vector on ball points with fiber C^d (x) C^m_from into C^d (x) C^m_to
/// as xi (x) e_1 (requires m_to >= m_from).
std::vector<Complex> embed_amplified(std::span<const Complex> v, std::size_t points, int dim, int m_from, int m_to);

} // namespace pfp
