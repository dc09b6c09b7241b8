#include "pfp/truncated_operator.hpp"

#include <algorithm>
#include <limits>

#include "pfp/errors.hpp"

namespace pfp {

TruncatedOperator::TruncatedOperator(const AlgebraElement& f, int amplification, int radius, std::size_t cap)
    : ball_(f.spec(), radius, cap),
      dim_(f.dim()),
      amplification_(amplification),
      fiber_(static_cast<std::size_t>(f.dim()) * static_cast<std::size_t>(std::max(amplification, 1))),
      support_radius_(f.support_radius())
{
    require(amplification >= 1, "amplification must be >= 1");
    require(radius >= support_radius_, "radius " + std::to_string(radius) + " is smaller than the support radius " +
                                            std::to_string(support_radius_) + " of f");
    if (ball_.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
        throw ResourceError("ball too large for 32-bit source tables", ball_.size());

    const auto& spec = f.spec();
    const std::size_t n = ball_.size();
    const auto d = static_cast<std::size_t>(dim_);
    for (const auto& [g, c] : f.terms()) {
        Term t;
        t.coefficient.resize(d * d);
        t.adjoint.resize(d * d);
        t.magnitude.resize(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const auto ii = static_cast<Eigen::Index>(i);
                const auto jj = static_cast<Eigen::Index>(j);
                t.coefficient[i * d + j] = c(ii, jj);
                t.adjoint[i * d + j] = std::conj(c(jj, ii));
                t.magnitude[i * d + j] = std::abs(c(ii, jj));
            }
        t.norm = spectral_norm(c);
        l1_norm_ += t.norm;
        t.source.resize(n);
        const auto g_inv = invert(spec, g);
        if (ball_.is_free()) {
            for (std::size_t h = 0; h < n; ++h)
                t.source[h] = static_cast<std::int32_t>(ball_.find_product(g_inv.word, ball_.word(h)));
        } else {
            for (std::size_t h = 0; h < n; ++h) {
                const auto k = ball_.find(compose(spec, g_inv, ball_.element(h)));
                t.source[h] = k ? static_cast<std::int32_t>(*k) : -1;
            }
        }
        terms_.push_back(std::move(t));
    }

    if (!f.action().is_trivial()) {
        unitary_perm_.resize(n * d);
        unitary_sign_.resize(n * d);
        for (std::size_t h = 0; h < n; ++h) {
            const auto u = f.action().unitary(spec, invert(spec, ball_.element(h)));
            for (std::size_t i = 0; i < d; ++i) {
                unitary_perm_[h * d + i] = u.perm[i];
                unitary_sign_[h * d + i] = static_cast<std::int8_t>(u.sign[i]);
            }
        }
    }
}

template <bool Adjoint>
void TruncatedOperator::apply_block(const Term& term, std::size_t h, const Complex* x, Complex* y) const
{
    const auto d = static_cast<std::size_t>(dim_);
    const auto m = static_cast<std::size_t>(amplification_);
    const auto& coef = Adjoint ? term.adjoint : term.coefficient;
    if (d == 1) {
        const Complex c = coef[0];
        for (std::size_t j = 0; j < m; ++j)
            y[j] += c * x[j];
        return;
    }
    // B = U M U^T (x) I_m with U = U_{h^-1}; for the adjoint M is replaced by M^*.
    const std::int32_t* perm = unitary_perm_.empty() ? nullptr : unitary_perm_.data() + h * d;
    const std::int8_t* sign = unitary_sign_.empty() ? nullptr : unitary_sign_.data() + h * d;
    Complex w[64];
    Complex z[64];
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < d; ++i)
            w[i] = perm ? static_cast<double>(sign[i]) * x[static_cast<std::size_t>(perm[i]) * m + j] : x[i * m + j];
        for (std::size_t i = 0; i < d; ++i) {
            Complex s = 0.0;
            for (std::size_t l = 0; l < d; ++l)
                s += coef[i * d + l] * w[l];
            z[i] = s;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (perm)
                y[static_cast<std::size_t>(perm[i]) * m + j] += static_cast<double>(sign[i]) * z[i];
            else
                y[i * m + j] += z[i];
        }
    }
}

void TruncatedOperator::apply(std::span<const Complex> in, std::span<Complex> out, std::size_t domain) const
{
    require(dim_ <= 64, "coefficient dimension above 64 is not supported");
    std::fill(out.begin(), out.end(), Complex(0.0));
    const std::size_t n = ball_.size();
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < n; ++h) {
            const auto k = t.source[h];
            if (k < 0 || static_cast<std::size_t>(k) >= domain)
                continue;
            apply_block<false>(t, h, in.data() + static_cast<std::size_t>(k) * fiber_, out.data() + h * fiber_);
        }
}

void TruncatedOperator::apply_adjoint(std::span<const Complex> in, std::span<Complex> out, std::size_t domain) const
{
    require(dim_ <= 64, "coefficient dimension above 64 is not supported");
    std::fill(out.begin(), out.end(), Complex(0.0));
    const std::size_t n = ball_.size();
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < n; ++h) {
            const auto k = t.source[h];
            if (k < 0 || static_cast<std::size_t>(k) >= domain)
                continue;
            apply_block<true>(t, h, in.data() + h * fiber_, out.data() + static_cast<std::size_t>(k) * fiber_);
        }
}

void TruncatedOperator::apply_abs(std::span<const double> in, std::span<double> out, std::size_t domain) const
{
    std::fill(out.begin(), out.end(), 0.0);
    const auto d = static_cast<std::size_t>(dim_);
    const auto m = static_cast<std::size_t>(amplification_);
    const std::size_t n = ball_.size();
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < n; ++h) {
            const auto k = t.source[h];
            if (k < 0 || static_cast<std::size_t>(k) >= domain)
                continue;
            const double* x = in.data() + static_cast<std::size_t>(k) * fiber_;
            double* y = out.data() + h * fiber_;
            const std::int32_t* perm = unitary_perm_.empty() ? nullptr : unitary_perm_.data() + h * d;
            // |U M U^T|(perm_i, perm_l) = |M|(i, l)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t l = 0; l < d; ++l) {
                    const double a = t.magnitude[i * d + l];
                    const std::size_t row = perm ? static_cast<std::size_t>(perm[i]) : i;
                    const std::size_t col = perm ? static_cast<std::size_t>(perm[l]) : l;
                    for (std::size_t j = 0; j < m; ++j)
                        y[row * m + j] += a * x[col * m + j];
                }
        }
}

void TruncatedOperator::apply_abs_transpose(std::span<const double> in, std::span<double> out,
                                            std::size_t domain) const
{
    std::fill(out.begin(), out.end(), 0.0);
    const auto d = static_cast<std::size_t>(dim_);
    const auto m = static_cast<std::size_t>(amplification_);
    const std::size_t n = ball_.size();
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < n; ++h) {
            const auto k = t.source[h];
            if (k < 0 || static_cast<std::size_t>(k) >= domain)
                continue;
            const double* x = in.data() + h * fiber_;
            double* y = out.data() + static_cast<std::size_t>(k) * fiber_;
            const std::int32_t* perm = unitary_perm_.empty() ? nullptr : unitary_perm_.data() + h * d;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t l = 0; l < d; ++l) {
                    const double a = t.magnitude[i * d + l];
                    const std::size_t row = perm ? static_cast<std::size_t>(perm[i]) : i;
                    const std::size_t col = perm ? static_cast<std::size_t>(perm[l]) : l;
                    for (std::size_t j = 0; j < m; ++j)
                        y[col * m + j] += a * x[row * m + j];
                }
        }
}

double TruncatedOperator::max_column_sum() const
{
    std::vector<double> sums(ball_.size(), 0.0);
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < ball_.size(); ++h)
            if (const auto k = t.source[h]; k >= 0)
                sums[static_cast<std::size_t>(k)] += t.norm;
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double TruncatedOperator::max_row_sum() const
{
    std::vector<double> sums(ball_.size(), 0.0);
    for (const auto& t : terms_)
        for (std::size_t h = 0; h < ball_.size(); ++h)
            if (t.source[h] >= 0)
                sums[h] += t.norm;
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

std::size_t TruncatedOperator::memory_bytes() const
{
    std::size_t bytes = unitary_perm_.size() * sizeof(std::int32_t) + unitary_sign_.size();
    for (const auto& t : terms_)
        bytes += t.source.size() * sizeof(std::int32_t);
    return bytes;
}

std::vector<Complex> embed_amplified(std::span<const Complex> v, std::size_t points, int dim, int m_from, int m_to)
{
    require(m_to >= m_from && m_from >= 1, "embedding needs 1 <= m_from <= m_to");
    const auto d = static_cast<std::size_t>(dim);
    const auto a = static_cast<std::size_t>(m_from);
    const auto b = static_cast<std::size_t>(m_to);
    require(v.size() == points * d * a, "embed_amplified: vector size mismatch");
    std::vector<Complex> out(points * d * b, Complex(0.0));
    for (std::size_t h = 0; h < points; ++h)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < a; ++j)
                out[(h * d + i) * b + j] = v[(h * d + i) * a + j];
    return out;
}

} // namespace pfp
