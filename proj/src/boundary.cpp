#include "pfp/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "pfp/errors.hpp"

namespace pfp {

namespace {

std::vector<Letter> inverse_word(std::span<const Letter> w)
{
    std::vector<Letter> out(w.rbegin(), w.rend());
    for (auto& x : out)
        x = static_cast<Letter>(-x);
    return out;
}

} // namespace

BoundaryMeasure::BoundaryMeasure(int rank, std::vector<double> hitting, int iterations, double residual)
    : rank_(rank), hitting_(std::move(hitting)), iterations_(iterations), residual_(residual)
{
    require(rank >= 2, "boundary measures need free(k) with k >= 2");
    require(hitting_.size() == 2 * static_cast<std::size_t>(rank), "hitting table has the wrong size");
    first_.resize(hitting_.size());
    for (int i = 1; i <= rank; ++i)
        for (Letter x : {static_cast<Letter>(i), static_cast<Letter>(-i)}) {
            const double f = this->hitting(x);
            const double g = this->hitting(static_cast<Letter>(-x));
            first_[index(x)] = f * (1.0 - g) / (1.0 - f * g);
        }
}

double BoundaryMeasure::cylinder(std::span<const Letter> w) const
{
    if (w.empty())
        return 1.0;
    double m = 1.0;
    for (Letter x : w)
        m *= hitting(x);
    return m * (1.0 - first(static_cast<Letter>(-w.back())));
}

double BoundaryMeasure::translated(std::span<const Letter> g, std::span<const Letter> w) const
{
    require(!w.empty(), "translated cylinders need a nonempty word");
    std::size_t c = 0;
    while (c < g.size() && c < w.size() && g[g.size() - 1 - c] == -w[c])
        ++c;
    if (c < w.size()) {
        std::vector<Letter> gw(g.begin(), g.end() - static_cast<std::ptrdiff_t>(c));
        gw.insert(gw.end(), w.begin() + static_cast<std::ptrdiff_t>(c), w.end());
        return cylinder(gw);
    }
    // g = u w^-1: g C_w = u (X \ C_{w_n^-1}), of mass 1 - nu(C_{u w_n^-1}).
    std::vector<Letter> u(g.begin(), g.end() - static_cast<std::ptrdiff_t>(w.size()));
    u.push_back(static_cast<Letter>(-w.back()));
    return 1.0 - cylinder(u);
}

double BoundaryMeasure::stationarity_residual(const Measure& mu) const
{
    require(mu.spec().kind() == GroupKind::free && mu.spec().rank() == rank_,
            "stationarity check needs a measure on the same free group");
    double worst = 0.0;
    for (Letter x : free_letters(rank_)) {
        const Letter w[1] = {x};
        double total = 0.0;
        for (const auto& [s, m] : mu.masses())
            total += m * (s.word.empty() ? cylinder(w) : translated(inverse_word(s.word), w));
        worst = std::max(worst, std::abs(total - cylinder(w)));
    }
    return worst;
}

BoundaryMeasure harmonic_measure(const Measure& mu)
{
    const auto& spec = mu.spec();
    require(spec.kind() == GroupKind::free, "harmonic measure needs a free group");
    require(spec.rank() >= 2, "harmonic measure needs free(k) with k >= 2 (the boundary of free(1) has two points)");
    require(mu.is_nearest_neighbor(), "harmonic measure needs a nearest-neighbor measure");
    const int k = spec.rank();
    const auto letters = free_letters(k);
    auto idx = [k](Letter x) {
        return x > 0 ? static_cast<std::size_t>(x - 1) : static_cast<std::size_t>(k - x - 1);
    };
    std::vector<double> step(2 * static_cast<std::size_t>(k), 0.0);
    for (Letter x : letters) {
        GroupElement g;
        g.word = {x};
        step[idx(x)] = mu.mass(g);
        require(step[idx(x)] > 0.0, "harmonic measure needs positive mass on every generator and inverse");
    }
    const double stay = mu.mass(identity(spec));

    std::vector<double> f(step.size(), 0.0), next(step.size(), 0.0);
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (Letter x : letters) {
            double loop = stay;
            for (Letter y : letters)
                if (y != x)
                    loop += step[idx(y)] * in[idx(static_cast<Letter>(-y))];
            out[idx(x)] = step[idx(x)] + loop * in[idx(x)];
        }
    };
    int it = 0;
    for (; it < 1000000; ++it) {
        apply(f, next);
        double change = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            change = std::max(change, std::abs(next[i] - f[i]));
        f.swap(next);
        if (change <= 1e-16)
            break;
    }
    apply(f, next);
    double residual = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        residual = std::max(residual, std::abs(next[i] - f[i]));
    return BoundaryMeasure(k, std::move(f), it + 1, residual);
}

std::vector<std::vector<Letter>> reduced_words(int rank, int length)
{
    require(rank >= 1 && length >= 0, "reduced_words needs rank >= 1 and length >= 0");
    std::vector<std::vector<Letter>> words{{}};
    const auto letters = free_letters(rank);
    for (int l = 0; l < length; ++l) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : words)
            for (Letter x : letters) {
                if (!w.empty() && w.back() == -x)
                    continue;
                auto v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        words.swap(next);
    }
    return words;
}

double furstenberg_entropy(const Measure& mu, const BoundaryMeasure& nu)
{
    require(mu.spec().kind() == GroupKind::free && mu.spec().rank() == nu.rank(),
            "Furstenberg entropy needs a measure on the boundary's free group");
    long double total = 0.0L;
    for (const auto& [s, m] : mu.masses()) {
        if (s.word.empty())
            continue;
        long double inner = 0.0L;
        for (const auto& c : reduced_words(nu.rank(), static_cast<int>(s.word.size()) + 1)) {
            const double base = nu.cylinder(c);
            const double moved = nu.translated(s.word, c);
            inner += static_cast<long double>(base) * std::log(static_cast<long double>(moved) / base);
        }
        total -= static_cast<long double>(m) * inner;
    }
    return static_cast<double>(total);
}

double xi_function(std::span<const Letter> s, const BoundaryMeasure& nu)
{
    const std::size_t m = s.size();
    if (m == 0)
        return 1.0;
    // On A_j (common prefix with s of length exactly j) the derivative is
    // prod_{i>j} F(s_i^-1) / prod_{i<=j} F(s_i).
    long double total = 0.0L;
    for (std::size_t j = 0; j <= m; ++j) {
        const double region = j < m ? nu.cylinder(s.first(j)) - nu.cylinder(s.first(j + 1)) : nu.cylinder(s);
        long double ratio = 1.0L;
        for (std::size_t i = j; i < m; ++i)
            ratio *= nu.hitting(static_cast<Letter>(-s[i]));
        for (std::size_t i = 0; i < j; ++i)
            ratio /= nu.hitting(s[i]);
        total += static_cast<long double>(region) * std::sqrt(ratio);
    }
    return static_cast<double>(total);
}

double xi_function_cylinders(std::span<const Letter> s, const BoundaryMeasure& nu)
{
    if (s.empty())
        return 1.0;
    const auto s_inv = inverse_word(s);
    long double total = 0.0L;
    for (const auto& c : reduced_words(nu.rank(), static_cast<int>(s.size()) + 1))
        total += std::sqrt(static_cast<long double>(nu.cylinder(c)) * nu.translated(s_inv, c));
    return static_cast<double>(total);
}

double xi_srw_closed_form(int rank, int length)
{
    require(rank >= 2 && length >= 0, "closed form needs k >= 2 and n >= 0");
    const double k = rank;
    return (1.0 + length * (k - 1.0) / k) * std::pow(2.0 * k - 1.0, -0.5 * length);
}

} // namespace pfp
