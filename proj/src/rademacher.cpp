#include "pfp/rademacher.hpp"

#include <algorithm>
#include <cmath>

#include "pfp/errors.hpp"
#include "pfp/rng.hpp"

namespace pfp {

double VectorFamily::signed_norm(std::span<const int> signs) const
{
    require(signs.size() == vectors.size(), "sign pattern length differs from family size");
    if (vectors.empty())
        return 0.0;
    std::vector<Complex> sum(vectors.front().size(), Complex(0.0));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const double e = signs[k];
        const auto& x = vectors[k];
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += e * x[i];
    }
    return lp_norm(sum, fiber, space_p);
}

VectorFamily basis_family(std::size_t dim, std::size_t n, double space_p)
{
    require(n >= 1 && n <= dim, "basis family needs 1 <= n <= dim");
    VectorFamily f;
    f.name = "basis";
    f.space_p = space_p;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> x(dim, Complex(0.0));
        x[k] = 1.0;
        f.vectors.push_back(std::move(x));
    }
    return f;
}

VectorFamily gaussian_family(std::size_t dim, std::size_t n, double space_p, std::uint64_t seed)
{
    require(n >= 1 && dim >= 1, "gaussian family needs n >= 1 and dim >= 1");
    VectorFamily f;
    f.name = "gaussian";
    f.space_p = space_p;
    Rng rng(seed);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> x(dim);
        for (auto& v : x)
            v = rng.normal();
        f.vectors.push_back(std::move(x));
    }
    return f;
}

RademacherSample sample_rademacher(const VectorFamily& family, std::size_t trials, std::uint64_t seed)
{
    require(trials >= 1, "need at least one trial");
    RademacherSample s;
    s.trials = trials;
    s.n = family.size();
    s.seed = seed;
    s.norms.resize(trials);
    std::vector<int> signs(family.size());
    for (std::size_t start = 0, chunk = 0; start < trials; start += kChunk, ++chunk) {
        Rng rng = Rng::derived(seed, chunk);
        const std::size_t end = std::min(trials, start + kChunk);
        for (std::size_t t = start; t < end; ++t) {
            for (auto& e : signs)
                e = rng.sign();
            s.norms[t] = family.signed_norm(signs);
        }
    }
    return s;
}

namespace {

// Mean of (x / peak)^p with Kahan summation in long double.
long double scaled_mean(std::span<const double> xs, double peak, double p)
{
    long double sum = 0.0L, comp = 0.0L;
    for (double x : xs) {
        const long double term =
            p == 1.0 ? x / peak : std::pow(static_cast<long double>(x / peak), static_cast<long double>(p));
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<long double>(xs.size());
}

} // namespace

double moment_ratio(std::span<const double> norms, double p, double q)
{
    require(!norms.empty(), "moment_ratio needs a nonempty sample");
    require(p >= 1.0 && q >= 1.0, "moment_ratio needs p, q >= 1");
    if (p == q)
        return 1.0;
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    require(*lo >= 0.0, "sample norms must be nonnegative");
    if (*lo == *hi)
        return 1.0;
    const double peak = *hi;
    const long double a = std::pow(scaled_mean(norms, peak, q), 1.0L / q);
    const long double b = std::pow(scaled_mean(norms, peak, p), 1.0L / p);
    return static_cast<double>(a / b);
}

double moment_ratio(const RademacherSample& sample, double p, double q)
{
    return moment_ratio(sample.norms, p, q);
}

double moment_ratio_standard_error(std::span<const double> norms, double p, double q)
{
    require(norms.size() >= 2, "standard error needs at least two trials");
    if (p == q)
        return 0.0;
    const double peak = *std::max_element(norms.begin(), norms.end());
    if (peak == 0.0)
        return 0.0;
    const auto n = static_cast<long double>(norms.size());
    long double ma = 0.0L, mb = 0.0L;
    for (double x : norms) {
        ma += std::pow(static_cast<long double>(x / peak), static_cast<long double>(q));
        mb += std::pow(static_cast<long double>(x / peak), static_cast<long double>(p));
    }
    ma /= n;
    mb /= n;
    long double vaa = 0.0L, vbb = 0.0L, vab = 0.0L;
    for (double x : norms) {
        const long double a = std::pow(static_cast<long double>(x / peak), static_cast<long double>(q)) - ma;
        const long double b = std::pow(static_cast<long double>(x / peak), static_cast<long double>(p)) - mb;
        vaa += a * a;
        vbb += b * b;
        vab += a * b;
    }
    vaa /= (n - 1);
    vbb /= (n - 1);
    vab /= (n - 1);
    const long double r = std::pow(ma, 1.0L / q) / std::pow(mb, 1.0L / p);
    const long double da = r / (q * ma);
    const long double db = -r / (p * mb);
    const long double var = (da * da * vaa + db * db * vbb + 2.0L * da * db * vab) / n;
    return static_cast<double>(std::sqrt(std::max(var, 0.0L)));
}

double exact_moment_ratio(const VectorFamily& family, double p, double q)
{
    const std::size_t n = family.size();
    require(n >= 1 && n <= 20, "exhaustive enumeration needs 1 <= n <= 20");
    std::vector<double> norms(std::size_t{1} << n);
    std::vector<int> signs(n);
    for (std::size_t mask = 0; mask < norms.size(); ++mask) {
        for (std::size_t k = 0; k < n; ++k)
            signs[k] = (mask >> k) & 1U ? -1 : 1;
        norms[mask] = family.signed_norm(signs);
    }
    return moment_ratio(norms, p, q);
}

KahaneReport kahane_constant_scan(const std::vector<VectorFamily>& families, double p, std::size_t trials,
                                  std::uint64_t seed)
{
    require(p >= 1.0 && p < kInfinity, "kahane scan needs finite p >= 1");
    require(trials >= 2, "kahane scan needs at least two trials");
    KahaneReport r;
    r.p = p;
    r.trials = trials;
    r.seed = seed;
    r.direction_ok = true;
    r.max_k_p2 = families.empty() ? 1.0 : 0.0;
    r.max_k_2p = families.empty() ? 1.0 : 0.0;
    for (std::size_t i = 0; i < families.size(); ++i) {
        const auto& fam = families[i];
        const auto sample = sample_rademacher(fam, trials, Rng::derived(seed, i).bits());
        FamilyRatios fr;
        fr.name = fam.name;
        fr.n = fam.size();
        fr.k_p2 = moment_ratio(sample, p, 2.0);
        fr.k_2p = moment_ratio(sample, 2.0, p);
        fr.k_p2_se = moment_ratio_standard_error(sample.norms, p, 2.0);
        fr.k_2p_se = moment_ratio_standard_error(sample.norms, 2.0, p);
        if (fam.size() <= kExhaustiveLimit) {
            fr.has_exact = true;
            fr.k_p2_exact = exact_moment_ratio(fam, p, 2.0);
            fr.k_2p_exact = exact_moment_ratio(fam, 2.0, p);
        }
        if (p <= 2.0)
            fr.direction_ok = fr.k_p2 >= 1.0 && fr.k_2p <= 1.0;
        else
            fr.direction_ok = fr.k_p2 <= 1.0 && fr.k_2p >= 1.0;
        r.direction_ok = r.direction_ok && fr.direction_ok;
        r.max_k_p2 = std::max(r.max_k_p2, fr.k_p2);
        r.max_k_2p = std::max(r.max_k_2p, fr.k_2p);
        r.families.push_back(std::move(fr));
    }
    r.product = r.max_k_p2 * r.max_k_2p;
    return r;
}

} // namespace pfp
