#include "pfp/measure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pfp/errors.hpp"
#include "pfp/rng.hpp"

namespace pfp {

Measure::Measure(GroupSpec spec, Masses masses) : spec_(std::move(spec)), masses_(std::move(masses))
{
    require(!masses_.empty(), "measure needs a nonempty support");
    long double total = 0.0L;
    for (const auto& [g, m] : masses_) {
        require(belongs(spec_, g), "measure support element does not belong to " + spec_.to_string());
        require(std::isfinite(m) && m > 0.0, "measure masses must be positive");
        total += m;
    }
    require(std::abs(static_cast<double>(total) - 1.0) <= 1e-12,
            "measure masses must sum to 1 (got " + std::to_string(static_cast<double>(total)) + ")");
}

Measure Measure::srw(const GroupSpec& spec)
{
    const int gens = spec.generator_count();
    require(gens >= 1, "srw needs at least one generator");
    Masses masses;
    const double m = 1.0 / (2.0 * gens);
    for (int i = 0; i < gens; ++i) {
        masses[generator(spec, i, false)] += m;
        masses[generator(spec, i, true)] += m;
    }
    return Measure(spec, std::move(masses));
}

Measure Measure::lazy(const GroupSpec& spec, double q)
{
    require(q >= 0.0 && q < 1.0, "lazy walk needs 0 <= q < 1");
    const int gens = spec.generator_count();
    Masses masses;
    const double m = (1.0 - q) / (2.0 * gens);
    for (int i = 0; i < gens; ++i) {
        masses[generator(spec, i, false)] += m;
        masses[generator(spec, i, true)] += m;
    }
    if (q > 0.0)
        masses[identity(spec)] += q;
    return Measure(spec, std::move(masses));
}

Measure Measure::dirac(const GroupSpec& spec, const GroupElement& g)
{
    return Measure(spec, Masses{{g, 1.0}});
}

Measure Measure::alias(const GroupSpec& spec, std::string_view name)
{
    if (name == "srw")
        return srw(spec);
    if (name.substr(0, 5) == "lazy:") {
        const std::string value(name.substr(5));
        std::size_t used = 0;
        double q = 0.0;
        try {
            q = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == value.size() && !value.empty(), "bad lazy parameter '" + value + "'");
        return lazy(spec, q);
    }
    throw PreconditionError("unknown measure alias '" + std::string(name) + "' (expected srw or lazy:<q>)");
}

double Measure::mass(const GroupElement& g) const
{
    const auto it = masses_.find(g);
    return it == masses_.end() ? 0.0 : it->second;
}

int Measure::support_radius() const
{
    int r = 0;
    for (const auto& [g, m] : masses_)
        r = std::max(r, length(spec_, g));
    return r;
}

bool Measure::is_nearest_neighbor() const
{
    return support_radius() <= 1;
}

bool Measure::is_radial(double* identity_mass) const
{
    if (spec_.kind() != GroupKind::free || !is_nearest_neighbor())
        return false;
    const int k = spec_.rank();
    const double e = mass(identity(spec_));
    const double each = (1.0 - e) / (2.0 * k);
    for (int i = 0; i < k; ++i)
        for (bool inv : {false, true})
            if (std::abs(mass(generator(spec_, i, inv)) - each) > 1e-14)
                return false;
    if (identity_mass)
        *identity_mass = e;
    return true;
}

bool Measure::touches_every_direction() const
{
    if (masses_.size() < 2)
        return false;
    if (spec_.kind() != GroupKind::free)
        return true;
    std::vector<bool> seen(2 * static_cast<std::size_t>(spec_.rank()), false);
    for (const auto& [g, m] : masses_)
        for (Letter x : g.word)
            seen[x > 0 ? static_cast<std::size_t>(x - 1) : static_cast<std::size_t>(spec_.rank() - x - 1)] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void require_nondegenerate(const Measure& mu)
{
    if (!mu.touches_every_direction())
        throw PreconditionError("degenerate measure: its support does not generate " + mu.spec().to_string() +
                                " as a semigroup");
}

Measure measure_from_json(const GroupSpec& spec, const nlohmann::json& j)
{
    try {
        require(j.is_object() && j.contains("terms") && j.at("terms").is_array(),
                "measure JSON needs a \"terms\" array");
        Measure::Masses masses;
        for (const auto& t : j.at("terms")) {
            const auto g = parse_word(spec, t.at("word").get<std::string>());
            masses[g] += t.at("mass").get<double>();
        }
        return Measure(spec, std::move(masses));
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("bad measure JSON: ") + e.what());
    }
}

nlohmann::json measure_to_json(const Measure& mu)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [g, m] : mu.masses())
        terms.push_back({{"word", format_word(mu.spec(), g)}, {"mass", m}});
    return {{"group", mu.spec().to_string()}, {"terms", terms}};
}

Measure convolve_measure(const Measure& mu, const Measure& nu)
{
    if (!(mu.spec() == nu.spec()))
        throw StructuralError("convolve_measure: group mismatch");
    Measure::Masses out;
    for (const auto& [s, a] : mu.masses())
        for (const auto& [t, b] : nu.masses())
            out[compose(mu.spec(), s, t)] += a * b;
    return Measure(mu.spec(), std::move(out));
}

namespace {

struct EntropySum {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(double m)
    {
        if (m <= 0.0)
            return;
        const long double term = -static_cast<long double>(m) * std::log(static_cast<long double>(m));
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return static_cast<double>(sum); }
};

// Steps the walk from the identity; visit(n, each, bytes) sees each power, where
// each(sink) calls sink(length, mass, element_getter) over the support.
template <typename Visit>
void run_powers(const Measure& mu, int n_max, std::size_t cap, Visit&& visit)
{
    const auto& spec = mu.spec();
    const int r = mu.support_radius();
    if (spec.kind() == GroupKind::free) {
        // Largest n whose ball(n r) fits under the cap.
        int n_fit = 0;
        while (n_fit < n_max && ball_size(spec, (n_fit + 1) * r) <= cap)
            ++n_fit;
        if (n_fit == 0)
            return;
        const BallIndex ball(spec, n_fit * r, cap);
        std::vector<double> cur(ball.size(), 0.0), next(ball.size(), 0.0);
        cur[0] = 1.0;
        std::vector<std::pair<std::vector<Letter>, double>> steps;
        for (const auto& [g, m] : mu.masses())
            steps.emplace_back(g.word, m);
        for (int n = 1; n <= n_fit; ++n) {
            std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(ball.ball_end(n * r)), 0.0);
            const std::size_t from = ball.ball_end((n - 1) * r);
            for (std::size_t i = 0; i < from; ++i) {
                const double c = cur[i];
                if (c == 0.0)
                    continue;
                for (const auto& [w, m] : steps)
                    next[static_cast<std::size_t>(ball.find_product(ball.word(i), w))] += c * m;
            }
            cur.swap(next);
            const std::size_t end = ball.ball_end(n * r);
            visit(n, [&](auto&& sink) {
                for (std::size_t i = 0; i < end; ++i)
                    if (cur[i] > 0.0)
                        sink(ball.length(i), cur[i], [&] { return ball.element(i); });
            }, ball.size() * 2 * sizeof(double));
        }
        return;
    }
    Measure::Masses cur{{identity(spec), 1.0}};
    for (int n = 1; n <= n_max; ++n) {
        Measure::Masses next;
        for (const auto& [g, a] : cur)
            for (const auto& [s, b] : mu.masses())
                next[compose(spec, g, s)] += a * b;
        if (next.size() > cap)
            return;
        cur.swap(next);
        visit(n, [&](auto&& sink) {
            for (const auto& [g, m] : cur)
                sink(length(spec, g), m, [&] { return g; });
        }, cur.size() * (sizeof(GroupElement) + 2 * sizeof(double)));
    }
}

} // namespace

double shannon_entropy(const Measure::Masses& masses)
{
    EntropySum s;
    for (const auto& [g, m] : masses)
        s.add(m);
    return s.value();
}

PowerSequence exact_powers(const Measure& mu, int n_max, std::size_t cap)
{
    require(n_max >= 1, "exact_powers needs n_max >= 1");
    PowerSequence out;
    run_powers(mu, n_max, cap, [&](int n, auto&& each, std::size_t bytes) {
        EntropySum h;
        long double mean = 0.0L;
        std::size_t support = 0;
        each([&](int len, double m, auto&&) {
            h.add(m);
            mean += static_cast<long double>(m) * len;
            ++support;
        });
        out.n.push_back(n);
        out.entropy.push_back(h.value());
        out.mean_length.push_back(static_cast<double>(mean));
        out.support.push_back(support);
        out.memory_bytes = std::max(out.memory_bytes, bytes);
    });
    return out;
}

Measure::Masses power_distribution(const Measure& mu, int n, std::size_t cap)
{
    require(n >= 1, "power_distribution needs n >= 1");
    Measure::Masses out;
    bool reached = false;
    const auto& spec = mu.spec();
    run_powers(mu, n, cap, [&](int step, auto&& each, std::size_t) {
        if (step != n)
            return;
        reached = true;
        each([&](int, double m, auto&& element) { out.emplace(element(), m); });
    });
    if (!reached)
        throw ResourceError("support of the " + std::to_string(n) + "-th convolution power exceeds the element cap",
                            ball_size(spec, n * mu.support_radius()));
    return out;
}

double aitken(const std::vector<double>& s)
{
    if (s.empty())
        return 0.0;
    if (s.size() < 3)
        return s.back();
    const std::size_t n = s.size();
    const double a = s[n - 3], b = s[n - 2], c = s[n - 1];
    const double denom = c - 2.0 * b + a;
    if (denom == 0.0 || !std::isfinite(denom))
        return c;
    return c - (c - b) * (c - b) / denom;
}

namespace {

double fit_rate(const std::vector<int>& ns, const std::vector<double>& hs)
{
    const std::size_t m = ns.size();
    Eigen::Matrix4d a;
    Eigen::Vector4d b;
    for (int row = 0; row < 4; ++row) {
        const double n = ns[m - 4 + static_cast<std::size_t>(row)];
        a(row, 0) = n;
        a(row, 1) = std::log(n);
        a(row, 2) = 1.0;
        a(row, 3) = 1.0 / n;
        b(row) = hs[m - 4 + static_cast<std::size_t>(row)];
    }
    return a.colPivHouseholderQr().solve(b)(0);
}

std::vector<double> monte_carlo_entropies(const Measure& mu, int n_from, int n_to, std::uint64_t samples,
                                          std::uint64_t seed)
{
    const auto& spec = mu.spec();
    std::vector<GroupElement> atoms;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& [g, m] : mu.masses()) {
        atoms.push_back(g);
        acc += m;
        cumulative.push_back(acc);
    }
    const auto count = static_cast<std::size_t>(n_to - n_from + 1);
    std::vector<std::vector<GroupElement>> positions(count);
    for (auto& p : positions)
        p.reserve(samples);
    constexpr std::uint64_t chunk = 4096;
    for (std::uint64_t start = 0, c = 0; start < samples; start += chunk, ++c) {
        Rng rng = Rng::derived(seed, c);
        const std::uint64_t end = std::min(samples, start + chunk);
        for (std::uint64_t t = start; t < end; ++t) {
            GroupElement g = identity(spec);
            for (int n = 1; n <= n_to; ++n) {
                const double u = rng.uniform() * acc;
                auto idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                                    cumulative.begin());
                idx = std::min(idx, atoms.size() - 1);
                g = compose(spec, g, atoms[idx]);
                if (n >= n_from)
                    positions[static_cast<std::size_t>(n - n_from)].push_back(g);
            }
        }
    }
    std::vector<double> out;
    const ElementLess less;
    for (auto& p : positions) {
        std::sort(p.begin(), p.end(), less);
        EntropySum h;
        std::size_t i = 0;
        while (i < p.size()) {
            std::size_t j = i + 1;
            while (j < p.size() && p[j] == p[i])
                ++j;
            h.add(static_cast<double>(j - i) / static_cast<double>(p.size()));
            i = j;
        }
        out.push_back(h.value());
    }
    return out;
}

} // namespace

EntropyCurve avez_entropy(const Measure& mu, int n_max, std::uint64_t mc_samples, std::uint64_t seed,
                          std::size_t cap)
{
    require(n_max >= 2, "avez_entropy needs n_max >= 2");
    require_nondegenerate(mu);
    EntropyCurve c;
    const auto powers = exact_powers(mu, n_max, cap);
    c.n_exact = static_cast<int>(powers.n.size());
    c.memory_bytes = powers.memory_bytes;
    for (std::size_t i = 0; i < powers.n.size(); ++i) {
        c.n.push_back(powers.n[i]);
        c.entropy.push_back(powers.entropy[i]);
        c.entropy_rate.push_back(powers.entropy[i] / powers.n[i]);
        c.exact.push_back(true);
    }
    if (c.n_exact == 0)
        throw ResourceError("no convolution power of the measure fits under the element cap",
                            ball_size(mu.spec(), mu.support_radius()));

    // Fekete diagnostics on the exact part.
    c.fekete_upper = *std::min_element(c.entropy_rate.begin(), c.entropy_rate.end());
    for (std::size_t i = 1; i < c.entropy_rate.size(); ++i)
        c.monotonicity_defect = std::max(c.monotonicity_defect, c.entropy_rate[i] - c.entropy_rate[i - 1]);
    for (std::size_t i = 0; i < c.entropy.size(); ++i)
        for (std::size_t j = i; i + j + 1 < c.entropy.size(); ++j)
            c.subadditivity_defect =
                std::max(c.subadditivity_defect, c.entropy[i + j + 1] - c.entropy[i] - c.entropy[j]);
    c.monotone = c.monotonicity_defect <= 1e-9;
    c.subadditive = c.subadditivity_defect <= 1e-9;

    std::vector<double> increments;
    for (std::size_t i = 0; i < c.entropy.size(); ++i)
        increments.push_back(i == 0 ? c.entropy[0] : c.entropy[i] - c.entropy[i - 1]);
    c.h_aitken_rate = aitken(c.entropy_rate);
    c.h_aitken_increment = aitken(increments);
    if (c.n_exact >= 4) {
        c.h_fit = fit_rate(c.n, c.entropy);
        c.h_estimate = c.h_fit;
        c.extrapolation = "asymptotic-fit";
    } else {
        c.h_fit = c.h_aitken_rate;
        c.h_estimate = c.h_aitken_rate;
        c.extrapolation = c.n_exact >= 3 ? "aitken" : "last-exact";
    }

    if (c.n_exact < n_max) {
        c.warnings.push_back("exact powers stop at n = " + std::to_string(c.n_exact) + " (element cap)");
        if (mc_samples > 0) {
            const auto mc = monte_carlo_entropies(mu, c.n_exact + 1, n_max, mc_samples, seed);
            for (std::size_t i = 0; i < mc.size(); ++i) {
                const int n = c.n_exact + 1 + static_cast<int>(i);
                c.n.push_back(n);
                c.entropy.push_back(mc[i]);
                c.entropy_rate.push_back(mc[i] / n);
                c.exact.push_back(false);
            }
            c.monte_carlo = true;
            c.mc_samples = mc_samples;
            c.warnings.push_back("Monte Carlo entropies are plug-in estimates, biased low; excluded from extrapolation");
        }
    }
    return c;
}

SpeedReport speed(const Measure& mu, int n_max, std::size_t cap)
{
    require(n_max >= 2, "speed needs n_max >= 2");
    SpeedReport r;
    double e = 0.0;
    if (mu.is_radial(&e)) {
        require(e < 1.0, "speed needs a non-trivial walk");
        const int k = mu.spec().rank();
        const double move = 1.0 - e;
        const double away = move * (2.0 * k - 1.0) / (2.0 * k);
        const double back = move / (2.0 * k);
        r.method = "birth-death";
        std::vector<double> dist(static_cast<std::size_t>(n_max) + 2, 0.0), next(dist.size(), 0.0);
        dist[0] = 1.0;
        for (int n = 1; n <= n_max; ++n) {
            std::fill(next.begin(), next.end(), 0.0);
            next[0] += e * dist[0];
            next[1] += move * dist[0];
            for (int l = 1; l < n; ++l) {
                const double m = dist[static_cast<std::size_t>(l)];
                if (m == 0.0)
                    continue;
                next[static_cast<std::size_t>(l)] += e * m;
                next[static_cast<std::size_t>(l + 1)] += away * m;
                next[static_cast<std::size_t>(l - 1)] += back * m;
            }
            dist.swap(next);
            long double mean = 0.0L;
            for (int l = 1; l <= n; ++l)
                mean += static_cast<long double>(dist[static_cast<std::size_t>(l)]) * l;
            r.mean_length.push_back(static_cast<double>(mean));
        }
    } else {
        require_nondegenerate(mu);
        r.method = "exact-powers";
        r.mean_length = exact_powers(mu, n_max, cap).mean_length;
        require(r.mean_length.size() >= 2, "speed needs at least two exact convolution powers under the cap");
    }
    r.n = static_cast<int>(r.mean_length.size());
    const auto m = r.mean_length.size();
    r.raw = r.mean_length[m - 1] / static_cast<double>(m);
    r.increment = r.mean_length[m - 1] - r.mean_length[m - 2];
    std::vector<double> rates;
    for (std::size_t i = 0; i < m; ++i)
        rates.push_back(r.mean_length[i] / static_cast<double>(i + 1));
    r.aitken = aitken(rates);
    r.speed = r.increment;
    return r;
}

} // namespace pfp
