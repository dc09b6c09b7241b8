#include "pfp/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pfp/boundary.hpp"
#include "pfp/errors.hpp"
#include "pfp/estimators.hpp"
#include "pfp/measure.hpp"
#include "pfp/norm_checks.hpp"
#include "pfp/rademacher.hpp"
#include "pfp/sampling.hpp"
#include "pfp/weights.hpp"

namespace pfp {

bool SuiteResult::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; });
}

namespace {

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

// Runs `body`, turning an exception into a failed check.
void check(SuiteResult& r, const std::string& name, const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        auto [ok, detail] = body();
        r.checks.push_back({name, ok, detail});
    } catch (const std::exception& e) {
        r.checks.push_back({name, false, std::string("exception: ") + e.what()});
    }
}

double matrix_defect(const AlgebraElement& a, const AlgebraElement& b)
{
    double worst = 0.0;
    for (const auto& [g, c] : a.terms())
        worst = std::max(worst, (c - b.at(g)).cwiseAbs().maxCoeff());
    for (const auto& [g, c] : b.terms())
        worst = std::max(worst, (c - a.at(g)).cwiseAbs().maxCoeff());
    return worst;
}

SuiteResult group_suite(std::uint64_t seed)
{
    SuiteResult r{"group-core", {}};
    const std::vector<std::string> specs = {"free:2", "free:3", "cyclic:5", "product:free:1,cyclic:3"};
    for (std::size_t si = 0; si < specs.size(); ++si) {
        const auto spec = GroupSpec::parse(specs[si]);
        Rng rng = Rng::derived(seed, si);
        check(r, specs[si] + " group axioms", [&]() -> std::pair<bool, std::string> {
            for (int t = 0; t < 200; ++t) {
                const auto a = random_element(spec, 3, rng);
                const auto b = random_element(spec, 3, rng);
                const auto c = random_element(spec, 3, rng);
                if (!(compose(spec, compose(spec, a, b), c) == compose(spec, a, compose(spec, b, c))))
                    return {false, "associativity fails"};
                if (!(compose(spec, a, invert(spec, a)) == identity(spec)))
                    return {false, "inverse fails"};
                if (length(spec, compose(spec, a, b)) > length(spec, a) + length(spec, b))
                    return {false, "triangle inequality fails"};
                if (length(spec, invert(spec, a)) != length(spec, a))
                    return {false, "length not symmetric"};
            }
            return {true, "200 random triples"};
        });
        check(r, specs[si] + " ball indexing", [&]() -> std::pair<bool, std::string> {
            const BallIndex big(spec, 4);
            const BallIndex small(spec, 2);
            for (std::size_t i = 0; i < big.size(); ++i) {
                const auto g = big.element(i);
                if (big.find(g) != i)
                    return {false, "find(element(i)) != i at " + std::to_string(i)};
                if (!(parse_word(spec, format_word(spec, g)) == g))
                    return {false, "word literal round trip fails"};
                if (i > 0 && compare(spec, big.element(i - 1), g) >= 0)
                    return {false, "ball order not increasing"};
            }
            for (std::size_t i = 0; i < small.size(); ++i)
                if (!(small.element(i) == big.element(i)))
                    return {false, "ball(2) is not an index prefix of ball(4)"};
            if (big.size() != ball_size(spec, 4))
                return {false, "ball size disagrees with sphere sizes"};
            return {true, std::to_string(big.size()) + " elements"};
        });
    }
    return r;
}

SuiteResult algebra_suite(std::uint64_t seed)
{
    SuiteResult r{"crossed-algebra", {}};
    const auto spec = GroupSpec::free(2);
    const std::vector<std::pair<std::string, ActionSpec>> actions = {
        {"scalar", ActionSpec::trivial(1)}, {"matrix-trivial", ActionSpec::trivial(2)},
        {"swap", ActionSpec::swap(spec)}};
    for (std::size_t ai = 0; ai < actions.size(); ++ai) {
        const auto& [label, action] = actions[ai];
        Rng rng = Rng::derived(seed, ai);
        check(r, label + " algebra laws", [&]() -> std::pair<bool, std::string> {
            double worst = 0.0;
            for (int t = 0; t < 20; ++t) {
                const auto f = random_matrix_element(spec, action, 2, 3, rng);
                const auto g = random_matrix_element(spec, action, 2, 3, rng);
                const auto h = random_matrix_element(spec, action, 1, 2, rng);
                worst = std::max(worst, matrix_defect(convolve(convolve(f, g), h), convolve(f, convolve(g, h))));
                worst = std::max(worst, matrix_defect(involute(convolve(f, g)), convolve(involute(g), involute(f))));
                worst = std::max(worst, matrix_defect(involute(involute(f)), f));
                if (l1_norm(convolve(f, g)) > l1_norm(f) * l1_norm(g) * (1 + 1e-12))
                    return {false, "l1 norm not submultiplicative"};
                if (std::abs(l1_norm(involute(f)) - l1_norm(f)) > 1e-12 * l1_norm(f))
                    return {false, "involution not l1 isometric"};
            }
            return {worst < 1e-10, "max coefficient defect " + fmt(worst)};
        });
    }
    return r;
}

SuiteResult pnorm_suite(std::uint64_t seed)
{
    SuiteResult r{"pnorm-engine", {}};
    const auto spec = GroupSpec::free(2);
    BoydOptions options;
    options.seed = seed;
    options.restarts = 4;
    check(r, "identity has norm 1", [&]() -> std::pair<bool, std::string> {
        const auto delta = AlgebraElement::dirac(spec, identity(spec));
        for (double p : {1.2, 1.5, 2.0, 3.0}) {
            const auto e = pf_norm(delta, PExponent::of(p), 3, 1, options);
            if (std::abs(e.lower - 1.0) > 1e-12 || std::abs(e.upper - 1.0) > 1e-12)
                return {false, "p=" + fmt(p) + " gives [" + fmt(e.lower) + ", " + fmt(e.upper) + "]"};
        }
        return {true, "p in {1.2, 1.5, 2, 3}"};
    });
    Rng rng = Rng::derived(seed, 1);
    check(r, "anchor duality and Riesz-Thorin", [&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            const auto f = random_scalar_element(spec, 2, 4, rng);
            const TruncatedOperator op(f, 1, 4);
            const TruncatedOperator opstar(involute(f), 1, 4);
            worst = std::max(worst, std::abs(op.max_column_sum() - opstar.max_row_sum()));
            const auto a = compute_anchors(op);
            if (a.two > std::sqrt(a.one * a.inf) * (1 + 1e-12))
                return {false, "Riesz-Thorin fails"};
        }
        return {worst < 1e-12, "max anchor difference " + fmt(worst)};
    });
    check(r, "bounds bracket and amplification", [&]() -> std::pair<bool, std::string> {
        for (int t = 0; t < 3; ++t) {
            const auto f = random_scalar_element(spec, 1, 3, rng);
            for (double p : {1.5, 2.0}) {
                const auto rep = amplification_check(f, {1, 2}, PExponent::of(p), 4, options);
                for (std::size_t i = 0; i < rep.lower.size(); ++i)
                    if (rep.lower[i] > rep.upper[i] * (1 + 1e-12))
                        return {false, "lower exceeds upper"};
                if (!rep.direction_ok)
                    return {false, "amplification lowered the estimate at p=" + fmt(p)};
            }
        }
        return {true, "3 elements, p in {1.5, 2}"};
    });
    return r;
}

SuiteResult rademacher_suite(std::uint64_t seed)
{
    SuiteResult r{"rademacher-lab", {}};
    check(r, "moment ratio identities", [&]() -> std::pair<bool, std::string> {
        const auto fam = gaussian_family(6, 5, 1.5, seed);
        const auto sample = sample_rademacher(fam, 2000, seed);
        if (moment_ratio(sample, 1.5, 1.5) != 1.0)
            return {false, "ratio at p == q is not 1"};
        // power-mean inequality: q > p gives a ratio >= 1
        if (moment_ratio(sample, 1.5, 2.0) < 1.0 || moment_ratio(sample, 3.0, 2.0) > 1.0)
            return {false, "power-mean direction fails"};
        return {true, "2000 trials"};
    });
    check(r, "sampler agrees with exhaustive ratio", [&]() -> std::pair<bool, std::string> {
        const auto fam = gaussian_family(4, 4, 2.0, seed + 1);
        const auto sample = sample_rademacher(fam, 20000, seed);
        const double est = moment_ratio(sample, 1.5, 2.0);
        const double se = moment_ratio_standard_error(sample.norms, 1.5, 2.0);
        const double exact = exact_moment_ratio(fam, 1.5, 2.0);
        return {std::abs(est - exact) <= 4.0 * se + 1e-12,
                "estimate " + fmt(est) + " exact " + fmt(exact) + " se " + fmt(se)};
    });
    return r;
}

SuiteResult walk_suite(std::uint64_t)
{
    SuiteResult r{"walk-entropy", {}};
    const auto f2 = GroupSpec::free(2);
    const auto mu = Measure::srw(f2);
    check(r, "entropy of srw on free(2)", [&]() -> std::pair<bool, std::string> {
        const auto powers = exact_powers(mu, 6);
        if (std::abs(powers.entropy[0] - std::log(4.0)) > 1e-12)
            return {false, "H_1 != log 4"};
        for (std::size_t i = 0; i + 1 < powers.entropy.size(); ++i)
            for (std::size_t j = 0; i + j + 1 < powers.entropy.size(); ++j)
                if (powers.entropy[i + j + 1] > powers.entropy[i] + powers.entropy[j] + 1e-12)
                    return {false, "subadditivity fails"};
        return {true, "n <= 6"};
    });
    check(r, "speed", [&]() -> std::pair<bool, std::string> {
        const auto s = speed(mu, 2000);
        return {std::abs(s.speed - 0.5) < 1e-3, "speed " + fmt(s.speed)};
    });
    check(r, "harmonic measure and Xi", [&]() -> std::pair<bool, std::string> {
        const auto nu = harmonic_measure(mu);
        for (Letter x : free_letters(2))
            if (std::abs(nu.first(x) - 0.25) > 1e-12)
                return {false, "first-letter mass not uniform"};
        const std::vector<Letter> e;
        if (xi_function(e, nu) != 1.0)
            return {false, "Xi(e) != 1"};
        const auto lazy = Measure::lazy(f2, 0.3);
        const auto nul = harmonic_measure(lazy);
        double worst = nul.stationarity_residual(lazy);
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : reduced_words(2, n))
                worst = std::max(worst, std::abs(xi_function(w, nul) - xi_function_cylinders(w, nul)));
        return {worst < 1e-12, "max residual " + fmt(worst)};
    });
    check(r, "Gibbs divergence", [&]() -> std::pair<bool, std::string> {
        for (double alpha : {0.0, 1.0, 2.0}) {
            const auto g = gibbs_bound_check(mu, 4, WeightFunction::omega(alpha));
            if (!g.nonnegative)
                return {false, "negative divergence for alpha " + fmt(alpha)};
        }
        return {true, "n = 4"};
    });
    check(r, "criteria endpoints", [&]() -> std::pair<bool, std::string> {
        const auto c = criteria_report(2, 0.5 * std::log(3.0), 0.5, 0.1, 4.0);
        const double worst = std::max(c.ii_endpoint_residual, c.iii_endpoint_residual);
        return {worst < 1e-12, "max residual " + fmt(worst)};
    });
    return r;
}

using SuiteFn = SuiteResult (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"group-core", group_suite},       {"crossed-algebra", algebra_suite}, {"pnorm-engine", pnorm_suite},
        {"rademacher-lab", rademacher_suite}, {"walk-entropy", walk_suite}};
    return suites;
}

} // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry())
        names.push_back(name);
    return names;
}

std::vector<SuiteResult> run_suites(const std::string& which, std::uint64_t seed)
{
    std::vector<SuiteResult> out;
    for (std::size_t i = 0; i < registry().size(); ++i) {
        const auto& [name, fn] = registry()[i];
        if (which == "all" || which == name)
            out.push_back(fn(Rng::derived(seed, i).bits()));
    }
    if (out.empty())
        throw PreconditionError("unknown suite '" + which + "'");
    return out;
}

nlohmann::json suite_json(const std::vector<SuiteResult>& results)
{
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const auto& s : results) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : s.checks)
            checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        suites.push_back({{"suite", s.name}, {"ok", s.ok()}, {"checks", checks}});
        all = all && s.ok();
    }
    return {{"suites", suites}, {"ok", all}};
}

} // namespace pfp
