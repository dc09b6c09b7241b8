// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// budgets as pinned in the project requirements. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pfp/boundary.hpp"
#include "pfp/cli.hpp"
#include "pfp/estimators.hpp"
#include "pfp/norm_checks.hpp"
#include "pfp/rademacher.hpp"
#include "pfp/sampling.hpp"
#include "pfp/weights.hpp"

using namespace pfp;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

std::string g(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

AlgebraElement srw_element(const GroupSpec& spec)
{
    AlgebraElement f(spec, ActionSpec::trivial(1));
    const int k = spec.generator_count();
    for (int i = 0; i < k; ++i)
        for (bool inv : {false, true})
            f.add(generator(spec, i, inv), Complex(1.0 / (2.0 * k), 0.0));
    return f;
}

BoydOptions options(std::uint64_t seed)
{
    BoydOptions o;
    o.seed = seed;
    o.restarts = 8;
    o.tol = 1e-10;
    o.max_iter = 2000;
    return o;
}

const GroupSpec kF2 = GroupSpec::free(2);

Verdict identity_norm()
{
    const auto delta = AlgebraElement::dirac(kF2, identity(kF2));
    double worst = 0.0;
    for (double p : {1.2, 1.5, 2.0, 3.0}) {
        const auto e = pf_norm(delta, PExponent::of(p), 4, 1, options(42));
        worst = std::max({worst, std::abs(e.lower - 1.0), std::abs(e.upper - 1.0)});
    }
    return {worst <= 1e-12, "max |bound - 1| = " + g(worst)};
}

Verdict kesten()
{
    const auto f = srw_element(kF2);
    std::vector<double> values;
    std::string detail;
    for (int r : {4, 6, 8, 10, 12}) {
        const TruncatedOperator op(f, 1, r);
        values.push_back(pnorm_anchor(op, PExponent::of(2.0)));
        detail += "R=" + std::to_string(r) + ":" + g(values.back()) + " ";
    }
    bool ok = values.back() >= 0.846 && values.back() <= 0.8661;
    for (std::size_t i = 1; i < values.size(); ++i)
        ok = ok && values[i] >= values[i - 1];
    return {ok, detail + "target " + g(std::sqrt(3.0) / 2.0)};
}

// Criteria 3 and 4 share the same 50 random truncations.
struct DualityData {
    double anchor_gap = 0.0;
    int riesz_thorin_failures = 0;
};

DualityData duality_data()
{
    static const DualityData data = [] {
        DualityData d;
        Rng rng(2024);
        for (int t = 0; t < 50; ++t) {
            const auto f = random_scalar_element(kF2, 2, 1 + static_cast<int>(rng.below(6)), rng);
            const TruncatedOperator op(f, 1, 4);
            const TruncatedOperator opstar(involute(f), 1, 4);
            d.anchor_gap = std::max(d.anchor_gap, std::abs(op.max_column_sum() - opstar.max_row_sum()));
            const auto a = compute_anchors(op);
            if (!(a.two <= std::sqrt(a.one * a.inf)))
                ++d.riesz_thorin_failures;
        }
        return d;
    }();
    return data;
}

Verdict anchor_duality()
{
    const auto d = duality_data();
    return {d.anchor_gap < 1e-12, "50 elements, max gap " + g(d.anchor_gap)};
}

Verdict riesz_thorin()
{
    const auto d = duality_data();
    return {d.riesz_thorin_failures == 0, std::to_string(d.riesz_thorin_failures) + " violations in 50"};
}

Verdict monotonicity()
{
    const auto r = monotonicity_scan(srw_element(kF2), {1.1, 1.25, 1.5, 2.0}, 8, options(42), 1e-6);
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < r.curve.size(); ++i) {
        detail += "p=" + g(r.curve[i].p) + ":[" + g(r.curve[i].lower) + "," + g(r.curve[i].upper) + "] ";
        if (i < r.pair_ok.size())
            ok = ok && r.pair_ok[i];
    }
    return {ok, detail};
}

Verdict tensor_power()
{
    Rng rng(606);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto f = random_scalar_element(kF2, 2, 1 + static_cast<int>(rng.below(4)), rng);
        VectorField xi;
        const int fiber = 1 + static_cast<int>(rng.below(2));
        const int atoms = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < atoms; ++i) {
            std::vector<Complex> v;
            for (int j = 0; j < fiber; ++j)
                v.emplace_back(rng.normal(), rng.normal());
            xi[random_element(kF2, 2, rng)] = v;
        }
        const double p = t % 2 == 0 ? 1.5 : 3.0;
        const auto r = tensor_power_check(f, xi, PExponent::of(p), 2, 4);
        worst = std::max({worst, r.eta_defect, r.identity_defect});
    }
    return {worst < 1e-10, "20 pairs, max defect " + g(worst)};
}

Verdict amplification()
{
    Rng rng(707);
    const auto swap = ActionSpec::swap(kF2);
    double worst_drop = 0.0, worst_p2 = 0.0;
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
        const auto f = t % 2 == 0 ? random_matrix_element(kF2, swap, 2, 3, rng) : random_scalar_element(kF2, 2, 4, rng);
        const auto a = amplification_check(f, {1, 4}, PExponent::of(1.5), 4, options(42 + t));
        worst_drop = std::max(worst_drop, a.lower[0] - a.lower[1]);
        ok = ok && a.lower[1] >= a.lower[0] - 1e-9;
        const auto b = amplification_check(f, {1, 4}, PExponent::of(2.0), 4, options(42 + t));
        worst_p2 = std::max(worst_p2, std::abs(b.lower[1] - b.lower[0]));
    }
    ok = ok && worst_p2 < 1e-9;
    return {ok, "p=1.5 max drop " + g(worst_drop) + ", p=2 max gap " + g(worst_p2)};
}

Verdict kahane()
{
    bool ok = true;
    double worst_z = 0.0;
    int direction_failures = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        const auto fam = gaussian_family(8, n, 1.5, 800 + n);
        const auto s = sample_rademacher(fam, 100000, 900 + n);
        for (double p : {1.5, 3.0}) {
            const double est = moment_ratio(s, p, 2.0);
            const double se = moment_ratio_standard_error(s.norms, p, 2.0);
            const double exact = exact_moment_ratio(fam, p, 2.0);
            const double z = se > 0.0 ? std::abs(est - exact) / se : (est == exact ? 0.0 : INFINITY);
            worst_z = std::max(worst_z, z);
            ok = ok && z <= 3.0;
            // power mean: ||X||_2 >= ||X||_p for p < 2 and <= for p > 2
            if (p < 2.0 ? est < 1.0 : est > 1.0)
                ++direction_failures;
        }
    }
    ok = ok && direction_failures == 0;
    return {ok, "n=2..10, max |z| " + g(worst_z) + ", direction failures " + std::to_string(direction_failures)};
}

Verdict entropy()
{
    const auto c = avez_entropy(Measure::srw(kF2), 12, 0, 42);
    const double target = 0.5 * std::log(3.0);
    bool nonincreasing = true;
    for (std::size_t i = 1; i < c.entropy_rate.size(); ++i)
        nonincreasing = nonincreasing && c.entropy_rate[i] <= c.entropy_rate[i - 1] + 1e-9;
    const double rel = std::abs(c.h_estimate - target) / target;
    const bool ok = c.n_exact == 12 && nonincreasing && rel <= 0.05 && c.entropy_rate[11] >= c.h_estimate;
    return {ok, "h=" + g(c.h_estimate) + " (" + c.extrapolation + "), rel err " + g(rel) + ", H_12/12=" +
                    g(c.entropy_rate[11])};
}

Verdict speed_check()
{
    const double s2 = speed(Measure::srw(GroupSpec::free(2)), 2000).speed;
    const double s3 = speed(Measure::srw(GroupSpec::free(3)), 2000).speed;
    return {std::abs(s2 - 0.5) <= 1e-3 && std::abs(s3 - 2.0 / 3.0) <= 1e-3, "F2 " + g(s2) + ", F3 " + g(s3)};
}

Verdict boundary()
{
    const auto mu = Measure::srw(kF2);
    const auto nu = harmonic_measure(mu);
    double first = 0.0;
    for (Letter x : free_letters(2))
        first = std::max(first, std::abs(nu.first(x) - 0.25));
    const double h = furstenberg_entropy(mu, nu);
    const double h2 = furstenberg_entropy(convolve_measure(mu, mu), nu);
    const double herr = std::abs(h - 0.5 * std::log(3.0));
    const double scale = std::abs(h2 - 2.0 * h);
    return {first <= 1e-12 && herr <= 1e-9 && scale <= 1e-10,
            "first-letter err " + g(first) + ", h err " + g(herr) + ", scaling err " + g(scale)};
}

Verdict xi()
{
    const auto nu = harmonic_measure(Measure::srw(kF2));
    const double e = xi_function(std::vector<Letter>{}, nu);
    double err1 = 0.0, err2 = 0.0;
    for (const auto& w : reduced_words(2, 1))
        err1 = std::max(err1, std::abs(xi_function(w, nu) - std::sqrt(3.0) / 2.0));
    for (const auto& w : reduced_words(2, 2))
        err2 = std::max(err2, std::abs(xi_function(w, nu) - 2.0 / 3.0));
    const auto gram = psd_gram_check(kF2, WeightFunction::xi_power(nu, 1.0), 2);
    return {e == 1.0 && err1 < 1e-10 && err2 < 1e-10 && gram.min_eigenvalue >= -1e-8,
            "Xi(e)=" + g(e) + ", len1 err " + g(err1) + ", len2 err " + g(err2) + ", Gram min eig " +
                g(gram.min_eigenvalue)};
}

Verdict weights()
{
    bool ok = true;
    for (auto [k, p] : std::vector<std::pair<int, double>>{{2, 2.0}, {2, 4.0}, {3, 2.0}}) {
        const double t = std::pow(2.0 * k - 1.0, -1.0 / p);
        ok = ok && weight_membership(WeightFunction::phi(std::nextafter(t, 0.0)), p, k).convergent;
        ok = ok && !weight_membership(WeightFunction::phi(t), p, k).convergent;
    }
    const double sum = weight_membership(WeightFunction::phi(0.5), 2.0, 2).partial_sums.back();
    const auto gram = psd_gram_check(kF2, WeightFunction::phi(0.5), 3);
    ok = ok && std::abs(sum - 5.0) <= 1e-9 && gram.min_eigenvalue >= -1e-8;
    return {ok, "sum " + g(sum) + ", Gram min eig " + g(gram.min_eigenvalue)};
}

Verdict gibbs()
{
    const auto mu = Measure::srw(kF2);
    const auto nu = harmonic_measure(mu);
    const std::vector<WeightFunction> ws = {WeightFunction::constant(), WeightFunction::omega(2.0),
                                            WeightFunction::xi_power(nu, -2.0)};
    double least = INFINITY;
    for (int n = 1; n <= 8; ++n)
        for (const auto& w : ws)
            least = std::min(least, gibbs_bound_check(mu, n, w).divergence);
    return {least >= 0.0, "uniform, omega_2, Xi^-2; min divergence " + g(least)};
}

Verdict criteria()
{
    const auto r = criteria_report(2, 0.5 * std::log(3.0), 0.5, 0.1, 4.0);
    const bool ok = r.ii_threshold && r.iii_threshold && std::abs(*r.ii_threshold - 10.986) <= 1e-3 &&
                    std::abs(*r.iii_threshold - 2.445) <= 1e-3 && r.ii_endpoint_residual <= 1e-12 &&
                    r.iii_endpoint_residual <= 1e-12;
    return {ok, "(ii) p < " + g(r.ii_threshold.value_or(NAN)) + ", (iii) p > " + g(r.iii_threshold.value_or(NAN)) +
                    ", residuals " + g(r.ii_endpoint_residual) + " " + g(r.iii_endpoint_residual)};
}

Verdict determinism()
{
    std::vector<RunConfig> configs;
    auto add = [&](const std::string& command, const std::function<void(RunConfig&)>& tweak) {
        RunConfig c;
        c.command = command;
        c.seed = 7;
        tweak(c);
        configs.push_back(c);
    };
    add("norm", [](RunConfig& c) {
        c.element = "srw";
        c.p = 1.5;
        c.radius = 6;
    });
    add("norm", [](RunConfig& c) {
        c.element = "srw";
        c.scan = {1.25, 2.0, 3.0};
        c.radius = 5;
    });
    add("entropy", [](RunConfig& c) {
        c.nmax = 8;
        c.mc_samples = 2000;
        c.mem_cap = 5000;
    });
    add("xi", [](RunConfig& c) { c.lengths = "0..10"; });
    add("criteria", [](RunConfig& c) {
        c.hx = 0.1;
        c.p = 4.0;
    });
    add("kahane", [](RunConfig& c) {
        c.p = 1.5;
        c.trials = 100000;
    });
    add("check", [](RunConfig&) {});
    int mismatches = 0;
    for (const auto& c : configs) {
        std::ostringstream a, b;
        const int sa = run(c, a);
        const int sb = run(c, b);
        if (sa != 0 || sa != sb || a.str() != b.str())
            ++mismatches;
    }
    return {mismatches == 0, std::to_string(configs.size()) + " commands, " + std::to_string(mismatches) +
                                 " mismatched or failed"};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        Verdict (*fn)();
    };
    const std::vector<Criterion> criteria_list = {
        {1, "identity norm", 1, identity_norm},
        {2, "Kesten value", 60, kesten},
        {3, "anchor duality", 10, anchor_duality},
        {4, "matrix Riesz-Thorin", 10, riesz_thorin},
        {5, "monotonicity scan", 120, monotonicity},
        {6, "tensor-power identity", 30, tensor_power},
        {7, "amplification direction", 60, amplification},
        {8, "Kahane lab", 30, kahane},
        {9, "entropy", 120, entropy},
        {10, "speed", 5, speed_check},
        {11, "boundary", 5, boundary},
        {12, "Xi function", 10, xi},
        {13, "weights", 10, weights},
        {14, "Gibbs", 10, gibbs},
        {15, "criteria", 1, criteria},
        {16, "determinism", 60, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria_list) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        const bool in_time = elapsed.count() < c.budget_s;
        const bool pass = v.ok && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d %s: %s; %.2fs of %.0fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), elapsed.count(), c.budget_s, in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria_list.size()) - failures,
                criteria_list.size());
    return failures == 0 ? 0 : 1;
}
