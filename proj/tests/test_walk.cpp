#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pfp/boundary.hpp"
#include "pfp/errors.hpp"
#include "pfp/measure.hpp"
#include "pfp/weights.hpp"

using namespace pfp;

TEST_CASE("measure validation")
{
    const auto f2 = GroupSpec::free(2);
    Measure::Masses bad;
    bad[identity(f2)] = 0.5;
    CHECK_THROWS_AS(Measure(f2, bad), PreconditionError);
    CHECK_THROWS_AS(Measure::alias(f2, "lazy:1.5"), PreconditionError);
    CHECK_THROWS_AS(Measure::alias(f2, "uniform"), PreconditionError);
    CHECK_THROWS_AS(require_nondegenerate(Measure::dirac(f2, parse_word(f2, "a"))), PreconditionError);
    const auto j = nlohmann::json::parse(R"({"terms":[{"word":"a","mass":0.5},{"word":"A","mass":0.5}]})");
    const auto mu = measure_from_json(f2, j);
    CHECK(mu.mass(parse_word(f2, "A")) == 0.5);
    CHECK_FALSE(mu.touches_every_direction());
    CHECK(Measure::srw(f2).touches_every_direction());
}

TEST_CASE("exact powers match path enumeration")
{
    for (int k : {2, 3}) {
        const auto mu = Measure::srw(GroupSpec::free(k));
        const int n_max = k == 2 ? 6 : 4;
        const auto powers = exact_powers(mu, n_max);
        for (int n = 1; n <= n_max; ++n) {
            const auto dist = oracle::srw_paths(k, n);
            double mean_length = 0.0;
            for (const auto& [w, m] : dist)
                mean_length += m * static_cast<double>(w.size());
            const auto i = static_cast<std::size_t>(n - 1);
            CHECK(powers.entropy[i] == doctest::Approx(oracle::entropy(dist)).epsilon(1e-12));
            CHECK(powers.mean_length[i] == doctest::Approx(mean_length).epsilon(1e-12));
            CHECK(powers.support[i] == dist.size());
        }
    }
}

TEST_CASE("second power of SRW on free(2)")
{
    const auto dist = power_distribution(Measure::srw(GroupSpec::free(2)), 2);
    // identity with mass 1/4 and twelve reduced words of length 2 with mass 1/16
    CHECK(dist.size() == 13);
    const double h2 = -0.25 * std::log(0.25) - 12.0 / 16.0 * std::log(1.0 / 16.0);
    CHECK(shannon_entropy(dist) == doctest::Approx(h2).epsilon(1e-14));
}

TEST_CASE("convolution of measures on a cyclic group")
{
    const auto c4 = GroupSpec::cyclic(4);
    const auto mu = Measure::srw(c4);
    const auto nu = convolve_measure(mu, mu);
    GroupElement two = identity(c4);
    two.residue = 2;
    CHECK(nu.mass(identity(c4)) == doctest::Approx(0.5));
    CHECK(nu.mass(two) == doctest::Approx(0.5));
    CHECK_THROWS_AS(convolve_measure(mu, Measure::srw(GroupSpec::cyclic(5))), StructuralError);
}

TEST_CASE("Avez entropy of SRW on free(2)")
{
    const auto curve = avez_entropy(Measure::srw(GroupSpec::free(2)), 12, 0, 42);
    CHECK(curve.n_exact == 12);
    CHECK(curve.monotone);
    CHECK(curve.subadditive);
    const double h = 0.5 * std::log(3.0);
    CHECK(std::abs(curve.h_estimate - h) <= 0.05 * h);
    CHECK(curve.fekete_upper >= curve.h_estimate);
}

TEST_CASE("Monte Carlo tail is flagged and kept out of the estimate")
{
    const auto mu = Measure::srw(GroupSpec::free(2));
    const auto exact = avez_entropy(mu, 6, 0, 1);
    const auto mixed = avez_entropy(mu, 8, 2000, 1, 2000);
    CHECK(mixed.monte_carlo);
    CHECK_FALSE(mixed.exact.back());
    CHECK_FALSE(mixed.warnings.empty());
    const auto again = avez_entropy(mu, 8, 2000, 1, 2000);
    CHECK(again.entropy == mixed.entropy);
    CHECK(exact.entropy.size() == 6);
}

TEST_CASE("speed by birth-death chain")
{
    CHECK(speed(Measure::srw(GroupSpec::free(2)), 2000).speed == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(speed(Measure::srw(GroupSpec::free(3)), 2000).speed == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    // the lazy walk moves a fraction (1 - q) of the time
    CHECK(speed(Measure::lazy(GroupSpec::free(2), 0.25), 4000).speed == doctest::Approx(0.375).epsilon(1e-3));
    // chain and exact powers agree on the first steps
    const auto chain = speed(Measure::srw(GroupSpec::free(2)), 6);
    const auto powers = exact_powers(Measure::srw(GroupSpec::free(2)), 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(chain.mean_length[i] == doctest::Approx(powers.mean_length[i]).epsilon(1e-12));
}

TEST_CASE("harmonic measure")
{
    const auto mu = Measure::srw(GroupSpec::free(2));
    const auto nu = harmonic_measure(mu);
    for (Letter x : free_letters(2)) {
        CHECK(std::abs(nu.first(x) - 0.25) <= 1e-12);
        CHECK(nu.hitting(x) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    CHECK(nu.stationarity_residual(mu) < 1e-13);
    // cylinder masses add up over the next letter
    const std::vector<Letter> w{1, 2};
    double children = 0.0;
    for (Letter x : free_letters(2))
        if (x != -2) {
            std::vector<Letter> v = w;
            v.push_back(x);
            children += nu.cylinder(v);
        }
    CHECK(children == doctest::Approx(nu.cylinder(w)).epsilon(1e-14));
}

TEST_CASE("harmonic measure of an asymmetric walk is stationary")
{
    const auto f2 = GroupSpec::free(2);
    Measure::Masses m;
    m[parse_word(f2, "a")] = 0.4;
    m[parse_word(f2, "A")] = 0.1;
    m[parse_word(f2, "b")] = 0.2;
    m[parse_word(f2, "B")] = 0.2;
    m[identity(f2)] = 0.1;
    const Measure mu(f2, m);
    const auto nu = harmonic_measure(mu);
    CHECK(nu.stationarity_residual(mu) < 1e-12);
    double total = 0.0;
    for (Letter x : free_letters(2))
        total += nu.first(x);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(harmonic_measure(Measure::srw(GroupSpec::cyclic(5))), PreconditionError);
}

TEST_CASE("Furstenberg entropy")
{
    const auto f2 = GroupSpec::free(2);
    const auto mu = Measure::srw(f2);
    const auto nu = harmonic_measure(mu);
    const double h = furstenberg_entropy(mu, nu);
    CHECK(std::abs(h - 0.5 * std::log(3.0)) < 1e-9);
    CHECK(std::abs(furstenberg_entropy(convolve_measure(mu, mu), nu) - 2.0 * h) < 1e-10);
    // the identity atom contributes nothing
    const auto lazy = Measure::lazy(f2, 0.4);
    CHECK(furstenberg_entropy(lazy, harmonic_measure(lazy)) == doctest::Approx(0.6 * h).epsilon(1e-12));
    // F_3: log(2k - 1) (k - 1) / k
    const auto mu3 = Measure::srw(GroupSpec::free(3));
    CHECK(furstenberg_entropy(mu3, harmonic_measure(mu3)) == doctest::Approx(std::log(5.0) * 2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Xi function")
{
    const auto mu = Measure::srw(GroupSpec::free(2));
    const auto nu = harmonic_measure(mu);
    CHECK(xi_function(std::vector<Letter>{}, nu) == 1.0);
    CHECK(std::abs(xi_function(std::vector<Letter>{1}, nu) - std::sqrt(3.0) / 2.0) < 1e-10);
    CHECK(std::abs(xi_function(std::vector<Letter>{1, 2}, nu) - 2.0 / 3.0) < 1e-10);
    for (int n = 0; n <= 5; ++n)
        for (const auto& w : reduced_words(2, n)) {
            CHECK(xi_function(w, nu) == doctest::Approx(xi_srw_closed_form(2, n)).epsilon(1e-12));
            CHECK(xi_function(w, nu) == doctest::Approx(xi_function_cylinders(w, nu)).epsilon(1e-12));
        }
    CHECK(reduced_words(2, 3).size() == 36);
}

TEST_CASE("Xi of an asymmetric walk: routes agree and Xi(s) = Xi(s^-1)")
{
    const auto f2 = GroupSpec::free(2);
    Measure::Masses m;
    m[parse_word(f2, "a")] = 0.35;
    m[parse_word(f2, "A")] = 0.15;
    m[parse_word(f2, "b")] = 0.3;
    m[parse_word(f2, "B")] = 0.2;
    const auto nu = harmonic_measure(Measure(f2, m));
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : reduced_words(2, n)) {
            std::vector<Letter> inv(w.rbegin(), w.rend());
            for (auto& x : inv)
                x = static_cast<Letter>(-x);
            const double v = xi_function(w, nu);
            CHECK(v == doctest::Approx(xi_function_cylinders(w, nu)).epsilon(1e-12));
            CHECK(v == doctest::Approx(xi_function(inv, nu)).epsilon(1e-12));
            CHECK(v <= 1.0);
        }
}

TEST_CASE("weight membership flips at the threshold")
{
    for (auto [k, p] : std::vector<std::pair<int, double>>{{2, 2.0}, {2, 4.0}, {3, 2.0}}) {
        const double t = std::pow(2.0 * k - 1.0, -1.0 / p);
        CHECK(weight_membership(WeightFunction::phi(std::nextafter(t, 0.0)), p, k).convergent);
        CHECK_FALSE(weight_membership(WeightFunction::phi(t), p, k).convergent);
        CHECK_FALSE(weight_membership(WeightFunction::phi(std::nextafter(t, 1.0)), p, k).convergent);
    }
    const auto r = weight_membership(WeightFunction::phi(0.5), 2.0, 2);
    // 1 + 4 sum_n 3^(n-1) 4^-n = 5
    CHECK(std::abs(r.partial_sums.back() - 5.0) < 1e-9);
    CHECK(*r.closed_form == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_FALSE(weight_membership(WeightFunction::omega(3.0), 2.0, 2).convergent);
}

TEST_CASE("Gram matrices of positive definite weights")
{
    const auto f2 = GroupSpec::free(2);
    CHECK(psd_gram_check(f2, WeightFunction::phi(0.5), 3).psd);
    const auto nu = harmonic_measure(Measure::srw(f2));
    CHECK(psd_gram_check(f2, WeightFunction::xi_power(nu, 1.0), 2).min_eigenvalue >= -1e-8);
    // (1 + L)^2 grows, so it is not positive definite
    CHECK_FALSE(psd_gram_check(f2, WeightFunction::omega(2.0), 2).psd);
}

TEST_CASE("relative entropy")
{
    CHECK(relative_entropy({0.5, 0.5}, {0.5, 0.5}) == 0.0);
    const double d = relative_entropy({0.7, 0.3}, {0.4, 0.6});
    CHECK(d == doctest::Approx(0.7 * std::log(0.7 / 0.4) + 0.3 * std::log(0.3 / 0.6)).epsilon(1e-14));
    CHECK_THROWS_AS(relative_entropy({0.5, 0.5}, {1.0, 0.0}), PreconditionError);
}

TEST_CASE("Gibbs bound")
{
    const auto mu = Measure::srw(GroupSpec::free(2));
    for (int n = 1; n <= 6; ++n)
        for (double alpha : {0.0, 1.0, 3.0}) {
            const auto g = gibbs_bound_check(mu, n, WeightFunction::omega(alpha));
            CHECK(g.divergence >= 0.0);
            // the divergence is the gap in the entropy bound
            CHECK(g.bound * n - g.entropy == doctest::Approx(g.divergence).epsilon(1e-9));
        }
}

TEST_CASE("criteria thresholds")
{
    const double h = 0.5 * std::log(3.0);
    const auto r = criteria_report(2, h, 0.5, 0.1, 4.0);
    CHECK(*r.ii_threshold == doctest::Approx(10.986).epsilon(1e-4));
    CHECK(*r.iii_threshold == doctest::Approx(2.445).epsilon(1e-4));
    CHECK(r.ii);
    CHECK(r.iii);
    CHECK(r.both_nonempty);
    CHECK(r.crossing_hx == doctest::Approx(std::log(3.0) / 4.0).epsilon(1e-14));
    CHECK(r.crossing_p == doctest::Approx(4.0).epsilon(1e-14));
    const auto none = criteria_report(2, h, 0.5, 0.0, 4.0);
    CHECK_FALSE(none.ii_threshold.has_value());
    const auto never = criteria_report(2, h, 0.5, 0.6, 4.0);
    CHECK_FALSE(never.iii_threshold.has_value());
    CHECK_FALSE(never.iii);
    CHECK_THROWS_AS(criteria_report(2, h, 0.5, 0.1, 1.5), PreconditionError);
}
