#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pfp/errors.hpp"
#include "pfp/estimators.hpp"
#include "pfp/norm_checks.hpp"
#include "pfp/rng.hpp"
#include "pfp/sampling.hpp"

using namespace pfp;

namespace {

AlgebraElement srw_element(const GroupSpec& spec)
{
    AlgebraElement f(spec, ActionSpec::trivial(1));
    const int k = spec.generator_count();
    for (int i = 0; i < k; ++i)
        for (bool inv : {false, true})
            f.add(generator(spec, i, inv), Complex(1.0 / (2.0 * k), 0.0));
    return f;
}

BoydOptions quick(std::uint64_t seed = 42)
{
    BoydOptions o;
    o.seed = seed;
    o.tol = 1e-10;
    o.max_iter = 2000;
    return o;
}

} // namespace

TEST_CASE("conjugate exponents")
{
    for (double p : {1.0, 1.1, 1.5, 2.0, 3.0, 7.25, kInfinity}) {
        const auto e = PExponent::of(p);
        const double sum = (e.p() == kInfinity ? 0.0 : 1.0 / e.p()) + (e.q() == kInfinity ? 0.0 : 1.0 / e.q());
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(e.conjugate().conjugate().p() == e.p());
        CHECK(e.conjugate().conjugate().q() == e.q());
    }
    CHECK_THROWS_AS(PExponent::of(0.5), PreconditionError);
}

TEST_CASE("Hoelder equality for the duality map")
{
    Rng rng(4);
    std::vector<Complex> v(12);
    for (auto& x : v)
        x = Complex(rng.normal(), rng.normal());
    for (double p : {1.3, 2.0, 4.5}) {
        std::vector<Complex> d(v.size());
        duality_map(v, 2, p, d);
        const double q = p / (p - 1.0);
        double pairing = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            pairing += std::real(std::conj(d[i]) * v[i]);
        CHECK(pairing == doctest::Approx(lp_norm(v, 2, p) * lp_norm(d, 2, q)).epsilon(1e-12));
    }
}

TEST_CASE("identity element has norm one")
{
    const auto spec = GroupSpec::free(2);
    const auto delta = AlgebraElement::dirac(spec, identity(spec));
    for (double p : {1.2, 1.5, 2.0, 3.0}) {
        const auto e = pf_norm(delta, PExponent::of(p), 4, 1, quick());
        CHECK(std::abs(e.lower - 1.0) <= 1e-12);
        CHECK(std::abs(e.upper - 1.0) <= 1e-12);
    }
}

TEST_CASE("p = 2 brackets the dense eigensolver on balls")
{
    const auto spec = GroupSpec::free(2);
    const auto f = srw_element(spec);
    for (int r = 2; r <= 5; ++r) {
        const auto e = pf_norm(f, PExponent::of(2.0), r, 1, quick());
        // witnesses live on ball(R - 1), so the value sits between the two compressions
        CHECK(e.lower <= oracle::srw_ball_norm(2, r) + 1e-10);
        CHECK(e.lower >= oracle::srw_ball_norm(2, r - 1) - 1e-10);
        CHECK(e.upper >= e.lower);
    }
}

TEST_CASE("circulants: p = 2 norm is the largest Fourier coefficient")
{
    const auto spec = GroupSpec::cyclic(7);
    Rng rng(12);
    for (int t = 0; t < 5; ++t) {
        std::vector<Complex> coeffs(7);
        AlgebraElement f(spec, ActionSpec::trivial(1));
        for (int j = 0; j < 7; ++j) {
            coeffs[static_cast<std::size_t>(j)] = Complex(rng.normal(), rng.normal());
            GroupElement g = identity(spec);
            g.residue = j;
            f.add(g, coeffs[static_cast<std::size_t>(j)]);
        }
        // support radius 3 and R = 6 put the whole group inside the exact domain
        const auto e = pf_norm(f, PExponent::of(2.0), 6, 1, quick());
        const double expect = oracle::circulant_two_norm(coeffs);
        CHECK(e.lower == doctest::Approx(expect).epsilon(1e-9));
        CHECK(e.upper >= expect * (1 - 1e-12));
    }
}

TEST_CASE("nonnegative circulants have norm sum f at every p")
{
    const auto spec = GroupSpec::cyclic(5);
    Rng rng(13);
    AlgebraElement f(spec, ActionSpec::trivial(1));
    double total = 0.0;
    for (int j = 0; j < 5; ++j) {
        const double m = rng.uniform(0.1, 1.0);
        total += m;
        GroupElement g = identity(spec);
        g.residue = j;
        f.add(g, Complex(m, 0.0));
    }
    for (double p : {1.25, 1.5, 3.0}) {
        const auto e = pf_norm(f, PExponent::of(p), 4, 1, quick());
        CHECK(e.lower == doctest::Approx(total).epsilon(1e-9));
        CHECK(e.upper == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("SRW estimates stay below the l^p value on the free group")
{
    const auto spec = GroupSpec::free(2);
    const auto f = srw_element(spec);
    for (double p : {1.25, 1.5, 2.0}) {
        const double q = p / (p - 1.0);
        const double exact = (std::pow(3.0, 1.0 / p) + std::pow(3.0, 1.0 / q)) / 4.0;
        const auto e = pf_norm(f, PExponent::of(p), 6, 1, quick());
        CHECK(e.lower <= exact + 1e-12);
        CHECK(e.lower <= e.upper);
    }
}

TEST_CASE("anchors and interpolation")
{
    CHECK(interpolation_bound(1.0, 4.0, 1.0, kInfinity, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(interpolation_bound(3.0, 5.0, 1.0, 2.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(interpolation_bound(3.0, 5.0, 1.0, 2.0, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(interpolation_bound(1.0, 1.0, 2.0, 1.0, 1.5), PreconditionError);

    const auto spec = GroupSpec::free(2);
    Rng rng(30);
    for (int t = 0; t < 10; ++t) {
        const auto f = random_scalar_element(spec, 2, 4, rng);
        const TruncatedOperator op(f, 1, 4);
        const auto a = compute_anchors(op);
        CHECK(a.two <= std::sqrt(a.one * a.inf) * (1 + 1e-12));
        CHECK(a.two <= a.two_upper);
        CHECK(a.one <= l1_norm(f) * (1 + 1e-12));
        CHECK(a.inf <= l1_norm(f) * (1 + 1e-12));
    }
}

TEST_CASE("transpose duality of anchors")
{
    const auto spec = GroupSpec::free(2);
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        const auto f = random_scalar_element(spec, 2, 5, rng);
        const auto r = transpose_dual_check(f, PExponent::of(1.5), 4, quick());
        CHECK(r.anchor_difference < 1e-12);
    }
}

TEST_CASE("monotonicity scan for SRW")
{
    const auto f = srw_element(GroupSpec::free(2));
    const auto r = monotonicity_scan(f, {1.1, 1.25, 1.5, 2.0}, 5, quick());
    CHECK(r.ok);
    CHECK(r.riesz_thorin_ok);
    for (bool b : r.pair_ok)
        CHECK(b);
}

TEST_CASE("amplification: direction at p = 1.5, isometry at p = 2")
{
    const auto spec = GroupSpec::free(2);
    Rng rng(32);
    for (int t = 0; t < 3; ++t) {
        const auto f = random_matrix_element(spec, ActionSpec::swap(spec), 1, 3, rng);
        const auto r15 = amplification_check(f, {1, 3}, PExponent::of(1.5), 3, quick());
        CHECK(r15.direction_ok);
        const auto r2 = amplification_check(f, {1, 3}, PExponent::of(2.0), 3, quick());
        CHECK(std::abs(r2.lower[1] - r2.lower[0]) < 1e-9);
    }
}

TEST_CASE("tensor power identity")
{
    const auto spec = GroupSpec::free(2);
    Rng rng(33);
    for (double p : {1.5, 3.0}) {
        const auto f = random_scalar_element(spec, 1, 3, rng);
        VectorField xi;
        for (int i = 0; i < 3; ++i)
            xi[random_element(spec, 1, rng)] = {Complex(rng.normal(), rng.normal()), Complex(rng.normal(), 0.0)};
        const auto r = tensor_power_check(f, xi, PExponent::of(p), 2, 2);
        CHECK(r.eta_defect < 1e-10);
        CHECK(r.identity_defect < 1e-10);
    }
}

TEST_CASE("radius scan is nondecreasing and deterministic")
{
    const auto f = srw_element(GroupSpec::free(2));
    const auto a = radius_scan(f, PExponent::of(1.5), {2, 3, 4, 5}, 1, quick());
    const auto b = radius_scan(f, PExponent::of(1.5), {2, 3, 4, 5}, 1, quick());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lower == b[i].lower);
        if (i > 0)
            CHECK(a[i].lower >= a[i - 1].lower - 1e-12);
    }
}

TEST_CASE("precondition failures")
{
    const auto spec = GroupSpec::free(2);
    const auto f = srw_element(spec);
    CHECK_THROWS_AS(pf_norm(f, PExponent::of(1.0), 4, 1, quick()), PreconditionError);
    CHECK_THROWS_AS(TruncatedOperator(f, 0, 4), PreconditionError);
    const auto zero = AlgebraElement(spec, ActionSpec::trivial(1));
    const auto e = pf_norm(zero, PExponent::of(1.5), 3, 1, quick());
    CHECK(e.lower == 0.0);
    CHECK(e.upper == 0.0);
}
