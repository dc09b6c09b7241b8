#include "pfp/norm_checks.hpp"

#include <algorithm>
#include <cmath>

#include "pfp/errors.hpp"

namespace pfp {

namespace {

double operator_value(const TruncatedOperator& op, PExponent p, const BoydOptions& options,
                      const AnchorNorms& anchors)
{
    if (p.p() == 1.0)
        return anchors.one;
    if (p.p() == kInfinity)
        return anchors.inf;
    return pnorm_boyd(op, p, options, &anchors).lower;
}

} // namespace

DualityReport transpose_dual_check(const AlgebraElement& f, PExponent p, int radius, const BoydOptions& options)
{
    DualityReport r;
    r.p = p.p();
    r.q = p.q();
    r.radius = radius;
    const TruncatedOperator tf(f, 1, radius);
    const TruncatedOperator tg(involute(f), 1, radius);
    const auto af = compute_anchors(tf);
    const auto ag = compute_anchors(tg);
    r.one_f = af.one;
    r.inf_f = af.inf;
    r.one_fstar = ag.one;
    r.inf_fstar = ag.inf;
    r.anchor_difference = std::max(std::abs(af.one - ag.inf), std::abs(af.inf - ag.one));
    r.norm_f_p = operator_value(tf, p, options, af);
    r.norm_fstar_q = operator_value(tg, p.conjugate(), options, ag);
    r.difference = std::abs(r.norm_f_p - r.norm_fstar_q);
    return r;
}

MonotonicityReport monotonicity_scan(const AlgebraElement& f, const std::vector<double>& ps, int radius,
                                     const BoydOptions& options, double tol)
{
    require(!ps.empty(), "monotonicity_scan needs at least one exponent");
    require(std::is_sorted(ps.begin(), ps.end()), "monotonicity_scan needs ascending exponents");
    require(ps.front() > 1.0 && ps.back() <= 2.0, "monotonicity_scan exponents must lie in (1, 2]");
    MonotonicityReport r;
    r.radius = radius;
    for (double p : ps)
        r.curve.push_back(pf_norm(f, PExponent::of(p), radius, 1, options));
    for (std::size_t i = 0; i + 1 < r.curve.size(); ++i)
        r.pair_ok.push_back(r.curve[i + 1].lower <= r.curve[i].upper + tol);

    const TruncatedOperator op(f, 1, radius);
    const auto anchors = compute_anchors(op);
    r.one = anchors.one;
    r.two = anchors.two;
    r.inf = anchors.inf;
    r.riesz_thorin_ok = anchors.two <= std::sqrt(anchors.one * anchors.inf) * (1.0 + 1e-12);
    r.max_anchor_ok = anchors.two <= std::max(anchors.one, anchors.inf) * (1.0 + 1e-12);
    r.ok = r.riesz_thorin_ok && r.max_anchor_ok &&
           std::all_of(r.pair_ok.begin(), r.pair_ok.end(), [](bool b) { return b; });
    return r;
}

AmplificationReport amplification_check(const AlgebraElement& f, const std::vector<int>& dims, PExponent p,
                                        int radius, const BoydOptions& options)
{
    require(!dims.empty(), "amplification_check needs at least one dimension");
    AmplificationReport r;
    r.p = p.p();
    r.radius = radius;
    const TruncatedOperator base(f, 1, radius);
    const auto base_est = pnorm_boyd(base, p, options);
    for (int m : dims) {
        require(m >= 1, "amplification dimension must be >= 1");
        double lower = base_est.lower;
        double upper = base_est.upper;
        if (m > 1) {
            const TruncatedOperator op(f, m, radius);
            BoydOptions opts = options;
            opts.warm_starts.push_back(
                embed_amplified(base_est.witness, base.points(), f.dim(), 1, m));
            const auto est = pnorm_boyd(op, p, opts);
            lower = est.lower;
            upper = est.upper;
        }
        r.dims.push_back(m);
        r.lower.push_back(lower);
        r.upper.push_back(upper);
        r.ratio.push_back(base_est.lower > 0.0 ? lower / base_est.lower : 1.0);
    }
    r.max_ratio = *std::max_element(r.ratio.begin(), r.ratio.end());
    r.direction_ok = std::all_of(r.lower.begin(), r.lower.end(),
                                 [&](double x) { return x >= base_est.lower - 1e-9; });
    return r;
}

VectorField convolve_field(const AlgebraElement& f, const VectorField& xi)
{
    require(f.dim() == 1, "convolve_field needs a scalar element");
    VectorField out;
    for (const auto& [g, c] : f.terms())
        for (const auto& [k, v] : xi) {
            auto& slot = out[compose(f.spec(), g, k)];
            if (slot.empty())
                slot.assign(v.size(), Complex(0.0));
            require(slot.size() == v.size(), "vector field fibers differ in size");
            for (std::size_t i = 0; i < v.size(); ++i)
                slot[i] += c(0, 0) * v[i];
        }
    return out;
}

double field_norm(const VectorField& xi, double p)
{
    std::vector<double> norms;
    norms.reserve(xi.size());
    for (const auto& [g, v] : xi) {
        double s = 0.0;
        for (const auto& x : v)
            s += std::norm(x);
        norms.push_back(std::sqrt(s));
    }
    const double peak = norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
    if (peak == 0.0 || p == kInfinity)
        return peak;
    long double sum = 0.0L;
    for (double r : norms)
        sum += std::pow(static_cast<long double>(r / peak), static_cast<long double>(p));
    return peak * static_cast<double>(std::pow(sum, 1.0L / static_cast<long double>(p)));
}

namespace {

// Tensor product of two fields on G1 x G2 (fibers multiply).
VectorField tensor_fields(const VectorField& a, const VectorField& b)
{
    VectorField out;
    for (const auto& [g, u] : a)
        for (const auto& [h, v] : b) {
            GroupElement pair;
            pair.parts = {g, h};
            std::vector<Complex> w(u.size() * v.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    w[i * v.size() + j] = u[i] * v[j];
            out.emplace(std::move(pair), std::move(w));
        }
    return out;
}

AlgebraElement tensor_elements(const AlgebraElement& a, const AlgebraElement& b)
{
    const auto spec = GroupSpec::product({a.spec(), b.spec()});
    AlgebraElement out(spec, ActionSpec::trivial(1));
    for (const auto& [g, c] : a.terms())
        for (const auto& [h, d] : b.terms()) {
            GroupElement pair;
            pair.parts = {g, h};
            out.add(pair, c(0, 0) * d(0, 0));
        }
    return out;
}

} // namespace

TensorPowerReport tensor_power_check(const AlgebraElement& f, VectorField xi, PExponent p, int power, int radius)
{
    require(f.dim() == 1 && f.action().is_trivial(), "tensor_power_check needs a scalar element with trivial action");
    require(power >= 2, "tensor_power_check needs power >= 2");
    require(!xi.empty(), "tensor_power_check needs a nonzero vector field");
    const auto& spec = f.spec();
    int xi_radius = 0;
    for (const auto& [g, v] : xi) {
        require(belongs(spec, g), "vector field element outside the group");
        xi_radius = std::max(xi_radius, length(spec, g));
    }
    require(radius >= f.support_radius() + xi_radius,
            "radius " + std::to_string(radius) + " does not cover supp(f) supp(xi); need " +
                std::to_string(f.support_radius() + xi_radius));

    const double n0 = field_norm(xi, p.p());
    require(n0 > 0.0, "tensor_power_check needs a nonzero vector field");
    for (auto& [g, v] : xi)
        for (auto& x : v)
            x /= n0;

    TensorPowerReport r;
    r.p = p.p();
    r.power = power;
    r.rhs = std::pow(field_norm(convolve_field(f, xi), p.p()), power);

    // Build x_m and eta_m on the iterated product G x ... x G.
    VectorField eta = xi;
    AlgebraElement xm = f;
    for (int i = 1; i < power; ++i) {
        eta = tensor_fields(eta, xi);
        xm = tensor_elements(xm, f);
    }
    r.eta_norm = field_norm(eta, p.p());
    r.lhs = field_norm(convolve_field(xm, eta), p.p());
    r.eta_defect = std::abs(r.eta_norm - 1.0);
    r.identity_defect = std::abs(r.lhs - r.rhs);
    return r;
}

} // namespace pfp
