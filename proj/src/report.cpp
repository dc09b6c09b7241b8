#include "pfp/report.hpp"

#include <cmath>

namespace pfp {

json number(double x)
{
    if (!std::isfinite(x))
        return nullptr;
    return x;
}

namespace {

json numbers(const std::vector<double>& xs)
{
    json out = json::array();
    for (double x : xs)
        out.push_back(number(x));
    return out;
}

json optional_number(const std::optional<double>& x)
{
    return x ? number(*x) : json(nullptr);
}

} // namespace

json report_json(const NormEstimate& e)
{
    return {
        {"p", number(e.p)},
        {"q", number(e.q)},
        {"lower", number(e.lower)},
        {"upper", number(e.upper)},
        {"radius", e.radius},
        {"method", e.methods},
        {"witness_seed", e.witness_seed},
        {"witness_restart", e.witness_restart},
        {"converged", e.converged},
        {"iterations", e.iterations},
    };
}

json report_json(const AnchorNorms& a)
{
    return {
        {"one", number(a.one)},
        {"two", number(a.two)},
        {"two_upper", number(a.two_upper)},
        {"inf", number(a.inf)},
        {"one_inf_exact", a.exact_one_inf},
        {"lanczos_iterations", a.lanczos_iterations},
        {"lanczos_converged", a.lanczos_converged},
    };
}

json report_json(const DualityReport& r)
{
    return {
        {"p", number(r.p)},
        {"q", number(r.q)},
        {"radius", r.radius},
        {"norm_f_p", number(r.norm_f_p)},
        {"norm_fstar_q", number(r.norm_fstar_q)},
        {"difference", number(r.difference)},
        {"anchor_one_f", number(r.one_f)},
        {"anchor_inf_fstar", number(r.inf_fstar)},
        {"anchor_inf_f", number(r.inf_f)},
        {"anchor_one_fstar", number(r.one_fstar)},
        {"anchor_difference", number(r.anchor_difference)},
    };
}

json report_json(const MonotonicityReport& r)
{
    json curve = json::array();
    for (const auto& e : r.curve)
        curve.push_back(report_json(e));
    return {
        {"radius", r.radius},
        {"curve", curve},
        {"pair_ok", r.pair_ok},
        {"anchor_one", number(r.one)},
        {"anchor_two", number(r.two)},
        {"anchor_inf", number(r.inf)},
        {"riesz_thorin_ok", r.riesz_thorin_ok},
        {"max_anchor_ok", r.max_anchor_ok},
        {"ok", r.ok},
    };
}

json report_json(const AmplificationReport& r)
{
    return {
        {"p", number(r.p)},
        {"radius", r.radius},
        {"dims", r.dims},
        {"lower", numbers(r.lower)},
        {"upper", numbers(r.upper)},
        {"ratio", numbers(r.ratio)},
        {"max_ratio", number(r.max_ratio)},
        {"direction_ok", r.direction_ok},
    };
}

json report_json(const TensorPowerReport& r)
{
    return {
        {"p", number(r.p)},
        {"power", r.power},
        {"eta_norm", number(r.eta_norm)},
        {"lhs", number(r.lhs)},
        {"rhs", number(r.rhs)},
        {"eta_defect", number(r.eta_defect)},
        {"identity_defect", number(r.identity_defect)},
    };
}

json report_json(const KahaneReport& r)
{
    json families = json::array();
    for (const auto& f : r.families) {
        json item = {
            {"family", f.name},
            {"n", f.n},
            {"k_p2", number(f.k_p2)},
            {"k_2p", number(f.k_2p)},
            {"k_p2_se", number(f.k_p2_se)},
            {"k_2p_se", number(f.k_2p_se)},
            {"direction_ok", f.direction_ok},
        };
        if (f.has_exact) {
            item["k_p2_exact"] = number(f.k_p2_exact);
            item["k_2p_exact"] = number(f.k_2p_exact);
        }
        families.push_back(item);
    }
    return {
        {"p", number(r.p)},
        {"trials", r.trials},
        {"families", families},
        {"max_k_p2", number(r.max_k_p2)},
        {"max_k_2p", number(r.max_k_2p)},
        {"c_p_estimate", number(r.product)},
        {"direction_ok", r.direction_ok},
    };
}

json report_json(const EntropyCurve& c)
{
    return {
        {"n", c.n},
        {"entropy", numbers(c.entropy)},
        {"entropy_rate", numbers(c.entropy_rate)},
        {"exact", c.exact},
        {"n_exact", c.n_exact},
        {"h_estimate", number(c.h_estimate)},
        {"extrapolation", c.extrapolation},
        {"h_fit", number(c.h_fit)},
        {"h_aitken_rate", number(c.h_aitken_rate)},
        {"h_aitken_increment", number(c.h_aitken_increment)},
        {"fekete_upper", number(c.fekete_upper)},
        {"monotone", c.monotone},
        {"monotonicity_defect", number(c.monotonicity_defect)},
        {"subadditive", c.subadditive},
        {"subadditivity_defect", number(c.subadditivity_defect)},
        {"monte_carlo", c.monte_carlo},
        {"mc_samples", c.mc_samples},
        {"warnings", c.warnings},
    };
}

json report_json(const SpeedReport& s)
{
    return {
        {"method", s.method},
        {"n", s.n},
        {"speed", number(s.speed)},
        {"raw", number(s.raw)},
        {"increment", number(s.increment)},
        {"aitken", number(s.aitken)},
        {"mean_length", numbers(s.mean_length)},
    };
}

json report_json(const MembershipReport& r)
{
    return {
        {"weight", r.weight},
        {"p", number(r.p)},
        {"k", r.k},
        {"convergent", r.convergent},
        {"ratio", number(r.ratio)},
        {"threshold", optional_number(r.threshold)},
        {"closed_form", optional_number(r.closed_form)},
        {"sum", number(r.partial_sums.back())},
        {"terms", r.partial_sums.size()},
        {"partial_sums", numbers(r.partial_sums)},
    };
}

json report_json(const GramReport& r)
{
    return {
        {"radius", r.radius},
        {"size", r.size},
        {"min_eigenvalue", number(r.min_eigenvalue)},
        {"max_eigenvalue", number(r.max_eigenvalue)},
        {"psd", r.psd},
    };
}

json report_json(const GibbsReport& r)
{
    return {
        {"n", r.n},
        {"weight", r.weight},
        {"support", r.support},
        {"entropy", number(r.entropy)},
        {"divergence", number(r.divergence)},
        {"log_normalizer", number(r.log_normalizer)},
        {"mean_log_weight", number(r.mean_log_weight)},
        {"bound", number(r.bound)},
        {"entropy_rate", number(r.entropy_rate)},
        {"tightness", number(r.tightness)},
        {"nonnegative", r.nonnegative},
    };
}

json report_json(const CriteriaReport& r)
{
    return {
        {"k", r.k},
        {"h", number(r.h)},
        {"speed", number(r.speed)},
        {"hx", number(r.hx)},
        {"p", number(r.p)},
        {"ii_holds", r.ii},
        {"iii_holds", r.iii},
        {"ii_p_below", optional_number(r.ii_threshold)},
        {"ii_all_p", !r.ii_threshold.has_value()},
        {"iii_p_above", optional_number(r.iii_threshold)},
        {"iii_never", !r.iii_threshold.has_value()},
        {"ii_endpoint_residual", number(r.ii_endpoint_residual)},
        {"iii_endpoint_residual", number(r.iii_endpoint_residual)},
        {"p0", number(r.p0)},
        {"p0_attained", r.p0_attained},
        {"both_lower", optional_number(r.both_lower)},
        {"both_upper", optional_number(r.both_upper)},
        {"both_nonempty", r.both_nonempty},
        {"crossing_hx", number(r.crossing_hx)},
        {"crossing_p", number(r.crossing_p)},
    };
}

json boundary_json(const BoundaryMeasure& nu, const Measure& mu)
{
    json first = json::object();
    json hitting = json::object();
    for (Letter x : free_letters(nu.rank())) {
        GroupElement g;
        g.word = {x};
        const auto label = format_word(mu.spec(), g);
        first[label] = number(nu.first(x));
        hitting[label] = number(nu.hitting(x));
    }
    return {
        {"first_letter", first},
        {"hitting", hitting},
        {"iterations", nu.iterations()},
        {"fixed_point_residual", number(nu.fixed_point_residual())},
        {"stationarity_residual", number(nu.stationarity_residual(mu))},
    };
}

} // namespace pfp
