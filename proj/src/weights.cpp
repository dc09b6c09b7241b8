#include "pfp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "pfp/errors.hpp"

namespace pfp {

WeightFunction WeightFunction::constant()
{
    return WeightFunction();
}

WeightFunction WeightFunction::phi(double beta)
{
    require(beta > 0.0 && beta < 1.0, "phi_beta needs beta in (0, 1)");
    WeightFunction w;
    w.kind_ = WeightKind::phi_beta;
    w.parameter_ = beta;
    return w;
}

WeightFunction WeightFunction::omega(double alpha)
{
    require(alpha >= 0.0, "omega_alpha needs alpha >= 0");
    WeightFunction w;
    w.kind_ = WeightKind::omega_alpha;
    w.parameter_ = alpha;
    return w;
}

WeightFunction WeightFunction::xi_power(BoundaryMeasure nu, double exponent)
{
    WeightFunction w;
    w.kind_ = WeightKind::xi_power;
    w.parameter_ = exponent;
    w.boundary_ = std::make_shared<const BoundaryMeasure>(std::move(nu));
    return w;
}

std::string WeightFunction::name() const
{
    std::ostringstream s;
    s.precision(17);
    switch (kind_) {
    case WeightKind::constant:
        return "uniform";
    case WeightKind::phi_beta:
        s << "phi_beta:" << parameter_;
        break;
    case WeightKind::omega_alpha:
        s << "omega_alpha:" << parameter_;
        break;
    case WeightKind::xi_power:
        s << "xi_power:" << parameter_;
        break;
    }
    return s.str();
}

double WeightFunction::radial_value(int n) const
{
    switch (kind_) {
    case WeightKind::constant:
        return 1.0;
    case WeightKind::phi_beta:
        return std::pow(parameter_, n);
    case WeightKind::omega_alpha:
        return std::pow(1.0 + n, parameter_);
    case WeightKind::xi_power:
        break;
    }
    throw PreconditionError("Xi powers are not radial in general");
}

double WeightFunction::value(const GroupSpec& spec, const GroupElement& g) const
{
    if (kind_ != WeightKind::xi_power)
        return radial_value(length(spec, g));
    require(spec.kind() == GroupKind::free && spec.rank() == boundary_->rank(),
            "Xi weights need the boundary's free group");
    return std::pow(xi_function(g.word, *boundary_), parameter_);
}

MembershipReport weight_membership(const WeightFunction& w, double p, int k)
{
    require(k >= 2, "weight membership needs free(k) with k >= 2");
    require(p >= 1.0 && std::isfinite(p), "weight membership needs finite p >= 1");
    require(w.radial(), "weight membership verdicts cover the radial weights (uniform, phi_beta, omega_alpha)");
    MembershipReport r;
    r.weight = w.name();
    r.p = p;
    r.k = k;
    const double growth = 2.0 * k - 1.0;
    switch (w.kind()) {
    case WeightKind::phi_beta: {
        const double beta = w.parameter();
        const double threshold = std::pow(growth, -1.0 / p);
        r.threshold = threshold;
        r.ratio = growth * std::pow(beta, p);
        // Same expression as the threshold, so the verdict flips exactly there.
        r.convergent = beta < threshold;
        if (r.convergent)
            r.closed_form = 1.0 + 2.0 * k * std::pow(beta, p) / (1.0 - r.ratio);
        break;
    }
    case WeightKind::omega_alpha:
    case WeightKind::constant:
        r.ratio = growth;
        r.convergent = false;
        break;
    case WeightKind::xi_power:
        break;
    }

    long double sum = 1.0L;
    r.partial_sums.push_back(1.0);
    const int max_terms = r.convergent ? 100000 : 40;
    for (int n = 1; n <= max_terms; ++n) {
        const long double sphere = 2.0L * k * std::pow(static_cast<long double>(growth), n - 1);
        const long double term = sphere * std::pow(static_cast<long double>(w.radial_value(n)), p);
        sum += term;
        r.partial_sums.push_back(static_cast<double>(sum));
        if (r.convergent && term < 1e-20L * sum)
            break;
    }
    return r;
}

GramReport psd_gram_check(const GroupSpec& spec, const WeightFunction& w, int radius)
{
    require(radius >= 0, "Gram check needs R >= 0");
    const BallIndex ball(spec, radius);
    require(ball.size() <= 4096, "Gram check needs |ball(R)| <= 4096 for a dense eigensolve");
    const auto n = static_cast<Eigen::Index>(ball.size());
    std::vector<GroupElement> elems;
    for (std::size_t i = 0; i < ball.size(); ++i)
        elems.push_back(ball.element(i));
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const auto g = compose(spec, invert(spec, elems[static_cast<std::size_t>(i)]),
                                   elems[static_cast<std::size_t>(j)]);
            gram(i, j) = gram(j, i) = w.value(spec, g);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    GramReport r;
    r.radius = radius;
    r.size = ball.size();
    r.min_eigenvalue = es.eigenvalues()(0);
    r.max_eigenvalue = es.eigenvalues()(n - 1);
    r.psd = r.min_eigenvalue >= -1e-8;
    return r;
}

namespace {

// r - 1 - log r >= 0, without cancellation near r = 1.
long double gibbs_gap(long double r)
{
    const long double u = r - 1.0L;
    if (std::abs(u) < 1e-2L) {
        // u^2/2 - u^3/3 + u^4/4 - ..., truncated well below double precision
        long double sum = 0.0L, power = u * u;
        for (int j = 2; j < 14; ++j) {
            sum += (j % 2 == 0 ? 1.0L : -1.0L) * power / j;
            power *= u;
        }
        return std::max(sum, 0.0L);
    }
    return std::max(u - std::log(r), 0.0L);
}

} // namespace

double relative_entropy(const std::vector<double>& m, const std::vector<double>& eta)
{
    require(m.size() == eta.size(), "relative_entropy needs vectors of equal length");
    long double total = 0.0L;
    for (std::size_t i = 0; i < m.size(); ++i) {
        require(m[i] >= 0.0 && eta[i] >= 0.0, "relative_entropy needs nonnegative vectors");
        if (m[i] == 0.0) {
            total += eta[i];
            continue;
        }
        require(eta[i] > 0.0, "relative_entropy: first measure is not absolutely continuous");
        total += static_cast<long double>(m[i]) * gibbs_gap(static_cast<long double>(eta[i]) / m[i]);
    }
    return static_cast<double>(total);
}

GibbsReport gibbs_bound_check(const Measure& mu, int n, const WeightFunction& w)
{
    require(n >= 1, "Gibbs check needs n >= 1");
    require_nondegenerate(mu);
    const auto& spec = mu.spec();
    const auto dist = power_distribution(mu, n);
    const BallIndex ball(spec, n * mu.support_radius());
    std::vector<double> m(ball.size(), 0.0), inv_weight(ball.size(), 0.0);
    for (const auto& [g, mass] : dist) {
        const auto i = ball.find(g);
        if (!i)
            throw InvariantError("convolution power escaped ball(r n)");
        m[*i] = mass;
    }
    long double z = 0.0L;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const double wv = w.value(spec, ball.element(i));
        require(wv > 0.0 && std::isfinite(wv), "weights must be positive and finite");
        inv_weight[i] = 1.0 / wv;
        z += inv_weight[i];
    }
    std::vector<double> eta(ball.size());
    long double mean_log = 0.0L;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        eta[i] = static_cast<double>(inv_weight[i] / z);
        if (m[i] > 0.0)
            mean_log -= static_cast<long double>(m[i]) * std::log(static_cast<long double>(inv_weight[i]));
    }
    GibbsReport r;
    r.n = n;
    r.weight = w.name();
    r.support = ball.size();
    r.entropy = shannon_entropy(dist);
    r.divergence = relative_entropy(m, eta);
    r.log_normalizer = static_cast<double>(std::log(z));
    r.mean_log_weight = static_cast<double>(mean_log);
    r.bound = (r.mean_log_weight + r.log_normalizer) / n;
    r.entropy_rate = r.entropy / n;
    r.tightness = r.entropy_rate > 0.0 ? r.bound / r.entropy_rate : 0.0;
    r.nonnegative = r.divergence >= 0.0;
    return r;
}

CriteriaReport criteria_report(int k, double h, double speed, double hx, double p)
{
    require(k >= 2, "criteria need k >= 2");
    require(h > 0.0 && std::isfinite(h), "criteria need h > 0");
    require(speed > 0.0 && std::isfinite(speed), "criteria need speed > 0");
    require(hx >= 0.0 && std::isfinite(hx), "criteria need h_X >= 0");
    require(p >= 2.0 && std::isfinite(p), "criteria need finite p >= 2");
    CriteriaReport r;
    r.k = k;
    r.h = h;
    r.speed = speed;
    r.hx = hx;
    r.p = p;
    const double growth = std::log(2.0 * k - 1.0);
    r.ii = hx < (2.0 / p) * h;
    r.iii = hx < h - (2.0 * growth / p) * speed;
    if (hx > 0.0) {
        const double t = 2.0 * h / hx;
        r.ii_threshold = t;
        r.ii_endpoint_residual = std::abs((2.0 / t) * h - hx);
    }
    if (h > hx) {
        const double t = 2.0 * speed * growth / (h - hx);
        r.iii_threshold = t;
        r.iii_endpoint_residual = std::abs(h - (2.0 * growth / t) * speed - hx);
    }
    const double t0 = 2.0 * speed * growth / h;
    r.p0 = std::max(2.0, t0);
    r.p0_attained = t0 < 2.0;
    if (r.iii_threshold) {
        r.both_lower = std::max(2.0, *r.iii_threshold);
        r.both_upper = r.ii_threshold;
        r.both_nonempty = !r.both_upper || *r.both_lower < *r.both_upper;
    }
    r.crossing_hx = h * h / (h + speed * growth);
    r.crossing_p = 2.0 * (h + speed * growth) / h;
    return r;
}

} // namespace pfp
