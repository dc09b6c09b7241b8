#include "pfp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfp/errors.hpp"
#include "pfp/rng.hpp"

namespace pfp {

namespace {

// Quotients used as certified lower bounds are shifted down by a few ulps so
// that rounding in the norms cannot push them above the exact value.
double round_down(double x)
{
    return x * (1.0 - 16.0 * std::numeric_limits<double>::epsilon());
}

double dot_real(std::span<const Complex> a, std::span<const Complex> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (std::conj(a[i]) * b[i]).real();
    return s;
}

double l2(std::span<const Complex> a)
{
    double s = 0.0;
    for (const auto& x : a)
        s += std::norm(x);
    return std::sqrt(s);
}

// w = P T^* T P v
void normal_apply(const TruncatedOperator& op, std::size_t domain, std::span<const Complex> v,
                  std::vector<Complex>& tmp, std::span<Complex> w)
{
    op.apply(v, tmp, domain);
    op.apply_adjoint(tmp, w, domain);
}

double largest_tridiagonal_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta)
{
    const auto n = static_cast<Eigen::Index>(alpha.size());
    if (n == 1)
        return alpha[0];
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), n);
    Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(n - 1);
}

// Collatz-Wielandt bound on rho(|T|^T |T|) restricted to the domain, seeded with |y|.
double collatz_wielandt_upper(const TruncatedOperator& op, std::size_t domain, std::span<const Complex> y)
{
    const std::size_t n = op.vector_size();
    const std::size_t dom = domain * op.fiber();
    std::vector<double> x(n, 0.0), tmp(n, 0.0), mx(n, 0.0);
    double peak = 0.0;
    for (std::size_t i = 0; i < dom; ++i)
        peak = std::max(peak, std::abs(y[i]));
    if (peak == 0.0)
        peak = 1.0;
    for (std::size_t i = 0; i < dom; ++i)
        x[i] = std::abs(y[i]) / peak + 1e-9;
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 40; ++it) {
        op.apply_abs(x, tmp, domain);
        op.apply_abs_transpose(tmp, mx, domain);
        double ratio = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < dom; ++i) {
            ratio = std::max(ratio, mx[i] / x[i]);
            scale = std::max(scale, mx[i]);
        }
        best = std::min(best, ratio);
        if (scale == 0.0)
            break;
        // keep the iterate strictly positive on the domain
        for (std::size_t i = 0; i < dom; ++i)
            x[i] = mx[i] / scale + 1e-300;
    }
    return std::sqrt(best);
}

} // namespace

SpectralResult largest_singular_value(const TruncatedOperator& op, std::size_t domain, double tol, int max_iter,
                                      std::uint64_t seed)
{
    SpectralResult result;
    const std::size_t n = op.vector_size();
    const std::size_t dom = domain * op.fiber();
    if (op.is_zero() || dom == 0) {
        result.converged = true;
        result.vector.assign(n, Complex(0.0));
        return result;
    }

    auto start = [&] {
        std::vector<Complex> v(n, Complex(0.0));
        Rng rng(seed);
        for (std::size_t i = 0; i < dom; ++i)
            v[i] = rng.uniform(0.5, 1.5);
        const double norm = l2(v);
        for (auto& x : v)
            x /= norm;
        return v;
    };

    std::vector<double> alpha, beta;
    std::vector<Complex> v = start(), v_prev(n, Complex(0.0)), w(n), tmp(n);
    double theta = 0.0;
    int calm = 0;
    for (int j = 0; j < max_iter; ++j) {
        normal_apply(op, domain, v, tmp, w);
        const double a = dot_real(v, w);
        const double b_prev = beta.empty() ? 0.0 : beta.back();
        for (std::size_t i = 0; i < n; ++i)
            w[i] -= a * v[i] + b_prev * v_prev[i];
        alpha.push_back(a);
        const double b = l2(w);
        const double next = largest_tridiagonal_eigenvalue(alpha, beta);
        const bool breakdown = b <= 1e-14 * std::max(next, 1e-300);
        calm = (std::abs(next - theta) <= tol * std::max(next, 1e-300)) ? calm + 1 : 0;
        theta = next;
        result.iterations = j + 1;
        if (breakdown || calm >= 2) {
            result.converged = true;
            break;
        }
        beta.push_back(b);
        v_prev.swap(v);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / b;
    }
    result.sigma = std::sqrt(std::max(theta, 0.0));

    // Ritz vector: rerun the (deterministic) recurrence and accumulate.
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd coeffs = Eigen::VectorXd::Ones(1);
    if (k > 1) {
        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
        Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        coeffs = es.eigenvectors().col(k - 1);
    }
    std::vector<Complex> y(n, Complex(0.0));
    v = start();
    std::fill(v_prev.begin(), v_prev.end(), Complex(0.0));
    for (Eigen::Index j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            y[i] += coeffs(j) * v[i];
        if (j + 1 == k)
            break;
        normal_apply(op, domain, v, tmp, w);
        const double b_prev = j == 0 ? 0.0 : beta[static_cast<std::size_t>(j - 1)];
        for (std::size_t i = 0; i < n; ++i)
            w[i] -= alpha[static_cast<std::size_t>(j)] * v[i] + b_prev * v_prev[i];
        v_prev.swap(v);
        const double b = beta[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / b;
    }
    const double ynorm = l2(y);
    if (ynorm > 0.0)
        for (auto& x : y)
            x /= ynorm;
    op.apply(y, tmp, domain);
    result.rayleigh = ynorm > 0.0 ? round_down(l2(tmp) / l2(y)) : 0.0;
    result.upper = std::max(collatz_wielandt_upper(op, domain, y), result.rayleigh);
    result.vector = std::move(y);
    return result;
}

AnchorNorms compute_anchors(const TruncatedOperator& op, double tol)
{
    AnchorNorms a;
    a.one = op.max_column_sum();
    a.inf = op.max_row_sum();
    a.exact_one_inf = op.coefficient_dim() == 1;
    const auto spectral = largest_singular_value(op, op.points(), tol);
    a.two = spectral.rayleigh;
    a.two_upper = std::max(std::min(spectral.upper, std::sqrt(a.one * a.inf)), a.two);
    a.lanczos_iterations = spectral.iterations;
    a.lanczos_converged = spectral.converged;
    return a;
}

double pnorm_anchor(const TruncatedOperator& op, PExponent p, double tol)
{
    if (p.p() == 1.0)
        return op.max_column_sum();
    if (p.p() == kInfinity)
        return op.max_row_sum();
    if (p.p() == 2.0)
        return largest_singular_value(op, op.points(), tol).rayleigh;
    throw PreconditionError("pnorm_anchor needs p in {1, 2, inf}, got " + std::to_string(p.p()));
}

double interpolation_bound(double n_p0, double n_p1, double p0, double p1, double p)
{
    require(p0 >= 1.0 && p0 < p1, "interpolation needs 1 <= p0 < p1");
    require(p >= p0 && p <= p1, "interpolation target must lie in [p0, p1]");
    require(n_p0 >= 0.0 && n_p1 >= 0.0, "interpolated norms must be nonnegative");
    const double inv0 = 1.0 / p0;
    const double inv1 = p1 == kInfinity ? 0.0 : 1.0 / p1;
    const double inv = p == kInfinity ? 0.0 : 1.0 / p;
    const double theta = (inv0 - inv) / (inv0 - inv1);
    if (theta <= 0.0)
        return n_p0;
    if (theta >= 1.0)
        return n_p1;
    if (n_p0 == n_p1)
        return n_p0;
    return std::pow(n_p0, 1.0 - theta) * std::pow(n_p1, theta);
}

double anchor_upper_bound(const AnchorNorms& anchors, double l1, double p)
{
    double best = l1;
    best = std::min(best, interpolation_bound(anchors.one, anchors.inf, 1.0, kInfinity, p));
    if (p <= 2.0)
        best = std::min(best, interpolation_bound(anchors.one, anchors.two_upper, 1.0, 2.0, p));
    if (p >= 2.0)
        best = std::min(best, interpolation_bound(anchors.two_upper, anchors.inf, 2.0, kInfinity, p));
    return best;
}

namespace {

double rayleigh_quotient(const TruncatedOperator& op, std::span<const Complex> x, double p, std::size_t domain,
                         std::vector<Complex>& tmp)
{
    const double nx = lp_norm(x, op.fiber(), p);
    if (nx == 0.0)
        return 0.0;
    op.apply(x, tmp, domain);
    return round_down(lp_norm(tmp, op.fiber(), p) / nx);
}

struct RestartOutcome {
    double best = 0.0;
    std::vector<Complex> witness;
    int iterations = 0;
    bool converged = false;
};

RestartOutcome boyd_restart(const TruncatedOperator& op, std::vector<Complex> x, PExponent p, std::size_t domain,
                            const BoydOptions& options)
{
    RestartOutcome out;
    const std::size_t n = op.vector_size();
    const std::size_t fiber = op.fiber();
    std::vector<Complex> y(n), dual(n), z(n);
    if (normalize(x, fiber, p.p()) == 0.0)
        return out;
    double prev = -1.0;
    for (int it = 0; it < options.max_iter; ++it) {
        op.apply(x, y, domain);
        const double gamma = lp_norm(y, fiber, p.p());
        out.iterations = it + 1;
        if (gamma > out.best || out.witness.empty()) {
            out.best = gamma;
            out.witness = x;
        }
        if (std::abs(gamma - prev) <= options.tol * std::max(1.0, gamma)) {
            out.converged = true;
            break;
        }
        prev = gamma;
        if (gamma == 0.0) {
            out.converged = true;
            break;
        }
        duality_map(y, fiber, p.p(), dual);
        op.apply_adjoint(dual, z, domain);
        duality_map(z, fiber, p.q(), x);
        if (normalize(x, fiber, p.p()) == 0.0) {
            out.converged = true;
            break;
        }
    }
    return out;
}

std::vector<std::string> merge_methods(std::vector<std::string> a, const std::vector<std::string>& b)
{
    for (const auto& m : b)
        if (std::find(a.begin(), a.end(), m) == a.end())
            a.push_back(m);
    return a;
}

} // namespace

NormEstimate pnorm_boyd(const TruncatedOperator& op, PExponent p, const BoydOptions& options,
                        const AnchorNorms* anchors)
{
    require(p.p() > 1.0 && p.p() < kInfinity, "pnorm_boyd needs p in (1, inf); use pnorm_anchor at 1 and inf");
    require(options.max_iter >= 1 && options.tol > 0.0, "pnorm_boyd needs max_iter >= 1 and tol > 0");
    NormEstimate est;
    est.p = p.p();
    est.q = p.q();
    est.radius = op.radius();
    est.witness_seed = options.seed;
    const std::size_t n = op.vector_size();
    const std::size_t domain = op.exact_domain();
    const std::size_t dom = domain * op.fiber();
    if (op.is_zero()) {
        est.methods = {"zero"};
        est.converged = true;
        est.witness.assign(n, Complex(0.0));
        return est;
    }

    AnchorNorms local;
    if (!anchors) {
        local = compute_anchors(op);
        anchors = &local;
    }
    est.upper = anchor_upper_bound(*anchors, op.l1_norm(), p.p());
    est.methods = {"l1", "anchor-interpolation"};

    std::vector<Complex> tmp(n);
    auto consider = [&](std::vector<Complex> x, int restart, int iterations, bool converged) {
        const double rq = rayleigh_quotient(op, x, p.p(), domain, tmp);
        est.iterations += iterations;
        if (rq > est.lower || est.witness.empty()) {
            est.lower = rq;
            est.witness = std::move(x);
            est.witness_restart = restart;
            est.converged = converged;
        }
    };

    std::vector<std::vector<Complex>> starts;
    for (const auto& w : options.warm_starts) {
        require(w.size() == n, "warm start has the wrong size");
        std::vector<Complex> x(w);
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(dom), x.end(), Complex(0.0));
        starts.push_back(std::move(x));
    }
    const std::size_t warm = starts.size();

    if (p.p() == 2.0) {
        const auto spectral = largest_singular_value(op, domain, 1e-12, 1000, options.seed);
        est.methods.insert(est.methods.begin(), "lanczos-restricted");
        est.upper = std::min(est.upper, spectral.upper);
        consider(spectral.vector, static_cast<int>(warm), spectral.iterations, spectral.converged);
        for (std::size_t i = 0; i < warm; ++i) {
            normalize(starts[i], op.fiber(), 2.0);
            consider(std::move(starts[i]), static_cast<int>(i), 0, true);
        }
    } else {
        est.methods.insert(est.methods.begin(), "boyd-power");
        for (int r = 0; r < options.restarts; ++r) {
            std::vector<Complex> x(n, Complex(0.0));
            if (r == 0) {
                x[0] = 1.0;
            } else if (r == 1) {
                std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dom), Complex(1.0));
            } else {
                Rng rng = Rng::derived(options.seed, static_cast<std::uint64_t>(r));
                for (std::size_t i = 0; i < dom; ++i)
                    x[i] = static_cast<double>(rng.sign());
            }
            starts.push_back(std::move(x));
        }
        for (std::size_t i = 0; i < starts.size(); ++i) {
            auto outcome = boyd_restart(op, std::move(starts[i]), p, domain, options);
            if (!outcome.witness.empty())
                consider(std::move(outcome.witness), static_cast<int>(i), outcome.iterations, outcome.converged);
        }
    }

    if (est.lower > est.upper * (1.0 + 1e-12) + 1e-300)
        throw InvariantError("certified lower bound " + std::to_string(est.lower) + " exceeds upper bound " +
                             std::to_string(est.upper));
    // A gap below the rounding tolerance means both bounds found the same value.
    est.upper = std::max(est.upper, est.lower);
    return est;
}

NormEstimate pf_norm(const AlgebraElement& f, PExponent p, int radius, int amplification,
                     const BoydOptions& options)
{
    require(p.p() > 1.0 && p.p() < kInfinity, "pf_norm needs p in (1, inf)");
    const TruncatedOperator op(f, amplification, radius);
    const auto anchors = compute_anchors(op);
    auto est_p = pnorm_boyd(op, p, options, &anchors);
    if (p.p() == 2.0)
        return est_p;
    auto est_q = pnorm_boyd(op, p.conjugate(), options, &anchors);
    const double upper = std::max(est_p.upper, est_q.upper);
    const int iterations = est_p.iterations + est_q.iterations;
    const bool converged = est_p.converged && est_q.converged;
    auto methods = merge_methods(est_p.methods, est_q.methods);
    NormEstimate out = est_p.lower >= est_q.lower ? std::move(est_p) : std::move(est_q);
    out.p = p.p();
    out.q = p.q();
    out.upper = upper;
    out.iterations = iterations;
    out.converged = converged;
    out.methods = std::move(methods);
    return out;
}

std::vector<NormEstimate> radius_scan(const AlgebraElement& f, PExponent p, const std::vector<int>& radii,
                                      int amplification, const BoydOptions& options)
{
    require(std::is_sorted(radii.begin(), radii.end()), "radius_scan needs ascending radii");
    std::vector<NormEstimate> out;
    std::vector<Complex> previous;
    for (int r : radii) {
        const TruncatedOperator op(f, amplification, r);
        BoydOptions opts = options;
        if (!previous.empty()) {
            previous.resize(op.vector_size(), Complex(0.0));
            opts.warm_starts.push_back(previous);
        }
        auto est = pnorm_boyd(op, p, opts);
        previous = est.witness;
        out.push_back(std::move(est));
    }
    return out;
}

} // namespace pfp
