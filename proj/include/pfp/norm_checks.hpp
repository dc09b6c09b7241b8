#pragma once

#include <map>
#include <vector>

#include "pfp/algebra.hpp"
#include "pfp/estimators.hpp"

namespace pfp {

/// Compares T_f at p with T_{f*} at q on the same ball.
struct DualityReport {
    double p = 2.0;
    double q = 2.0;
    int radius = 0;
    double norm_f_p = 0.0;       // lower bound for T_f at p (anchor value at p = 1, inf)
    double norm_fstar_q = 0.0;   // lower bound for T_{f*} at q
    double difference = 0.0;
    // anchors: column sums of T_f against row sums of T_{f*} and vice versa
    double one_f = 0.0;
    double inf_fstar = 0.0;
    double inf_f = 0.0;
    double one_fstar = 0.0;
    double anchor_difference = 0.0;
};

DualityReport transpose_dual_check(const AlgebraElement& f, PExponent p, int radius, const BoydOptions& options);

struct MonotonicityReport {
    int radius = 0;
    std::vector<NormEstimate> curve;  // PF estimates max(N_p, N_q) at each p
    std::vector<bool> pair_ok;        // lower(p_{i+1}) <= upper(p_i) + tol
    double one = 0.0;
    double two = 0.0;
    double inf = 0.0;
    bool riesz_thorin_ok = false;     // ||T||_2 <= sqrt(||T||_1 ||T||_inf)
    bool max_anchor_ok = false;       // ||T||_2 <= max(||T||_1, ||T||_inf)
    bool ok = false;
};

/// `ps` must be ascending in (1, 2].
MonotonicityReport monotonicity_scan(const AlgebraElement& f, const std::vector<double>& ps, int radius,
                                     const BoydOptions& options, double tol = 1e-6);

struct AmplificationReport {
    double p = 2.0;
    int radius = 0;
    std::vector<int> dims;
    std::vector<double> lower;   // estimate of ||T (x) I_m||_p per m
    std::vector<double> upper;
    std::vector<double> ratio;   // lower(m) / lower(1)
    double max_ratio = 1.0;
    bool direction_ok = false;   // lower(m) >= lower(1) - 1e-9 for all m
};

/// Estimates the amplified operator for each m; every m > 1 run is warm-started
/// with the m = 1 witness embedded as xi (x) e_1.
AmplificationReport amplification_check(const AlgebraElement& f, const std::vector<int>& dims, PExponent p,
                                        int radius, const BoydOptions& options);

/// Finitely supported xi : G -> C^N.
using VectorField = std::map<GroupElement, std::vector<Complex>, ElementLess>;

struct TensorPowerReport {
    double p = 2.0;
    int power = 2;
    double eta_norm = 0.0;        // ||eta_m||_p, should be 1
    double lhs = 0.0;             // ||x_m eta_m||_p on G^m
    double rhs = 0.0;             // ||lambda(f) xi||_p^m
    double eta_defect = 0.0;
    double identity_defect = 0.0;
};

/// lambda(f) xi for a scalar f, computed by the defining sum.
VectorField convolve_field(const AlgebraElement& f, const VectorField& xi);

/// l^p norm of a field with the Hilbert norm on each fiber.
double field_norm(const VectorField& xi, double p);

/// Builds eta_m = xi^(x)m on G^m and x_m = f^(x)m, normalizing xi first, and
/// compares ||x_m eta_m|| with ||lambda(f) xi||^m. `radius` must cover
/// supp(f) supp(xi).
TensorPowerReport tensor_power_check(const AlgebraElement& f, VectorField xi, PExponent p, int power, int radius);

} // namespace pfp
