#pragma once

#include <span>
#include <vector>

#include "pfp/measure.hpp"

namespace pfp {

/// Harmonic measure of a nearest-neighbor walk on free(k), on the space of
/// infinite reduced words.
///
/// With F(x) the probability of ever hitting the letter x from e,
///     nu(C_w) = F(w_1) ... F(w_n) (1 - nu(C_{w_n^-1})),
/// and the first-letter masses solve nu_x = F(x)(1 - nu_{x^-1}).
class BoundaryMeasure {
public:
    BoundaryMeasure(int rank, std::vector<double> hitting, int iterations, double residual);

    int rank() const { return rank_; }
    /// F(x).
    double hitting(Letter x) const { return hitting_[index(x)]; }
    /// nu(C_x).
    double first(Letter x) const { return first_[index(x)]; }

    /// nu(C_w) for a reduced word (1 for the empty word).
    double cylinder(std::span<const Letter> w) const;
    /// nu(g C_w) for reduced g and nonempty reduced w.
    double translated(std::span<const Letter> g, std::span<const Letter> w) const;

    /// max over letters x of |sum_s mu(s) nu(s^-1 C_x) - nu(C_x)|.
    double stationarity_residual(const Measure& mu) const;

    int iterations() const { return iterations_; }
    /// Residual of the hitting-probability fixed point.
    double fixed_point_residual() const { return residual_; }

private:
    std::size_t index(Letter x) const
    {
        return x > 0 ? static_cast<std::size_t>(x - 1) : static_cast<std::size_t>(rank_ - x - 1);
    }

    int rank_;
    std::vector<double> hitting_;
    std::vector<double> first_;
    int iterations_;
    double residual_;
};

/// Solves the first-passage identities by monotone fixed-point iteration from 0.
/// Needs a nearest-neighbor measure on free(k), k >= 2, charging all 2k letters.
BoundaryMeasure harmonic_measure(const Measure& mu);

/// All reduced words of a given length over free(k), in ball order.
std::vector<std::vector<Letter>> reduced_words(int rank, int length);

/// h_mu(X, nu) = -sum_s mu(s) sum_C nu(C) log(nu(s C) / nu(C)), C over cylinders of
/// depth |s| + 1 (where the derivative d(s^-1 nu)/d nu is constant). Any finitely
/// supported mu on free(k) is accepted; nu is usually harmonic for mu or a root of it.
double furstenberg_entropy(const Measure& mu, const BoundaryMeasure& nu);

/// Xi(s) = <1, pi(s) 1> = integral of sqrt(d(s nu)/d nu), summed exactly over the
/// regions where the derivative is constant. Xi(e) = 1.
double xi_function(std::span<const Letter> s, const BoundaryMeasure& nu);

/// Same value as a plain sum of sqrt(nu(C) nu(s^-1 C)) over cylinders of depth |s| + 1.
double xi_function_cylinders(std::span<const Letter> s, const BoundaryMeasure& nu);

/// (1 + n (k - 1) / k) (2k - 1)^(-n/2), the simple random walk value at length n.
double xi_srw_closed_form(int rank, int length);

} // namespace pfp
