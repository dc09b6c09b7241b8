#pragma once

// Test-side reference computations. They share no code with the library
// beyond the public types used to compare results.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Free reduction of a word over a..z / A..Z, where the inverse of a letter is its case swap.
inline std::string reduce(const std::string& w)
{
    std::string out;
    for (char c : w) {
        const char inv = std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                                     : static_cast<char>(std::tolower(c));
        if (!out.empty() && out.back() == inv)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

inline std::string inverse(const std::string& w)
{
    std::string out(w.rbegin(), w.rend());
    for (char& c : out)
        c = std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                        : static_cast<char>(std::tolower(c));
    return out;
}

inline std::vector<std::string> letters(int k)
{
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i < k; ++i)
        out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

// All reduced words of length <= r, by breadth-first extension.
inline std::vector<std::string> ball(int k, int r)
{
    std::vector<std::string> out{""};
    std::vector<std::string> frontier{""};
    for (int n = 1; n <= r; ++n) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (const auto& x : letters(k)) {
                const auto v = w + x;
                if (reduce(v) == v)
                    next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = next;
    }
    return out;
}

// Distribution of the simple random walk after n steps, by enumerating all (2k)^n paths.
inline std::map<std::string, double> srw_paths(int k, int n)
{
    std::map<std::string, double> dist{{"", 1.0}};
    const auto ls = letters(k);
    for (int step = 0; step < n; ++step) {
        std::map<std::string, double> next;
        for (const auto& [w, m] : dist)
            for (const auto& x : ls)
                next[reduce(w + x)] += m / ls.size();
        dist = next;
    }
    return dist;
}

inline double entropy(const std::map<std::string, double>& dist)
{
    double h = 0.0;
    for (const auto& [w, m] : dist)
        if (m > 0)
            h -= m * std::log(m);
    return h;
}

// Largest eigenvalue of the SRW Markov operator compressed to ball(r), by dense eigensolve.
inline double srw_ball_norm(int k, int r)
{
    const auto words = ball(k, r);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < words.size(); ++i)
        index[words[i]] = static_cast<int>(i);
    const auto n = static_cast<Eigen::Index>(words.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (const auto& x : letters(k)) {
            const auto it = index.find(reduce(words[i] + x));
            if (it != index.end())
                a(static_cast<Eigen::Index>(i), it->second) += 1.0 / (2.0 * k);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)));
}

// Max modulus of the discrete Fourier transform: the l^2 norm of a circulant.
inline double circulant_two_norm(const std::vector<std::complex<double>>& f)
{
    const double pi = 3.14159265358979323846;
    const auto n = f.size();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t t = 0; t < n; ++t)
            s += f[t] * std::polar(1.0, -2.0 * pi * static_cast<double>(j * t) / static_cast<double>(n));
        best = std::max(best, std::abs(s));
    }
    return best;
}

// (E X^q)^(1/q) / (E X^p)^(1/p) over all sign patterns of real vectors in l^r.
inline double exhaustive_ratio(const std::vector<std::vector<double>>& xs, double r, double p, double q)
{
    const std::size_t n = xs.size();
    const std::size_t dim = xs.front().size();
    long double mp = 0.0L, mq = 0.0L;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<double> s(dim, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                s[d] += ((mask >> i) & 1 ? -1.0 : 1.0) * xs[i][d];
        double norm = 0.0;
        for (double v : s)
            norm += std::pow(std::abs(v), r);
        norm = std::pow(norm, 1.0 / r);
        mp += std::pow(static_cast<long double>(norm), p);
        mq += std::pow(static_cast<long double>(norm), q);
    }
    const long double count = static_cast<long double>(std::size_t{1} << n);
    return static_cast<double>(std::pow(mq / count, 1.0L / q) / std::pow(mp / count, 1.0L / p));
}

} // namespace oracle
