#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "pfp/group.hpp"

namespace pfp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Signed permutation unitary: U e_j = sign[j] * e_{perm[j]}.
struct SignedPerm {
    std::vector<int> perm;
    std::vector<int> sign;

    static SignedPerm identity(int dim);
    static SignedPerm swap();

    int dim() const { return static_cast<int>(perm.size()); }
    bool valid() const;

    SignedPerm operator*(const SignedPerm& rhs) const;
    SignedPerm inverse() const;
    bool operator==(const SignedPerm&) const = default;

    CMatrix matrix() const;
    /// U M U^*.
    CMatrix conjugate(const CMatrix& m) const;
};

/// Homomorphism G -> signed permutation unitaries of C^d, given per generator.
class ActionSpec {
public:
    /// Trivial action on d x d matrices (d = 1 is the scalar case).
    static ActionSpec trivial(int dim);
    /// Every generator acts by the 2x2 coordinate swap.
    static ActionSpec swap(const GroupSpec& spec);
    /// Validates unitarity and the defining relations of `spec`.
    static ActionSpec from_generators(const GroupSpec& spec, std::vector<SignedPerm> generators);

    int dim() const { return dim_; }
    bool is_trivial() const { return trivial_; }
    const std::vector<SignedPerm>& generators() const { return generators_; }

    /// U_g, the unitary implementing alpha_g.
    SignedPerm unitary(const GroupSpec& spec, const GroupElement& g) const;
    /// alpha_g(m) = U_g m U_g^*.
    CMatrix act(const GroupSpec& spec, const GroupElement& g, const CMatrix& m) const;

    bool operator==(const ActionSpec&) const = default;

private:
    int dim_ = 1;
    bool trivial_ = true;
    std::vector<SignedPerm> generators_;
};

/// Finitely supported f : G -> M_d(C) with a G-action on the coefficients,
/// i.e. an element of l^1(G; A). Zero coefficients are never stored.
class AlgebraElement {
public:
    using Terms = std::map<GroupElement, CMatrix, ElementLess>;

    AlgebraElement(GroupSpec spec, ActionSpec action);

    static AlgebraElement dirac(const GroupSpec& spec, const ActionSpec& action, const GroupElement& g,
                                const CMatrix& coefficient);
    static AlgebraElement dirac(const GroupSpec& spec, const GroupElement& g, Complex c = 1.0);

    const GroupSpec& spec() const { return spec_; }
    const ActionSpec& action() const { return action_; }
    int dim() const { return action_.dim(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c to the coefficient at g, dropping the term if it becomes zero.
    void add(const GroupElement& g, const CMatrix& c);
    void add(const GroupElement& g, Complex c);

    /// Coefficient at g (zero matrix off the support).
    CMatrix at(const GroupElement& g) const;

    /// Largest word length in the support (0 for the zero element).
    int support_radius() const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement operator*(Complex c) const;

private:
    void check_compatible(const AlgebraElement& rhs, const char* op) const;

    GroupSpec spec_;
    ActionSpec action_;
    Terms terms_;

    friend AlgebraElement convolve(const AlgebraElement&, const AlgebraElement&);
};

/// (f * g)(t) = sum_s f(s) alpha_s(g(s^-1 t)).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);

/// f^*(s) = alpha_s(f(s^-1)^*).
AlgebraElement involute(const AlgebraElement& f);

/// sum_s ||f(s)||, spectral norm per coefficient.
double l1_norm(const AlgebraElement& f);

/// Spectral norm of a small complex matrix.
double spectral_norm(const CMatrix& m);

/// Element file format:
/// {"group":"free:2","dim":1,"action":"trivial","terms":[{"word":"aB","re":1.0,"im":0.0}]}
/// Matrix coefficients use row-major "re"/"im" arrays of length dim^2. "action" is
/// "trivial", "swap", or {"generators":[{"perm":[1,0],"sign":[1,1]}, ...]}.
AlgebraElement element_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const AlgebraElement& f);

} // namespace pfp
