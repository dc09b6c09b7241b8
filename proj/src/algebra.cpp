#include "pfp/algebra.hpp"

#include <algorithm>

#include "pfp/errors.hpp"

namespace pfp {

SignedPerm SignedPerm::identity(int dim)
{
    SignedPerm u;
    u.perm.resize(static_cast<std::size_t>(dim));
    u.sign.assign(static_cast<std::size_t>(dim), 1);
    for (int i = 0; i < dim; ++i)
        u.perm[static_cast<std::size_t>(i)] = i;
    return u;
}

SignedPerm SignedPerm::swap()
{
    return SignedPerm{{1, 0}, {1, 1}};
}

bool SignedPerm::valid() const
{
    if (perm.size() != sign.size() || perm.empty())
        return false;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        const int p = perm[j];
        if (p < 0 || p >= dim() || seen[static_cast<std::size_t>(p)])
            return false;
        seen[static_cast<std::size_t>(p)] = true;
        if (sign[j] != 1 && sign[j] != -1)
            return false;
    }
    return true;
}

SignedPerm SignedPerm::operator*(const SignedPerm& rhs) const
{
    // (U V) e_j = sign_V[j] U e_{perm_V[j]}
    SignedPerm out;
    out.perm.resize(rhs.perm.size());
    out.sign.resize(rhs.perm.size());
    for (std::size_t j = 0; j < rhs.perm.size(); ++j) {
        const auto mid = static_cast<std::size_t>(rhs.perm[j]);
        out.perm[j] = perm[mid];
        out.sign[j] = rhs.sign[j] * sign[mid];
    }
    return out;
}

SignedPerm SignedPerm::inverse() const
{
    SignedPerm out;
    out.perm.resize(perm.size());
    out.sign.resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        const auto p = static_cast<std::size_t>(perm[j]);
        out.perm[p] = static_cast<int>(j);
        out.sign[p] = sign[j];
    }
    return out;
}

CMatrix SignedPerm::matrix() const
{
    CMatrix m = CMatrix::Zero(dim(), dim());
    for (int j = 0; j < dim(); ++j)
        m(perm[static_cast<std::size_t>(j)], j) = static_cast<double>(sign[static_cast<std::size_t>(j)]);
    return m;
}

CMatrix SignedPerm::conjugate(const CMatrix& m) const
{
    CMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            const auto si = static_cast<std::size_t>(i);
            const auto sj = static_cast<std::size_t>(j);
            out(perm[si], perm[sj]) = static_cast<double>(sign[si] * sign[sj]) * m(i, j);
        }
    return out;
}

namespace {

SignedPerm power(const SignedPerm& u, std::int64_t n)
{
    SignedPerm out = SignedPerm::identity(u.dim());
    for (std::int64_t i = 0; i < n; ++i)
        out = out * u;
    return out;
}

void validate_relations(const GroupSpec& spec, const std::vector<SignedPerm>& gens, std::size_t offset)
{
    switch (spec.kind()) {
    case GroupKind::free:
        return;
    case GroupKind::cyclic: {
        const auto& u = gens[offset];
        if (!(power(u, spec.order()) == SignedPerm::identity(u.dim())))
            throw StructuralError("action violates the relation a^" + std::to_string(spec.order()) + " = 1");
        return;
    }
    case GroupKind::product: {
        std::vector<std::pair<std::size_t, std::size_t>> ranges;
        std::size_t start = offset;
        for (const auto& f : spec.factors()) {
            validate_relations(f, gens, start);
            const auto count = static_cast<std::size_t>(f.generator_count());
            ranges.emplace_back(start, start + count);
            start += count;
        }
        for (std::size_t a = 0; a < ranges.size(); ++a)
            for (std::size_t b = a + 1; b < ranges.size(); ++b)
                for (auto i = ranges[a].first; i < ranges[a].second; ++i)
                    for (auto j = ranges[b].first; j < ranges[b].second; ++j)
                        if (!(gens[i] * gens[j] == gens[j] * gens[i]))
                            throw StructuralError("action generators of distinct product factors must commute");
        return;
    }
    }
}

SignedPerm unitary_of(const GroupSpec& spec, const std::vector<SignedPerm>& gens, std::size_t offset,
                      const GroupElement& g, int dim)
{
    switch (spec.kind()) {
    case GroupKind::free: {
        SignedPerm u = SignedPerm::identity(dim);
        for (Letter x : g.word) {
            const auto& gen = gens[offset + static_cast<std::size_t>(std::abs(x) - 1)];
            u = u * (x > 0 ? gen : gen.inverse());
        }
        return u;
    }
    case GroupKind::cyclic:
        return power(gens[offset], g.residue);
    case GroupKind::product: {
        SignedPerm u = SignedPerm::identity(dim);
        std::size_t start = offset;
        for (std::size_t i = 0; i < spec.factors().size(); ++i) {
            u = u * unitary_of(spec.factors()[i], gens, start, g.parts[i], dim);
            start += static_cast<std::size_t>(spec.factors()[i].generator_count());
        }
        return u;
    }
    }
    return SignedPerm::identity(dim);
}

} // namespace

ActionSpec ActionSpec::trivial(int dim)
{
    if (dim < 1)
        throw PreconditionError("coefficient dimension must be >= 1");
    ActionSpec a;
    a.dim_ = dim;
    a.trivial_ = true;
    return a;
}

ActionSpec ActionSpec::swap(const GroupSpec& spec)
{
    std::vector<SignedPerm> gens(static_cast<std::size_t>(spec.generator_count()), SignedPerm::swap());
    return from_generators(spec, std::move(gens));
}

ActionSpec ActionSpec::from_generators(const GroupSpec& spec, std::vector<SignedPerm> generators)
{
    if (generators.size() != static_cast<std::size_t>(spec.generator_count()))
        throw StructuralError("action needs one unitary per generator (" + std::to_string(spec.generator_count()) +
                              "), got " + std::to_string(generators.size()));
    if (generators.empty())
        throw StructuralError("action needs at least one generator");
    const int dim = generators.front().dim();
    bool all_identity = true;
    for (const auto& u : generators) {
        if (!u.valid() || u.dim() != dim)
            throw StructuralError("action generators must be signed permutations of a common dimension");
        all_identity = all_identity && u == SignedPerm::identity(dim);
    }
    validate_relations(spec, generators, 0);
    ActionSpec a;
    a.dim_ = dim;
    a.trivial_ = all_identity;
    if (!all_identity)
        a.generators_ = std::move(generators);
    return a;
}

SignedPerm ActionSpec::unitary(const GroupSpec& spec, const GroupElement& g) const
{
    if (trivial_)
        return SignedPerm::identity(dim_);
    return unitary_of(spec, generators_, 0, g, dim_);
}

CMatrix ActionSpec::act(const GroupSpec& spec, const GroupElement& g, const CMatrix& m) const
{
    if (trivial_)
        return m;
    return unitary(spec, g).conjugate(m);
}

AlgebraElement::AlgebraElement(GroupSpec spec, ActionSpec action) : spec_(std::move(spec)), action_(std::move(action))
{
}

AlgebraElement AlgebraElement::dirac(const GroupSpec& spec, const ActionSpec& action, const GroupElement& g,
                                     const CMatrix& coefficient)
{
    AlgebraElement f(spec, action);
    f.add(g, coefficient);
    return f;
}

AlgebraElement AlgebraElement::dirac(const GroupSpec& spec, const GroupElement& g, Complex c)
{
    AlgebraElement f(spec, ActionSpec::trivial(1));
    f.add(g, c);
    return f;
}

void AlgebraElement::add(const GroupElement& g, const CMatrix& c)
{
    if (!belongs(spec_, g))
        throw StructuralError("term does not belong to group " + spec_.to_string());
    if (c.rows() != dim() || c.cols() != dim())
        throw StructuralError("coefficient has shape " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                              ", expected " + std::to_string(dim()) + "x" + std::to_string(dim()));
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        if (!c.isZero(0.0))
            terms_.emplace(g, c);
        return;
    }
    it->second += c;
    if (it->second.isZero(0.0))
        terms_.erase(it);
}

void AlgebraElement::add(const GroupElement& g, Complex c)
{
    add(g, CMatrix::Identity(dim(), dim()) * c);
}

CMatrix AlgebraElement::at(const GroupElement& g) const
{
    const auto it = terms_.find(g);
    return it == terms_.end() ? CMatrix::Zero(dim(), dim()) : it->second;
}

int AlgebraElement::support_radius() const
{
    int r = 0;
    for (const auto& [g, c] : terms_)
        r = std::max(r, length(spec_, g));
    return r;
}

void AlgebraElement::check_compatible(const AlgebraElement& rhs, const char* op) const
{
    if (!(spec_ == rhs.spec_))
        throw StructuralError(std::string(op) + ": group mismatch (" + spec_.to_string() + " vs " +
                              rhs.spec_.to_string() + ")");
    if (!(action_ == rhs.action_))
        throw StructuralError(std::string(op) + ": action or coefficient dimension mismatch");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs)
{
    check_compatible(rhs, "add");
    for (const auto& [g, c] : rhs.terms_)
        add(g, c);
    return *this;
}

AlgebraElement AlgebraElement::operator*(Complex c) const
{
    AlgebraElement out(spec_, action_);
    for (const auto& [g, m] : terms_)
        out.add(g, CMatrix(m * c));
    return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g)
{
    f.check_compatible(g, "convolve");
    AlgebraElement out(f.spec(), f.action());
    for (const auto& [s, fs] : f.terms())
        for (const auto& [u, gu] : g.terms()) {
            // t = s u, so g(s^-1 t) = g(u)
            const CMatrix term = fs * f.action().act(f.spec(), s, gu);
            out.add(compose(f.spec(), s, u), term);
        }
    return out;
}

AlgebraElement involute(const AlgebraElement& f)
{
    AlgebraElement out(f.spec(), f.action());
    for (const auto& [u, m] : f.terms()) {
        const auto s = invert(f.spec(), u);
        out.add(s, f.action().act(f.spec(), s, m.adjoint()));
    }
    return out;
}

double spectral_norm(const CMatrix& m)
{
    if (m.size() == 1)
        return std::abs(m(0, 0));
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double l1_norm(const AlgebraElement& f)
{
    double total = 0.0;
    for (const auto& [g, m] : f.terms())
        total += spectral_norm(m);
    return total;
}

namespace {

ActionSpec action_from_json(const GroupSpec& spec, int dim, const nlohmann::json& j)
{
    if (j.is_null())
        return ActionSpec::trivial(dim);
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "trivial")
            return ActionSpec::trivial(dim);
        if (name == "swap") {
            if (dim != 2)
                throw StructuralError("the swap action needs dim = 2");
            return ActionSpec::swap(spec);
        }
        throw PreconditionError("unknown action '" + name + "'");
    }
    std::vector<SignedPerm> gens;
    for (const auto& g : j.at("generators")) {
        SignedPerm u;
        u.perm = g.at("perm").get<std::vector<int>>();
        u.sign = g.contains("sign") ? g.at("sign").get<std::vector<int>>() : std::vector<int>(u.perm.size(), 1);
        gens.push_back(std::move(u));
    }
    auto action = ActionSpec::from_generators(spec, std::move(gens));
    if (action.dim() != dim)
        throw StructuralError("action dimension does not match element dim");
    return action;
}

nlohmann::json action_to_json(const GroupSpec& spec, const ActionSpec& a)
{
    if (a.is_trivial())
        return "trivial";
    (void)spec;
    const bool all_swap = std::all_of(a.generators().begin(), a.generators().end(),
                                      [](const SignedPerm& u) { return u == SignedPerm::swap(); });
    if (all_swap)
        return "swap";
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& u : a.generators())
        gens.push_back({{"perm", u.perm}, {"sign", u.sign}});
    return {{"generators", gens}};
}

} // namespace

AlgebraElement element_from_json(const nlohmann::json& j)
{
    try {
        const auto spec = GroupSpec::parse(j.at("group").get<std::string>());
        const int dim = j.value("dim", 1);
        if (dim < 1)
            throw PreconditionError("dim must be >= 1");
        const auto action = action_from_json(spec, dim, j.contains("action") ? j.at("action") : nlohmann::json());
        AlgebraElement f(spec, action);
        for (const auto& t : j.at("terms")) {
            const auto g = parse_word(spec, t.at("word").get<std::string>());
            CMatrix c = CMatrix::Zero(dim, dim);
            const auto& re = t.at("re");
            const nlohmann::json im = t.contains("im") ? t.at("im") : nlohmann::json();
            if (dim == 1 && re.is_number()) {
                c(0, 0) = Complex(re.get<double>(), im.is_null() ? 0.0 : im.get<double>());
            } else {
                const auto re_v = re.get<std::vector<double>>();
                const auto im_v = im.is_null() ? std::vector<double>(re_v.size(), 0.0) : im.get<std::vector<double>>();
                const auto n = static_cast<std::size_t>(dim * dim);
                if (re_v.size() != n || im_v.size() != n)
                    throw StructuralError("matrix coefficients need re/im arrays of length dim^2 = " +
                                          std::to_string(n));
                for (int r = 0; r < dim; ++r)
                    for (int col = 0; col < dim; ++col) {
                        const auto k = static_cast<std::size_t>(r * dim + col);
                        c(r, col) = Complex(re_v[k], im_v[k]);
                    }
            }
            f.add(g, c);
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed element JSON: ") + e.what());
    }
}

nlohmann::json element_to_json(const AlgebraElement& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [g, c] : f.terms()) {
        nlohmann::json t;
        t["word"] = format_word(f.spec(), g);
        if (f.dim() == 1) {
            t["re"] = c(0, 0).real();
            t["im"] = c(0, 0).imag();
        } else {
            std::vector<double> re, im;
            for (int r = 0; r < f.dim(); ++r)
                for (int col = 0; col < f.dim(); ++col) {
                    re.push_back(c(r, col).real());
                    im.push_back(c(r, col).imag());
                }
            t["re"] = re;
            t["im"] = im;
        }
        terms.push_back(std::move(t));
    }
    return {{"group", f.spec().to_string()},
            {"dim", f.dim()},
            {"action", action_to_json(f.spec(), f.action())},
            {"terms", terms}};
}

} // namespace pfp
