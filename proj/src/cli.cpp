#include "pfp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pfp/boundary.hpp"
#include "pfp/errors.hpp"
#include "pfp/report.hpp"
#include "pfp/rng.hpp"
#include "pfp/suite.hpp"
#include "pfp/weights.hpp"

#ifndef PFP_VERSION
#define PFP_VERSION "0.0.0"
#endif

namespace pfp {

namespace {

// Restores the process-wide element cap on scope exit.
class CapGuard {
public:
    explicit CapGuard(std::optional<std::size_t> cap) : saved_(element_cap())
    {
        if (cap)
            set_element_cap(*cap);
    }
    ~CapGuard() { set_element_cap(saved_); }
    CapGuard(const CapGuard&) = delete;
    CapGuard& operator=(const CapGuard&) = delete;

private:
    std::size_t saved_;
};

std::string csv_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
    }
}

AlgebraElement load_element(const GroupSpec& spec, const std::string& name)
{
    require(!name.empty(), "norm needs --element (a JSON file, srw, or delta:<word>)");
    if (name == "srw") {
        const int gens = spec.generator_count();
        require(gens > 0, "srw needs at least one generator");
        AlgebraElement f(spec, ActionSpec::trivial(1));
        for (int i = 0; i < gens; ++i)
            for (bool inv : {false, true})
                f.add(generator(spec, i, inv), Complex(1.0 / (2.0 * gens), 0.0));
        return f;
    }
    if (name.rfind("delta:", 0) == 0)
        return AlgebraElement::dirac(spec, parse_word(spec, name.substr(6)));
    auto j = read_json_file(name);
    if (j.contains("group")) {
        const auto file_spec = GroupSpec::parse(j.at("group").get<std::string>());
        if (!(file_spec == spec))
            throw StructuralError("element file is over " + file_spec.to_string() + " but --group is " +
                                  spec.to_string());
    } else {
        j["group"] = spec.to_string();
    }
    return element_from_json(j);
}

Measure load_measure(const GroupSpec& spec, const std::string& name)
{
    if (name == "srw" || name.rfind("lazy:", 0) == 0)
        return Measure::alias(spec, name);
    return measure_from_json(spec, read_json_file(name));
}

std::vector<int> parse_lengths(const std::string& text)
{
    std::vector<int> out;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == s.size() && !s.empty() && v >= 0, "bad length list '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        require(lo <= hi, "bad length range '" + text + "'");
        for (int n = lo; n <= hi; ++n)
            out.push_back(n);
        return out;
    }
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ','))
        out.push_back(to_int(item));
    require(!out.empty(), "empty length list");
    return out;
}

int free_rank(const GroupSpec& spec, const std::string& what)
{
    require(spec.kind() == GroupKind::free && spec.rank() >= 2, what + " needs --group free:<k> with k >= 2");
    return spec.rank();
}

bool has_boundary(const Measure& mu)
{
    const auto& spec = mu.spec();
    if (spec.kind() != GroupKind::free || spec.rank() < 2 || !mu.is_nearest_neighbor())
        return false;
    for (Letter x : free_letters(spec.rank())) {
        GroupElement g;
        g.word = {x};
        if (mu.mass(g) <= 0.0)
            return false;
    }
    return true;
}

// Speed by the birth-death chain when mu is radial; exact powers are capped at nmax.
SpeedReport measure_speed(const Measure& mu, const RunConfig& c)
{
    const bool radial = mu.spec().kind() == GroupKind::free && mu.is_radial();
    return speed(mu, radial ? c.speed_n : c.nmax);
}

struct Outcome {
    json report = json::object();
    std::string csv;  // filled for sequence-valued reports
    std::size_t memory = 0;
    int status = 0;
};

NormEstimate anchor_estimate(const AlgebraElement& f, PExponent p, const RunConfig& c)
{
    require(f.dim() == 1 && c.amplify == 1,
            "p in {1, inf} is exact only for scalar elements without amplification");
    const TruncatedOperator op(f, 1, c.radius);
    NormEstimate e;
    e.p = p.p();
    e.q = p.q();
    e.radius = c.radius;
    e.lower = e.upper = std::max(op.max_column_sum(), op.max_row_sum());
    e.methods = {"anchor-exact"};
    e.witness_seed = c.seed;
    e.converged = true;
    return e;
}

NormEstimate norm_at(const AlgebraElement& f, double p, const RunConfig& c)
{
    require(p >= 1.0, "p must be >= 1");
    const auto exponent = PExponent::of(p);
    if (p == 1.0 || p == kInfinity)
        return anchor_estimate(f, exponent, c);
    BoydOptions options;
    options.restarts = c.restarts;
    options.tol = c.tol;
    options.max_iter = c.max_iter;
    options.seed = c.seed;
    return pf_norm(f, exponent, c.radius, c.amplify, options);
}

std::size_t norm_memory(const AlgebraElement& f, const RunConfig& c)
{
    const std::size_t points = ball_size(f.spec(), c.radius);
    const std::size_t fiber = static_cast<std::size_t>(f.dim()) * static_cast<std::size_t>(std::max(c.amplify, 1));
    // source tables plus about eight working vectors
    return points * (f.terms().size() * sizeof(std::int32_t) + 8 * fiber * sizeof(Complex));
}

Outcome run_norm(const RunConfig& c)
{
    const auto spec = GroupSpec::parse(c.group);
    const auto f = load_element(spec, c.element);
    require(c.radius >= f.support_radius(), "--radius must be at least the support radius of the element");
    require(c.amplify >= 1, "--amplify must be >= 1");
    Outcome o;
    o.memory = norm_memory(f, c);
    if (!c.scan.empty()) {
        json curve = json::array();
        std::string csv = "p,q,lower,upper,converged,iterations\n";
        for (double p : c.scan) {
            const auto e = norm_at(f, p, c);
            curve.push_back(report_json(e));
            csv += csv_number(e.p) + "," + csv_number(e.q) + "," + csv_number(e.lower) + "," +
                   csv_number(e.upper) + "," + (e.converged ? "true" : "false") + "," +
                   std::to_string(e.iterations) + "\n";
        }
        o.report["curve"] = curve;
        o.report["radius"] = c.radius;
        o.csv = csv;
        return o;
    }
    require(c.p.has_value(), "norm needs --p or --scan");
    const auto e = norm_at(f, *c.p, c);
    o.report = report_json(e);
    return o;
}

Outcome run_entropy(const RunConfig& c)
{
    const auto spec = GroupSpec::parse(c.group);
    const auto mu = load_measure(spec, c.measure);
    require(c.nmax >= 1, "--nmax must be >= 1");
    const double unit = c.bits ? std::log(2.0) : 1.0;
    auto curve = avez_entropy(mu, c.nmax, c.mc_samples, c.seed);
    const auto spd = measure_speed(mu, c);
    Outcome o;
    o.memory = curve.memory_bytes;

    double furstenberg = std::nan("");
    std::optional<BoundaryMeasure> nu;
    if (has_boundary(mu)) {
        nu = harmonic_measure(mu);
        furstenberg = furstenberg_entropy(mu, *nu);
    }

    const double h_nats = curve.h_estimate;
    for (auto* xs : {&curve.entropy, &curve.entropy_rate})
        for (double& x : *xs)
            x /= unit;
    for (double* x : {&curve.h_fit, &curve.h_aitken_rate, &curve.h_aitken_increment, &curve.h_estimate,
                      &curve.fekete_upper, &curve.monotonicity_defect, &curve.subadditivity_defect})
        *x /= unit;

    o.report["units"] = c.bits ? "bits" : "nats";
    o.report["entropy"] = report_json(curve);
    o.report["speed"] = report_json(spd);
    if (spec.kind() == GroupKind::free && spec.rank() >= 2) {
        const double bound = spd.speed * std::log(2.0 * spec.rank() - 1.0);
        o.report["fundamental_inequality"] = {
            {"h", number(h_nats / unit)},
            {"speed_log_growth", number(bound / unit)},
            {"holds", h_nats <= bound + 1e-6},
        };
    }
    if (nu) {
        auto b = boundary_json(*nu, mu);
        b["furstenberg_entropy"] = number(furstenberg / unit);
        o.report["boundary"] = b;
    }

    std::string csv = "n,entropy,entropy_rate,exact\n";
    for (std::size_t i = 0; i < curve.n.size(); ++i)
        csv += std::to_string(curve.n[i]) + "," + csv_number(curve.entropy[i]) + "," +
               csv_number(curve.entropy_rate[i]) + "," + (curve.exact[i] ? "true" : "false") + "\n";
    o.csv = csv;
    return o;
}

std::vector<Letter> random_reduced_word(int rank, int n, Rng& rng)
{
    const auto letters = free_letters(rank);
    std::vector<Letter> w;
    while (static_cast<int>(w.size()) < n) {
        const Letter x = letters[rng.below(letters.size())];
        if (!w.empty() && w.back() == -x)
            continue;
        w.push_back(x);
    }
    return w;
}

Outcome run_xi(const RunConfig& c)
{
    const auto spec = GroupSpec::parse(c.group);
    const int k = free_rank(spec, "xi");
    const auto mu = load_measure(spec, c.measure);
    require(has_boundary(mu), "xi needs a nearest-neighbor measure charging every letter");
    const auto nu = harmonic_measure(mu);
    const bool radial = mu.is_radial();
    constexpr std::size_t kFullLimit = 20000;
    constexpr std::size_t kSample = 2000;

    Outcome o;
    json rows = json::array();
    std::string csv = "length,words,sampled,min,max,mean,closed_form\n";
    for (int n : parse_lengths(c.lengths)) {
        const double count = n == 0 ? 1.0 : 2.0 * k * std::pow(2.0 * k - 1.0, n - 1);
        const bool sampled = count > static_cast<double>(kFullLimit);
        std::vector<std::vector<Letter>> words;
        if (sampled) {
            Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(n));
            for (std::size_t i = 0; i < kSample; ++i)
                words.push_back(random_reduced_word(k, n, rng));
        } else {
            words = reduced_words(k, n);
        }
        double lo = kInfinity, hi = -kInfinity;
        long double sum = 0.0L;
        for (const auto& w : words) {
            const double v = xi_function(w, nu);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        const double mean = static_cast<double>(sum / static_cast<long double>(words.size()));
        const double closed = radial ? xi_srw_closed_form(k, n) : std::nan("");
        rows.push_back({{"length", n},
                        {"words", words.size()},
                        {"sampled", sampled},
                        {"min", number(lo)},
                        {"max", number(hi)},
                        {"mean", number(mean)},
                        {"closed_form", number(closed)}});
        csv += std::to_string(n) + "," + std::to_string(words.size()) + "," + (sampled ? "true" : "false") + "," +
               csv_number(lo) + "," + csv_number(hi) + "," + csv_number(mean) + "," + csv_number(closed) + "\n";
        o.memory = std::max(o.memory, words.size() * (sizeof(std::vector<Letter>) + n * sizeof(Letter)));
    }
    o.report["lengths"] = rows;
    json evals = json::array();
    for (const auto& literal : c.words) {
        const auto g = parse_word(spec, literal);
        evals.push_back({{"word", format_word(spec, g)},
                         {"xi", number(xi_function(g.word, nu))},
                         {"xi_cylinders", number(xi_function_cylinders(g.word, nu))}});
    }
    if (!evals.empty())
        o.report["words"] = evals;
    o.report["gram"] = report_json(psd_gram_check(spec, WeightFunction::xi_power(nu, 1.0), c.gram_radius));
    o.report["boundary"] = boundary_json(nu, mu);
    o.csv = csv;
    return o;
}

Outcome run_criteria(const RunConfig& c)
{
    const auto spec = GroupSpec::parse(c.group);
    const int k = free_rank(spec, "criteria");
    require(c.hx.has_value(), "criteria needs --hx");
    require(c.p.has_value(), "criteria needs --p");
    Outcome o;
    double h = 0.0, ell = 0.0;
    std::string h_source, speed_source;
    std::optional<Measure> mu;
    if (!c.h || !c.speed)
        mu = load_measure(spec, c.measure);
    if (c.h) {
        h = *c.h;
        h_source = "override";
    } else if (has_boundary(*mu)) {
        h = furstenberg_entropy(*mu, harmonic_measure(*mu));
        h_source = "furstenberg";
    } else {
        const auto curve = avez_entropy(*mu, c.nmax, 0, c.seed);
        h = curve.h_estimate;
        h_source = "avez-" + curve.extrapolation;
        o.memory = curve.memory_bytes;
    }
    if (c.speed) {
        ell = *c.speed;
        speed_source = "override";
    } else {
        const auto s = measure_speed(*mu, c);
        ell = s.speed;
        speed_source = s.method;
    }
    o.report = report_json(criteria_report(k, h, ell, *c.hx, *c.p));
    o.report["h_source"] = h_source;
    o.report["speed_source"] = speed_source;
    return o;
}

Outcome run_kahane(const RunConfig& c)
{
    require(c.p.has_value(), "kahane needs --p");
    require(c.n >= 1 && c.dim >= 1, "kahane needs --n >= 1 and --dim >= 1");
    const double space_p = c.space_p.value_or(*c.p);
    std::vector<VectorFamily> families;
    if (c.family == "basis" || c.family == "both")
        families.push_back(basis_family(c.dim, c.n, space_p));
    if (c.family == "gaussian" || c.family == "both")
        families.push_back(gaussian_family(c.dim, c.n, space_p, c.seed));
    require(!families.empty(), "--family must be basis, gaussian or both");
    Outcome o;
    o.memory = c.trials * sizeof(double) + c.n * c.dim * sizeof(Complex) * families.size();
    auto r = report_json(kahane_constant_scan(families, *c.p, c.trials, c.seed));
    r["space_p"] = number(space_p);
    r["dim"] = c.dim;
    o.report = r;
    return o;
}

Outcome run_check(const RunConfig& c)
{
    Outcome o;
    const auto results = run_suites(c.suite, c.seed);
    o.report = suite_json(results);
    o.status = o.report.at("ok").get<bool>() ? 0 : 4;
    return o;
}

json base_report(const RunConfig& c)
{
    return {
        {"tool", "pf"},
        {"version", PFP_VERSION},
        {"command", c.command},
        {"seed", c.seed},
        {"generator", kGeneratorName},
        {"config", config_echo(c)},
    };
}

json p_value(const std::optional<double>& p)
{
    if (!p)
        return nullptr;
    if (std::isinf(*p))
        return "inf";
    return *p;
}

} // namespace

json error_object(const std::string& kind, const std::string& message)
{
    return {{"tool", "pf"}, {"version", PFP_VERSION}, {"error", {{"kind", kind}, {"message", message}}}};
}

json config_echo(const RunConfig& c)
{
    json j = {{"command", c.command}, {"format", c.format}, {"seed", c.seed}};
    if (c.mem_cap)
        j["mem_cap"] = *c.mem_cap;
    const auto& cmd = c.command;
    if (cmd != "kahane" && cmd != "check")
        j["group"] = c.group;
    if (cmd == "norm") {
        j["element"] = c.element;
        j["p"] = p_value(c.p);
        if (!c.scan.empty()) {
            json scan = json::array();
            for (double p : c.scan)
                scan.push_back(p_value(p));
            j["scan"] = scan;
        }
        j["radius"] = c.radius;
        j["amplify"] = c.amplify;
        j["restarts"] = c.restarts;
        j["tol"] = c.tol;
        j["max_iter"] = c.max_iter;
    } else if (cmd == "entropy") {
        j["measure"] = c.measure;
        j["nmax"] = c.nmax;
        j["mc_samples"] = c.mc_samples;
        j["speed_n"] = c.speed_n;
        j["bits"] = c.bits;
    } else if (cmd == "xi") {
        j["measure"] = c.measure;
        j["lengths"] = c.lengths;
        j["words"] = c.words;
        j["gram_radius"] = c.gram_radius;
    } else if (cmd == "criteria") {
        j["measure"] = c.measure;
        j["hx"] = p_value(c.hx);
        j["p"] = p_value(c.p);
        j["h"] = p_value(c.h);
        j["speed"] = p_value(c.speed);
        j["nmax"] = c.nmax;
        j["speed_n"] = c.speed_n;
    } else if (cmd == "kahane") {
        j["p"] = p_value(c.p);
        j["dim"] = c.dim;
        j["n"] = c.n;
        j["trials"] = c.trials;
        j["family"] = c.family;
        j["space_p"] = p_value(c.space_p);
    } else if (cmd == "check") {
        j["suite"] = c.suite;
    }
    return j;
}

int run(const RunConfig& c, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    auto emit_error = [&](const std::string& kind, const std::string& message, int status,
                          std::optional<std::size_t> required = std::nullopt) {
        auto e = error_object(kind, message);
        e["command"] = c.command;
        e["seed"] = c.seed;
        e["config"] = config_echo(c);
        if (required)
            e["error"]["required"] = *required;
        out << e.dump(2) << "\n";
        return status;
    };
    try {
        require(c.format == "json" || c.format == "csv", "--format must be json or csv");
        CapGuard guard(c.mem_cap);
        Outcome o;
        if (c.command == "norm")
            o = run_norm(c);
        else if (c.command == "entropy")
            o = run_entropy(c);
        else if (c.command == "xi")
            o = run_xi(c);
        else if (c.command == "criteria")
            o = run_criteria(c);
        else if (c.command == "kahane")
            o = run_kahane(c);
        else if (c.command == "check")
            o = run_check(c);
        else
            throw PreconditionError("unknown command '" + c.command + "'");

        if (c.format == "csv") {
            require(!o.csv.empty(), "csv output is available for norm --scan, entropy and xi only");
            out << o.csv;
            return o.status;
        }
        json report = base_report(c);
        for (auto& [key, value] : o.report.items())
            report[key] = value;
        report["memory_estimate_bytes"] = o.memory;
        if (c.timing) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            report["wall_time_s"] = elapsed.count();
        } else {
            report["wall_time_s"] = nullptr;
        }
        out << report.dump(2) << "\n";
        return o.status;
    } catch (const StructuralError& e) {
        return emit_error("structural", e.what(), 2);
    } catch (const PreconditionError& e) {
        return emit_error("precondition", e.what(), 2);
    } catch (const ResourceError& e) {
        return emit_error("resource", e.what(), 3, e.required());
    } catch (const InvariantError& e) {
        return emit_error("invariant", e.what(), 4);
    } catch (const json::exception& e) {
        return emit_error("precondition", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error("internal", e.what(), 4);
    }
}

} // namespace pfp
