#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "pfp/cli.hpp"

namespace {

double parse_exponent(const std::string& text, const std::string& flag)
{
    if (text == "inf" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw CLI::ValidationError(flag, "expected a number or inf, got '" + text + "'");
    return v;
}

std::size_t parse_cap(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || v == 0)
        throw CLI::ValidationError(what, "expected a positive integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

int main(int argc, char** argv)
{
    pfp::RunConfig config;
    CLI::App app{"pf: l^p pseudofunction norms and random-walk criteria on groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PFP_VERSION);

    std::string mem_cap;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "RNG seed (mt19937_64)")->capture_default_str();
        sub->add_option("--format", config.format, "json or csv")->capture_default_str();
        sub->add_option("--mem-cap", mem_cap, "element cap for enumerations (overrides PF_MEM_CAP)");
        sub->add_flag("--timing", config.timing, "report wall time (makes output nondeterministic)");
    };
    auto with_group = [&](CLI::App* sub) {
        sub->add_option("--group", config.group, "free:<k>, cyclic:<n> or product:<spec>,<spec>")
            ->capture_default_str();
    };

    std::string p_text, scan_text, hx_text, h_text, speed_text, space_p_text;

    auto* norm = app.add_subcommand("norm", "PF_p norm bounds of a group-algebra element");
    common(norm);
    with_group(norm);
    norm->add_option("--element", config.element, "element JSON file, srw, or delta:<word>")->required();
    norm->add_option("--p", p_text, "exponent in [1, inf]");
    norm->add_option("--scan", scan_text, "comma-separated exponents, e.g. 1.1,1.25,1.5,2");
    norm->add_option("--radius", config.radius, "Cayley ball radius R")->capture_default_str();
    norm->add_option("--amplify", config.amplify, "amplification dimension m")->capture_default_str();
    norm->add_option("--restarts", config.restarts, "power-method restarts")->capture_default_str();
    norm->add_option("--tol", config.tol, "relative stopping tolerance")->capture_default_str();
    norm->add_option("--max-iter", config.max_iter, "iterations per restart")->capture_default_str();

    auto* entropy = app.add_subcommand("entropy", "Avez entropy, speed and boundary of a random walk");
    common(entropy);
    with_group(entropy);
    entropy->add_option("--measure", config.measure, "srw, lazy:<q>, or measure JSON file")->capture_default_str();
    entropy->add_option("--nmax", config.nmax, "largest convolution power")->capture_default_str();
    entropy->add_option("--mc-samples", config.mc_samples, "Monte Carlo paths beyond the exact range")
        ->capture_default_str();
    entropy->add_option("--speed-n", config.speed_n, "steps of the birth-death speed recursion")
        ->capture_default_str();
    entropy->add_flag("--bits", config.bits, "report entropies in bits");

    auto* xi = app.add_subcommand("xi", "Harish-Chandra Xi function of the harmonic measure");
    common(xi);
    with_group(xi);
    xi->add_option("--measure", config.measure, "srw, lazy:<q>, or measure JSON file")->capture_default_str();
    xi->add_option("--lengths", config.lengths, "a..b or comma list of word lengths")->capture_default_str();
    xi->add_option("--word", config.words, "evaluate Xi at this word (repeatable)");
    xi->add_option("--gram-radius", config.gram_radius, "ball radius of the Xi Gram check")
        ->capture_default_str();

    auto* criteria = app.add_subcommand("criteria", "entropy criteria thresholds in p");
    common(criteria);
    with_group(criteria);
    criteria->add_option("--measure", config.measure, "srw, lazy:<q>, or measure JSON file")
        ->capture_default_str();
    criteria->add_option("--hx", hx_text, "boundary entropy h_X")->required();
    criteria->add_option("--p", p_text, "exponent p >= 2")->required();
    criteria->add_option("--hmu", h_text, "override the walk entropy h");
    criteria->add_option("--speed", speed_text, "override the speed");
    criteria->add_option("--nmax", config.nmax, "exact powers for the Avez fallback")->capture_default_str();
    criteria->add_option("--speed-n", config.speed_n, "steps of the speed recursion")->capture_default_str();

    auto* kahane = app.add_subcommand("kahane", "Rademacher moment ratios and the constant C_p");
    common(kahane);
    kahane->add_option("--p", p_text, "moment exponent")->required();
    kahane->add_option("--dim", config.dim, "points of the ambient l^p space")->capture_default_str();
    kahane->add_option("--n", config.n, "vectors per family")->capture_default_str();
    kahane->add_option("--trials", config.trials, "sign samples")->capture_default_str();
    kahane->add_option("--family", config.family, "basis, gaussian or both")->capture_default_str();
    kahane->add_option("--space-p", space_p_text, "exponent of the ambient space (default: --p)");

    auto* check = app.add_subcommand("check", "run the randomized invariant suites");
    common(check);
    check->add_option("--suite", config.suite, "all or a module name")->capture_default_str();

    try {
        app.parse(argc, argv);
        config.command = app.get_subcommands().front()->get_name();
        if (!p_text.empty())
            config.p = parse_exponent(p_text, "--p");
        if (!hx_text.empty())
            config.hx = parse_exponent(hx_text, "--hx");
        if (!h_text.empty())
            config.h = parse_exponent(h_text, "--hmu");
        if (!speed_text.empty())
            config.speed = parse_exponent(speed_text, "--speed");
        if (!space_p_text.empty())
            config.space_p = parse_exponent(space_p_text, "--space-p");
        if (!scan_text.empty()) {
            std::stringstream s(scan_text);
            std::string item;
            while (std::getline(s, item, ','))
                config.scan.push_back(parse_exponent(item, "--scan"));
        }
        if (!mem_cap.empty())
            config.mem_cap = parse_cap(mem_cap, "--mem-cap");
        else if (const char* env = std::getenv("PF_MEM_CAP"); env && *env)
            config.mem_cap = parse_cap(env, "PF_MEM_CAP");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        std::cout << pfp::error_object("parse", e.what()).dump(2) << "\n";
        return 2;
    }
    return pfp::run(config, std::cout);
}
