#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pfp {

/// Parsed command line of the `pf` tool. Fields not used by a subcommand keep
/// their defaults and are left out of the config echo.
struct RunConfig {
    std::string command;
    std::string group = "free:2";
    std::string format = "json";
    std::uint64_t seed = 42;
    std::optional<std::size_t> mem_cap;
    bool timing = false;

    // norm
    std::string element;
    std::optional<double> p;
    std::vector<double> scan;
    int radius = 8;
    int amplify = 1;
    int restarts = 8;
    double tol = 1e-8;
    int max_iter = 500;

    // entropy, xi, criteria
    std::string measure = "srw";
    int nmax = 12;
    std::uint64_t mc_samples = 0;
    int speed_n = 2000;
    bool bits = false;
    std::string lengths = "0..8";
    std::vector<std::string> words;
    int gram_radius = 2;
    std::optional<double> hx;
    std::optional<double> h;
    std::optional<double> speed;

    // kahane
    std::size_t dim = 8;
    std::size_t n = 8;
    std::size_t trials = 100000;
    std::string family = "both";
    std::optional<double> space_p;

    // check
    std::string suite = "all";
};

/// The config echo embedded in every report.
nlohmann::json config_echo(const RunConfig& config);

/// Runs one subcommand and writes its report (or an error object) to `out`.
/// Returns the exit status: 0 ok, 2 precondition/parse, 3 resource cap, 4 invariant.
int run(const RunConfig& config, std::ostream& out);

/// Error object printed for failures that happen before `run` (argument parsing).
nlohmann::json error_object(const std::string& kind, const std::string& message);

} // namespace pfp
