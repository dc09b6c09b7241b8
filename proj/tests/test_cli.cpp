#include "doctest.h"

#include <sstream>

#include "pfp/cli.hpp"
#include "pfp/group.hpp"

using namespace pfp;

namespace {

std::pair<int, std::string> capture(const RunConfig& c)
{
    std::ostringstream out;
    const int status = run(c, out);
    return {status, out.str()};
}

RunConfig config(const std::string& command)
{
    RunConfig c;
    c.command = command;
    return c;
}

} // namespace

TEST_CASE("norm report schema")
{
    auto c = config("norm");
    c.element = "srw";
    c.p = 1.5;
    c.radius = 4;
    const auto [status, text] = capture(c);
    REQUIRE(status == 0);
    const auto j = nlohmann::json::parse(text);
    for (const char* key : {"p", "q", "lower", "upper", "radius", "method", "witness_seed", "converged",
                            "iterations", "seed", "config", "version", "memory_estimate_bytes", "wall_time_s"})
        CHECK(j.contains(key));
    CHECK(j["q"].get<double>() == doctest::Approx(3.0));
    CHECK(j["config"]["p"] == 1.5);
}

TEST_CASE("entropy example")
{
    auto c = config("entropy");
    c.nmax = 2;
    const auto [status, text] = capture(c);
    REQUIRE(status == 0);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["entropy"]["entropy"][0].get<double>() == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    c.bits = true;
    const auto bits = nlohmann::json::parse(capture(c).second);
    CHECK(bits["entropy"]["entropy"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("same config, same bytes")
{
    for (const char* command : {"norm", "entropy", "xi", "criteria", "kahane", "check"}) {
        auto c = config(command);
        c.element = "srw";
        c.p = command == std::string("criteria") ? 4.0 : 1.5;
        c.radius = 3;
        c.nmax = 5;
        c.hx = 0.1;
        c.trials = 3000;
        c.lengths = "0..3";
        CHECK(capture(c) == capture(c));
    }
}

TEST_CASE("exit statuses")
{
    auto c = config("norm");
    c.element = "srw";
    c.p = 0.5;
    auto [status, text] = capture(c);
    CHECK(status == 2);
    CHECK(nlohmann::json::parse(text)["error"]["kind"] == "precondition");

    c.p = 2.0;
    c.radius = 8;
    c.mem_cap = 500;
    std::tie(status, text) = capture(c);
    CHECK(status == 3);
    CHECK(nlohmann::json::parse(text)["error"]["required"] == 13121);
    // the cap is restored afterwards
    CHECK(element_cap() != 500);

    auto bad = config("nope");
    CHECK(capture(bad).first == 2);

    auto fmt = config("kahane");
    fmt.p = 1.5;
    fmt.format = "csv";
    CHECK(capture(fmt).first == 2);
}

TEST_CASE("csv output for sequence reports")
{
    auto c = config("norm");
    c.element = "srw";
    c.scan = {1.0, 2.0};
    c.radius = 3;
    c.format = "csv";
    const auto [status, text] = capture(c);
    CHECK(status == 0);
    CHECK(text.rfind("p,q,lower,upper", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("p = 1 anchors need scalar elements")
{
    auto c = config("norm");
    c.element = "srw";
    c.p = 1.0;
    c.radius = 3;
    const auto j = nlohmann::json::parse(capture(c).second);
    CHECK(j["lower"] == 1.0);
    CHECK(j["upper"] == 1.0);
    c.amplify = 2;
    CHECK(capture(c).first == 2);
}
