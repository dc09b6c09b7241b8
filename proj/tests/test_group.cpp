#include "doctest.h"

#include "oracles.hpp"
#include "pfp/errors.hpp"
#include "pfp/group.hpp"
#include "pfp/rng.hpp"
#include "pfp/sampling.hpp"

using namespace pfp;

TEST_CASE("spec strings parse and print back")
{
    for (const char* text : {"free:2", "free:1", "cyclic:5", "product:free:2,cyclic:3",
                             "product:(product:free:1,free:1),cyclic:3"}) {
        const auto spec = GroupSpec::parse(text);
        CHECK(GroupSpec::parse(spec.to_string()) == spec);
    }
    CHECK_THROWS_AS(GroupSpec::parse("free:0"), PreconditionError);
    CHECK_THROWS_AS(GroupSpec::parse("cyclic:0"), PreconditionError);
    CHECK_THROWS_AS(GroupSpec::parse("torus:2"), PreconditionError);
    CHECK_THROWS_AS(GroupSpec::parse("free:2x"), PreconditionError);
}

TEST_CASE("free words reduce like the string oracle")
{
    const auto spec = GroupSpec::free(3);
    Rng rng(5);
    const auto ls = oracle::letters(3);
    for (int t = 0; t < 500; ++t) {
        std::string a, b;
        for (int i = 0; i < 6; ++i) {
            a += ls[rng.below(ls.size())];
            b += ls[rng.below(ls.size())];
        }
        const auto ga = parse_word(spec, a);
        const auto gb = parse_word(spec, b);
        CHECK(format_word(spec, ga) == oracle::reduce(a));
        CHECK(format_word(spec, compose(spec, ga, gb)) == oracle::reduce(a + b));
        CHECK(format_word(spec, invert(spec, ga)) == oracle::reduce(oracle::inverse(a)));
        CHECK(length(spec, ga) == static_cast<int>(oracle::reduce(a).size()));
    }
}

TEST_CASE("worked examples")
{
    const auto f2 = GroupSpec::free(2);
    CHECK(format_word(f2, compose(f2, parse_word(f2, "ab"), parse_word(f2, "Ba"))) == "aa");
    CHECK(format_word(f2, invert(f2, parse_word(f2, "aB"))) == "bA");
    CHECK(length(f2, parse_word(f2, "aBBa")) == 4);
    const auto c5 = GroupSpec::cyclic(5);
    auto three = identity(c5);
    three.residue = 3;
    auto four = identity(c5);
    four.residue = 4;
    CHECK(compose(c5, three, four).residue == 2);
    CHECK(length(c5, three) == 2);
    const auto prod = GroupSpec::parse("product:free:1,cyclic:3");
    CHECK(length(prod, parse_word(prod, "aab")) == 3);
    CHECK(length(prod, parse_word(prod, "aB")) == 2);
}

TEST_CASE("sphere sizes of free groups")
{
    for (int k = 1; k <= 4; ++k) {
        const auto sizes = sphere_sizes(GroupSpec::free(k), 6);
        CHECK(sizes[0] == 1);
        for (int n = 1; n <= 6; ++n)
            CHECK(sizes[static_cast<std::size_t>(n)] ==
                  static_cast<std::size_t>(2 * k * std::pow(2 * k - 1, n - 1) + 0.5));
    }
    CHECK(ball_size(GroupSpec::cyclic(7), 10) == 7);
    CHECK(ball_size(GroupSpec::parse("product:cyclic:2,cyclic:3"), 1) == 4);
}

TEST_CASE("ball index matches the breadth-first oracle")
{
    const auto spec = GroupSpec::free(2);
    const BallIndex ball(spec, 5);
    const auto words = oracle::ball(2, 5);
    REQUIRE(ball.size() == words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        CHECK(format_word(spec, ball.element(i)) == words[i]);
        CHECK(ball.find(parse_word(spec, words[i])) == i);
    }
    CHECK_FALSE(ball.find(parse_word(spec, "aaaaaa")).has_value());
}

TEST_CASE("find_product agrees with composition")
{
    const auto spec = GroupSpec::free(2);
    const BallIndex ball(spec, 4);
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto i = static_cast<std::size_t>(rng.below(ball.size()));
        const auto j = static_cast<std::size_t>(rng.below(ball.size()));
        const auto g = compose(spec, ball.element(i), ball.element(j));
        const auto idx = ball.find_product(ball.word(i), ball.word(j));
        const auto expect = ball.find(g);
        if (expect)
            CHECK(idx == static_cast<std::int64_t>(*expect));
        else
            CHECK(idx == -1);
    }
}

TEST_CASE("non-free balls are prefixes and round trip")
{
    for (const char* text : {"cyclic:9", "product:free:2,cyclic:4"}) {
        const auto spec = GroupSpec::parse(text);
        const BallIndex big(spec, 3);
        const BallIndex small(spec, 1);
        for (std::size_t i = 0; i < small.size(); ++i)
            CHECK(small.element(i) == big.element(i));
        for (std::size_t i = 0; i < big.size(); ++i) {
            CHECK(big.find(big.element(i)) == i);
            CHECK(big.length(i) == length(spec, big.element(i)));
        }
    }
}

TEST_CASE("property: group axioms on random elements")
{
    for (const char* text : {"free:2", "cyclic:6", "product:free:1,cyclic:3", "product:cyclic:2,free:2"}) {
        const auto spec = GroupSpec::parse(text);
        Rng rng(17);
        for (int t = 0; t < 100; ++t) {
            const auto a = random_element(spec, 3, rng);
            const auto b = random_element(spec, 3, rng);
            const auto c = random_element(spec, 3, rng);
            CHECK(compose(spec, compose(spec, a, b), c) == compose(spec, a, compose(spec, b, c)));
            CHECK(compose(spec, a, identity(spec)) == a);
            CHECK(compose(spec, invert(spec, a), a) == identity(spec));
            CHECK(length(spec, compose(spec, a, b)) <= length(spec, a) + length(spec, b));
            CHECK(parse_word(spec, format_word(spec, a)) == a);
            CHECK(belongs(spec, a));
        }
    }
}

TEST_CASE("element cap raises a resource error")
{
    const auto saved = element_cap();
    set_element_cap(100);
    CHECK_THROWS_AS(BallIndex(GroupSpec::free(2), 5), ResourceError);
    try {
        BallIndex(GroupSpec::free(2), 5);
    } catch (const ResourceError& e) {
        CHECK(e.required() == 485);
    }
    set_element_cap(saved);
}

TEST_CASE("bad literals are rejected")
{
    const auto spec = GroupSpec::free(2);
    CHECK_THROWS_AS(parse_word(spec, "ac"), PreconditionError);
    CHECK_THROWS_AS(parse_word(spec, "a1"), PreconditionError);
    CHECK(parse_word(spec, "1") == identity(spec));
    CHECK(parse_word(spec, "aA") == identity(spec));
}
