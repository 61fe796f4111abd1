#include <doctest.h>

#include "sawtree/lattice.hpp"

using namespace sawtree;

TEST_CASE("domain parse round-trips every kind") {
    for (const char* name : {"plane", "halfplane", "upperhalfplane", "quadrant", "strip:3"}) {
        const DomainSpec d = DomainSpec::parse(name);
        CHECK(d.name() == name);
        CHECK(DomainSpec::parse(d.name()).kind == d.kind);
    }
    CHECK(DomainSpec::parse("strip:1").strip_height == 1);
    CHECK_THROWS_AS(DomainSpec::parse("disk"), InvalidInput);
    CHECK_THROWS_AS(DomainSpec::parse("strip:0"), InvalidInput);
    CHECK_THROWS_AS(DomainSpec::parse("strip:-2"), InvalidInput);
    CHECK_THROWS_AS(DomainSpec::parse("strip:x"), InvalidInput);
    CHECK_THROWS_AS(DomainSpec::parse(""), InvalidInput);
    CHECK_THROWS_AS(DomainSpec::strip(0), InvalidInput);
}

TEST_CASE("membership per domain") {
    const Point origin{0, 0};
    CHECK(DomainSpec::plane().contains({-5, 7}));

    const DomainSpec half = DomainSpec::half_plane();
    CHECK(half.contains(origin));
    CHECK(half.contains({3, 0}));
    CHECK_FALSE(half.contains({0, -1}));

    const DomainSpec upper = DomainSpec::upper_half_plane();
    CHECK(upper.contains(origin));
    CHECK_FALSE(upper.contains({1, 0}));  // the line belongs only at the origin
    CHECK(upper.contains({1, 1}));
    CHECK_FALSE(upper.contains({0, -1}));

    const DomainSpec quad = DomainSpec::quadrant();
    CHECK(quad.contains(origin));
    CHECK(quad.contains({2, 0}));
    CHECK_FALSE(quad.contains({-1, 0}));
    CHECK_FALSE(quad.contains({0, -1}));

    const DomainSpec strip = DomainSpec::strip(2);
    CHECK(strip.contains({-4, 2}));
    CHECK_FALSE(strip.contains({0, 3}));
    CHECK_FALSE(strip.contains({0, -1}));
}

TEST_CASE("canonical step order is E,N,W,S") {
    CHECK(kSteps[0] == Point{1, 0});
    CHECK(kSteps[1] == Point{0, 1});
    CHECK(kSteps[2] == Point{-1, 0});
    CHECK(kSteps[3] == Point{0, -1});
    CHECK(kStepNames == std::array<char, 4>{'E', 'N', 'W', 'S'});
}

TEST_CASE("neighbors_in honours the domain and the step order") {
    const auto plane = neighbors_in(DomainSpec::plane(), {0, 0});
    REQUIRE(plane.size() == 4);
    CHECK(plane[0] == Point{1, 0});
    CHECK(plane[3] == Point{0, -1});

    // Origin of the open upper half plane: only north survives.
    const auto up = neighbors_in(DomainSpec::upper_half_plane(), {0, 0});
    REQUIRE(up.size() == 1);
    CHECK(up[0] == Point{0, 1});

    const auto quad = neighbors_in(DomainSpec::quadrant(), {0, 0});
    REQUIRE(quad.size() == 2);
    CHECK(quad[0] == Point{1, 0});
    CHECK(quad[1] == Point{0, 1});

    CHECK(neighbors_in(DomainSpec::half_plane(), {0, 0}).size() == 3);
    CHECK_THROWS_AS(neighbors_in(DomainSpec::quadrant(), {-1, 0}), InvalidInput);
}

TEST_CASE("box include and expand") {
    Box b;
    b.include({3, -2});
    b.include({-1, 4});
    CHECK(b.contains({0, 0}));
    CHECK(b.contains({3, 4}));
    CHECK_FALSE(b.contains({4, 0}));
    b.expand(1);
    CHECK(b.contains({4, 5}));
    CHECK_FALSE(b.contains({5, 0}));
}
