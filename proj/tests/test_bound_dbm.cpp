// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "support/reference.hpp"
#include "tawcet/dbm.hpp"

using namespace tawcet;
using tawcet::testing::random_canonical_zone;
using tawcet::testing::reference_canonicalize;

TEST_CASE("bound addition") {
    CHECK(Bound::le(3) + Bound::lt(4) == Bound::lt(7));
    CHECK(Bound::infinity() + Bound::le(-5) == Bound::infinity());
    CHECK(Bound::le(0) + Bound::le(0) == Bound::le(0));
    CHECK(Bound::lt(2) + Bound::lt(2) == Bound::lt(4));
    CHECK_THROWS_AS(Bound::le(std::numeric_limits<std::int64_t>::max() - 1) + Bound::le(2),
                    std::overflow_error);
}

TEST_CASE("bound total order") {
    CHECK(Bound::le(1) < Bound::le(2));
    CHECK(Bound::lt(2) < Bound::le(2));
    CHECK(!(Bound::le(2) < Bound::lt(2)));
    CHECK(Bound::le(100) < Bound::infinity());
    CHECK(Bound::infinity() <= Bound::infinity());
    CHECK(Bound::lt(-3) < Bound::le(-3));
}

TEST_CASE("intersection strictness rule matches the order minimum") {
    CHECK(intersect_min(Bound::le(5), Bound::lt(3)) == Bound::lt(3));
    CHECK(intersect_min(Bound::le(5), Bound::lt(5)) == Bound::lt(5));
    CHECK(intersect_min(Bound::le(4), Bound::le(4)) == Bound::le(4));
    CHECK(intersect_min(Bound::lt(4), Bound::le(7)) == Bound::lt(4));

    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> w(-20, 20);
    std::uniform_int_distribution<int> s(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const Bound a = s(rng) ? Bound::lt(w(rng)) : Bound::le(w(rng));
        const Bound b = s(rng) ? Bound::lt(w(rng)) : Bound::le(w(rng));
        CHECK(intersect_min(a, b) == std::min(a, b));
    }
}

TEST_CASE("zero zone") {
    const Dbm z2 = Dbm::zero(2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(z2.at(i, j) == Bound::zero());
    }
    const Dbm z4 = Dbm::zero(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(z4.at(i, j) == Bound::zero());
    }
    for (int dim = 1; dim <= 6; ++dim) CHECK(is_consistent(Dbm::zero(dim)));
    CHECK_THROWS_AS(Dbm::zero(0), std::invalid_argument);
}

TEST_CASE("canonicalize tightens via intermediate clocks") {
    // y - x0 <= 10, z - y <= 3, z - x0 <= 20; the path through y wins.
    Dbm d = Dbm::top(3);
    for (int k = 0; k < 3; ++k) d.set(k, k, Bound::zero());
    d.set(1, 0, Bound::le(10));
    d.set(2, 1, Bound::le(3));
    d.set(2, 0, Bound::le(20));

    const Dbm expected = reference_canonicalize(d);
    const Dbm got = canonicalize(d);
    CHECK(got == expected);
    CHECK(got.at(2, 0) == Bound::le(13));
    CHECK(got.canonical_flag());
}

TEST_CASE("canonicalize leaves the zero zone unchanged") {
    CHECK(canonicalize(Dbm::zero(3)) == Dbm::zero(3));
}

TEST_CASE("forced negative cycle shows up on the diagonal") {
    Dbm d = Dbm::top(2);
    for (int k = 0; k < 2; ++k) d.set(k, k, Bound::zero());
    d.set(0, 1, Bound::le(-5));
    d.set(1, 0, Bound::lt(3));
    const Dbm tight = canonicalize(d);
    CHECK(tight.at(0, 0) == Bound::lt(-2));
    CHECK(!is_consistent(tight));
    CHECK(!is_consistent(d));
}

TEST_CASE("consistency of a nonempty interval") {
    Dbm d = Dbm::top(2);
    for (int k = 0; k < 2; ++k) d.set(k, k, Bound::zero());
    d.set(1, 0, Bound::le(5));
    d.set(0, 1, Bound::le(-2));
    CHECK(is_consistent(d));
}

TEST_CASE("canonicalize is idempotent and never increases cells") {
    std::mt19937 rng(11);
    for (int round = 0; round < 200; ++round) {
        const Dbm z = random_canonical_zone(rng, 2 + round % 4, 12);
        const Dbm again = canonicalize(z);
        CHECK(again == z);
        // random raw matrix: tightening may only go down
        Dbm raw = Dbm::top(3);
        for (int k = 0; k < 3; ++k) raw.set(k, k, Bound::zero());
        std::uniform_int_distribution<std::int64_t> w(-6, 12);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i != j && round % 3 != 0) raw.set(i, j, Bound::le(w(rng)));
            }
        }
        const Dbm tight = canonicalize(raw);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) CHECK(tight.at(i, j) <= raw.at(i, j));
        }
    }
}

TEST_CASE("triangle inequality holds on consistent canonical zones") {
    std::mt19937 rng(13);
    for (int round = 0; round < 100; ++round) {
        const Dbm z = random_canonical_zone(rng, 2 + round % 4, 15);
        REQUIRE(is_consistent(z));
        CHECK(tawcet::testing::fully_canonical(z));
    }
}

TEST_CASE("intersection takes cell-wise minima and clears the flag") {
    std::mt19937 rng(17);
    const Dbm a = random_canonical_zone(rng, 3, 10);
    const Dbm b = random_canonical_zone(rng, 3, 10);
    const Dbm both = intersect(a, b);
    CHECK(!both.canonical_flag());
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(both.at(i, j) == std::min(a.at(i, j), b.at(i, j)));
            CHECK(both.at(i, j) <= a.at(i, j));
        }
    }
    CHECK(intersect(a, Dbm::top(3)) == a);
    CHECK_THROWS_AS(intersect(a, Dbm::zero(4)), std::invalid_argument);
}

TEST_CASE("delay opens upper bounds and keeps the matrix tight") {
    std::mt19937 rng(19);
    for (int round = 0; round < 100; ++round) {
        const Dbm z = random_canonical_zone(rng, 2 + round % 4, 10);
        const Dbm opened = up(z);
        CHECK(opened.canonical_flag());
        for (int i = 1; i < z.dim(); ++i) CHECK(opened.at(i, 0) == Bound::infinity());
        for (int i = 0; i < z.dim(); ++i) {
            for (int j = 1; j < z.dim(); ++j) CHECK(opened.at(i, j) == z.at(i, j));
        }
        CHECK(up(opened) == opened);
        CHECK(canonicalize(opened) == opened);
    }
    Dbm not_canonical = Dbm::top(2);
    CHECK_THROWS_AS(up(not_canonical), std::invalid_argument);
}

TEST_CASE("reset maps onto row and column zero") {
    // y = 3, z = 5, z - y = 2
    Dbm d = Dbm::top(3);
    for (int k = 0; k < 3; ++k) d.set(k, k, Bound::zero());
    d.set(1, 0, Bound::le(3));
    d.set(0, 1, Bound::le(-3));
    d.set(2, 0, Bound::le(5));
    d.set(0, 2, Bound::le(-5));
    d.set(2, 1, Bound::le(2));
    d.set(1, 2, Bound::le(-2));
    const Dbm z = canonicalize(d);
    REQUIRE(is_consistent(z));

    const std::vector<int> lambda{1};
    const Dbm after = reset(z, lambda);
    CHECK(after.at(1, 0) == Bound::le(0));
    CHECK(after.at(0, 1) == Bound::le(0));
    CHECK(after.at(2, 0) == Bound::le(5));
    CHECK(after.at(2, 1) == Bound::le(5));
    CHECK(after.at(1, 2) == Bound::le(-5));

    CHECK(reset(z, std::vector<int>{}) == z);
    CHECK_THROWS_AS(reset(z, std::vector<int>{0}), std::invalid_argument);
    CHECK_THROWS_AS(reset(z, std::vector<int>{3}), std::invalid_argument);
}

TEST_CASE("reset row/column restoration equals full tightening") {
    std::mt19937 rng(23);
    for (int round = 0; round < 200; ++round) {
        const int dim = 2 + round % 4;
        const Dbm z = random_canonical_zone(rng, dim, 12);
        std::vector<int> lambda;
        for (int c = 1; c < dim; ++c) {
            if (rng() % 2 == 0) lambda.push_back(c);
        }
        if (lambda.empty()) lambda.push_back(1 + static_cast<int>(rng() % (dim - 1)));
        const Dbm fast = reset(z, lambda);
        CHECK(fast == reference_canonicalize(fast));
        CHECK(fast.canonical_flag());
    }
}

TEST_CASE("inclusion is a partial order on canonical zones") {
    std::mt19937 rng(29);
    const Dbm zero2 = Dbm::zero(2);
    CHECK(includes(up(zero2), zero2));
    for (int round = 0; round < 100; ++round) {
        const int dim = 2 + round % 3;
        const Dbm a = random_canonical_zone(rng, dim, 10);
        const Dbm b = random_canonical_zone(rng, dim, 10);
        const Dbm c = random_canonical_zone(rng, dim, 10);
        CHECK(includes(a, a));
        if (includes(a, b) && includes(b, a)) CHECK(a == b);
        if (includes(a, b) && includes(b, c)) CHECK(includes(a, c));
        const Dbm meet = canonicalize(intersect(a, b));
        if (is_consistent(meet)) {
            CHECK(includes(a, meet));
            CHECK(includes(b, meet));
        }
    }
    Dbm flagless = Dbm::top(2);
    CHECK_THROWS_AS(includes(flagless, Dbm::zero(2)), std::invalid_argument);
}

TEST_CASE("bound reads") {
    const Dbm z = Dbm::zero(3);
    CHECK(upper_bound(z, 1) == Bound::le(0));
    CHECK(lower_bound(z, 1) == Bound::le(0));
    CHECK(upper_bound(up(z), 2) == Bound::infinity());

    Dbm d = Dbm::top(2);
    for (int k = 0; k < 2; ++k) d.set(k, k, Bound::zero());
    d.set(1, 0, Bound::le(13));
    d.set(0, 1, Bound::le(0));
    const Dbm tight = canonicalize(d);
    CHECK(upper_bound(tight, 1) == Bound::le(13));

    CHECK_THROWS_AS(upper_bound(z, 0), std::invalid_argument);
    CHECK_THROWS_AS(upper_bound(z, 3), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound(z, 0), std::invalid_argument);
}

TEST_CASE("constraint rendering") {
    Dbm d = Dbm::top(2);
    for (int k = 0; k < 2; ++k) d.set(k, k, Bound::zero());
    d.set(1, 0, Bound::le(13));
    const std::vector<std::string> names{"x0", "y"};
    const std::string text = render_constraints(d, names);
    CHECK(text.find("y - x0 <= 13") != std::string::npos);
}
