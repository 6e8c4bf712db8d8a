// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/reference.hpp"
#include "tawcet/extrapolation.hpp"

using namespace tawcet;
using tawcet::testing::partially_canonical;
using tawcet::testing::random_canonical_zone;

namespace {

BoundsContext context_for(int dim, std::int64_t m, int delta = -1) {
    BoundsContext ctx;
    ctx.global_max = m;
    ctx.clock_max.assign(static_cast<std::size_t>(dim), m);
    ctx.clock_max[0] = 0;
    ctx.lower.assign(static_cast<std::size_t>(dim), m);
    ctx.upper.assign(static_cast<std::size_t>(dim), m);
    ctx.lower[0] = 0;
    ctx.upper[0] = 0;
    ctx.delta_index = delta;
    if (delta >= 1) {
        ctx.clock_max[static_cast<std::size_t>(delta)] = 0;
        ctx.lower[static_cast<std::size_t>(delta)] = BoundsContext::kNoConstant;
        ctx.upper[static_cast<std::size_t>(delta)] = BoundsContext::kNoConstant;
    }
    return ctx;
}

// Consistent canonical 3-clock zone with one cell forced to `w`.
Dbm zone_with_cell(int i, int j, Bound w) {
    Dbm d = Dbm::top(3);
    for (int k = 0; k < 3; ++k) d.set(k, k, Bound::zero());
    d.set(i, j, w);
    return canonicalize(d);
}

}  // namespace

TEST_CASE("classical M-extrapolation case table") {
    const BoundsContext ctx = context_for(3, 20);

    Dbm z = zone_with_cell(1, 0, Bound::le(30));
    CHECK(extra_m(z, ctx).at(1, 0) == Bound::infinity());

    z = zone_with_cell(0, 1, Bound::le(-25));
    CHECK(extra_m(z, ctx).at(0, 1) == Bound::lt(-20));

    z = zone_with_cell(1, 0, Bound::le(15));
    CHECK(extra_m(z, ctx).at(1, 0) == Bound::le(15));
    CHECK(!extra_m(z, ctx).canonical_flag());
}

TEST_CASE("M-extrapolation boundary weights") {
    const std::int64_t m = 20;
    const BoundsContext ctx = context_for(3, m);
    struct Case {
        Bound in;
        Bound out;
    };
    const Case upper_cases[] = {
        {Bound::le(m), Bound::le(m)},
        {Bound::lt(m), Bound::lt(m)},
        {Bound::le(m + 1), Bound::infinity()},
        {Bound::infinity(), Bound::infinity()},
    };
    for (const Case& c : upper_cases) {
        const Dbm z = zone_with_cell(1, 0, c.in);
        CHECK(extra_m(z, ctx).at(1, 0) == c.out);
    }
    const Case lower_cases[] = {
        {Bound::le(-m), Bound::le(-m)},
        {Bound::lt(-m), Bound::lt(-m)},
        {Bound::le(-m - 1), Bound::lt(-m)},
    };
    for (const Case& c : lower_cases) {
        const Dbm z = zone_with_cell(0, 1, c.in);
        CHECK(extra_m(z, ctx).at(0, 1) == c.out);
    }
}

TEST_CASE("LU-extrapolation case table") {
    // Clock y at index 1 with L(y) = 5, U(y) = 10; clock z unbounded.
    BoundsContext ctx = context_for(3, 10);
    ctx.lower = {0, 5, BoundsContext::kNoConstant};
    ctx.upper = {0, 10, BoundsContext::kNoConstant};

    Dbm z = zone_with_cell(1, 0, Bound::le(7));
    CHECK(extra_lu(z, ctx).at(1, 0) == Bound::infinity());

    z = zone_with_cell(0, 1, Bound::le(-12));
    CHECK(extra_lu(z, ctx).at(0, 1) == Bound::lt(-10));

    z = zone_with_cell(1, 0, Bound::le(4));
    CHECK(extra_lu(z, ctx).at(1, 0) == Bound::le(4));
}

TEST_CASE("plus variant widens a zone entirely above a clock maximum") {
    // M(y) = 5 for clock y at index 1; the zone sits above it: x0 - y <= -6.
    BoundsContext ctx = context_for(3, 9);
    ctx.clock_max = {0, 5, 9};

    Dbm d = Dbm::top(3);
    for (int k = 0; k < 3; ++k) d.set(k, k, Bound::zero());
    d.set(0, 1, Bound::le(-6));
    d.set(1, 0, Bound::le(8));
    d.set(2, 0, Bound::le(3));
    d.set(0, 2, Bound::le(-1));
    const Dbm z = canonicalize(d);
    const Dbm widened = extra_m_plus(z, ctx);
    CHECK(widened.at(2, 1) == Bound::infinity());  // column y, i != 0
    CHECK(widened.at(0, 1) == Bound::lt(-5));      // column y, i == 0

    // A zone below every bound passes through unchanged.
    Dbm low = Dbm::top(3);
    for (int k = 0; k < 3; ++k) low.set(k, k, Bound::zero());
    low.set(1, 0, Bound::le(3));
    low.set(0, 1, Bound::le(-1));
    low.set(2, 0, Bound::le(3));
    low.set(0, 2, Bound::zero());
    const Dbm low_z = canonicalize(low);
    CHECK(extra_m_plus(low_z, ctx) == low_z);
    CHECK(extra_lu_plus(low_z, ctx) == low_z);
}

TEST_CASE("inclusion chain over random zones") {
    std::mt19937 rng(101);
    for (int round = 0; round < 300; ++round) {
        const int dim = 2 + round % 3;
        const BoundsContext ctx = context_for(dim, 10);
        const Dbm z = random_canonical_zone(rng, dim, 15);
        const Dbm m_wide = canonicalize(extra_m(z, ctx));
        const Dbm lu_wide = canonicalize(extra_lu(z, ctx));
        const Dbm m_plus = canonicalize(extra_m_plus(z, ctx));
        const Dbm lu_plus = canonicalize(extra_lu_plus(z, ctx));
        CHECK(includes(m_wide, z));
        CHECK(includes(lu_wide, m_wide));
        CHECK(includes(m_plus, m_wide));
        CHECK(includes(lu_plus, m_plus));
    }
}

TEST_CASE("M-extrapolation is stable under re-widening") {
    std::mt19937 rng(103);
    const BoundsContext ctx = context_for(3, 8);
    for (int round = 0; round < 200; ++round) {
        const Dbm z = random_canonical_zone(rng, 3, 14);
        const Dbm twice = extra_m(canonicalize(extra_m(z, ctx)), ctx);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const Bound b = twice.at(i, j);
                const bool in_form =
                    b.is_infinite() || (b.weight() >= -8 && b.weight() <= 8);
                CHECK(in_form);
            }
        }
    }
}

TEST_CASE("partial extrapolation never touches the observer") {
    const int delta = 3;
    BoundsContext ctx = context_for(4, 20, delta);

    // Observer cell above M stays put and is not reported changed.
    Dbm d = Dbm::top(4);
    for (int k = 0; k < 4; ++k) d.set(k, k, Bound::zero());
    d.set(delta, 0, Bound::le(30));
    d.set(1, 0, Bound::le(30));
    Dbm z = canonicalize(d);
    const PartialExtrapolation pe = mextra_m(z, ctx);
    CHECK(pe.dbm.at(delta, 0) == Bound::le(30));
    CHECK(pe.dbm.at(1, 0) == Bound::infinity());
    for (const auto& [i, j] : pe.changed) {
        CHECK(i != delta);
        CHECK(j != delta);
    }
    const bool dot_changed =
        std::find(pe.changed.begin(), pe.changed.end(), std::make_pair(1, 0)) !=
        pe.changed.end();
    CHECK(dot_changed);

    // Everything within [-M, M]: identity, nothing changed.
    Dbm small = Dbm::top(4);
    for (int k = 0; k < 4; ++k) small.set(k, k, Bound::zero());
    small.set(1, 0, Bound::le(12));
    small.set(delta, 0, Bound::le(40));
    const Dbm small_z = canonicalize(small);
    const PartialExtrapolation none = mextra_m(small_z, ctx);
    CHECK(none.changed.empty());
    CHECK(none.dbm == small_z);
}

TEST_CASE("observer row and column survive bit-identically on random zones") {
    std::mt19937 rng(107);
    for (int round = 0; round < 300; ++round) {
        const int dim = 3 + round % 2;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, 9, delta);
        const Dbm z = random_canonical_zone(rng, dim, 16);
        const PartialExtrapolation pe = mextra_m(z, ctx);
        for (int k = 0; k < dim; ++k) {
            CHECK(pe.dbm.at(delta, k) == z.at(delta, k));
            CHECK(pe.dbm.at(k, delta) == z.at(k, delta));
        }
    }
}

TEST_CASE("split canonicalization on the point zone") {
    const BoundsContext ctx = context_for(3, 5, 2);
    CHECK(mcanon(Dbm::zero(3), ctx) == Dbm::zero(3));
}

TEST_CASE("split canonicalization will not resurrect widened cells") {
    // Clocks y, z and the observer; after three laps of a loop that adds 10
    // per lap with M = 20: observer <= 30, y = 0, observer = z. The widened
    // upper bound of z has no path back below infinity that avoids the
    // observer, while full canonicalization restores z <= 30.
    const int delta = 3;
    const BoundsContext ctx = context_for(4, 20, delta);

    Dbm d = Dbm::top(4);
    for (int k = 0; k < 4; ++k) d.set(k, k, Bound::zero());
    for (int j = 1; j < 4; ++j) d.set(0, j, Bound::zero());
    d.set(1, 0, Bound::zero());      // y = 0
    d.set(delta, 0, Bound::le(30));  // observer <= 30
    d.set(delta, 2, Bound::zero());  // observer - z <= 0
    d.set(2, delta, Bound::zero());  // z - observer <= 0
    const Dbm z3 = canonicalize(d);
    REQUIRE(z3.at(2, 0) == Bound::le(30));

    const PartialExtrapolation pe = mextra_m(z3, ctx);
    const Dbm split = mcanon(pe.dbm, ctx);
    CHECK(split.at(2, 0) == Bound::infinity());
    for (int k = 0; k < 4; ++k) {
        CHECK(split.at(delta, k) == z3.at(delta, k));
        CHECK(split.at(k, delta) == z3.at(k, delta));
    }

    const Dbm classical = canonicalize(pe.dbm);
    CHECK(classical.at(2, 0) == Bound::le(30));
}

TEST_CASE("split canonicalization equals the full one when the observer is slack") {
    std::mt19937 rng(109);
    for (int round = 0; round < 200; ++round) {
        const int dim = 4;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, 10, delta);
        // Dot block from a random zone; observer row infinite, column only
        // bounded by the reference clock, so no shortest path can route
        // through it.
        const Dbm dots = random_canonical_zone(rng, dim - 1, 12);
        Dbm d = Dbm::top(dim);
        for (int i = 0; i < dim - 1; ++i) {
            for (int j = 0; j < dim - 1; ++j) d.set(i, j, dots.at(i, j));
        }
        d.set(delta, delta, Bound::zero());
        d.set(0, delta, Bound::zero());
        // Guard-style tightening on the dot part.
        std::uniform_int_distribution<std::int64_t> w(0, 12);
        d.set(1, 0, intersect_min(d.at(1, 0), Bound::le(w(rng))));

        const Dbm full = canonicalize(d);
        if (!is_consistent(full)) continue;  // the pipeline discards these
        const Dbm split = mcanon(d, ctx);
        CHECK(split == full);
    }
}

TEST_CASE("post-extrapolation repair: identity on no changes") {
    const BoundsContext ctx = context_for(3, 6, 2);
    std::mt19937 rng(113);
    const Dbm z = random_canonical_zone(rng, 3, 5);
    const std::vector<std::pair<int, int>> no_changes;
    CHECK(mcanon_after_extrapolation(z, ctx, no_changes) == z);
}

TEST_CASE("post-extrapolation repair equals the split pass on random zones") {
    std::mt19937 rng(127);
    int nontrivial = 0;
    for (int round = 0; round < 500; ++round) {
        const int dim = 3 + round % 2;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, 7, delta);
        const Dbm z = random_canonical_zone(rng, dim, 14);
        const PartialExtrapolation pe = mextra_m(z, ctx);
        if (!pe.changed.empty()) ++nontrivial;
        const Dbm repaired = mcanon_after_extrapolation(pe.dbm, ctx, pe.changed);
        const Dbm split = mcanon(pe.dbm, ctx);
        CHECK(repaired == split);
    }
    CHECK(nontrivial > 100);
}

TEST_CASE("cells the extrapolation left alone keep their weights") {
    std::mt19937 rng(131);
    for (int round = 0; round < 500; ++round) {
        const int dim = 3 + round % 2;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, 7, delta);
        const Dbm z = random_canonical_zone(rng, dim, 14);
        const PartialExtrapolation pe = mextra_m(z, ctx);
        const Dbm repaired = mcanon_after_extrapolation(pe.dbm, ctx, pe.changed);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const bool touched =
                    std::find(pe.changed.begin(), pe.changed.end(),
                              std::make_pair(i, j)) != pe.changed.end();
                if (!touched) CHECK(repaired.at(i, j) == z.at(i, j));
            }
        }
        for (int k = 0; k < dim; ++k) {
            CHECK(repaired.at(delta, k) == z.at(delta, k));
            CHECK(repaired.at(k, delta) == z.at(k, delta));
        }
    }
}

TEST_CASE("split form holds after the split pass on pipeline-shaped inputs") {
    std::mt19937 rng(137);
    for (int round = 0; round < 200; ++round) {
        const int dim = 4;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, 10, delta);
        Dbm z = up(random_canonical_zone(rng, dim, 12));
        // Guard-style row/column-zero tightenings.
        std::uniform_int_distribution<std::int64_t> w(0, 10);
        std::uniform_int_distribution<int> pick(1, dim - 2);
        Dbm guard = Dbm::top(dim);
        guard.set(pick(rng), 0, Bound::le(w(rng)));
        guard.set(0, pick(rng), Bound::le(-w(rng) / 2));
        z = intersect(z, guard);
        const Dbm split = mcanon(z, ctx);
        if (!is_consistent(split)) continue;  // the pipeline discards these
        CHECK(partially_canonical(split, delta));
    }
}

TEST_CASE("observer cells cannot push dot cells out of M-form") {
    // The dot block of the split pass reads only dot cells: however wild
    // the observer's row and column are, a dot-closed M-form block comes
    // out unchanged.
    std::mt19937 rng(139);
    const std::int64_t m = 9;
    int checked = 0;
    for (int round = 0; round < 400; ++round) {
        const int dim = 4;
        const int delta = dim - 1;
        const BoundsContext ctx = context_for(dim, m, delta);
        // Dot block: random zone, widened into M-form, dot-closed.
        BoundsContext dot_ctx = context_for(dim - 1, m);
        const Dbm dots =
            canonicalize(extra_m(random_canonical_zone(rng, dim - 1, 14), dot_ctx));
        if (!is_consistent(dots)) continue;
        auto dot_in_m_form = [&](const Dbm& d) {
            for (int i = 0; i < dim - 1; ++i) {
                for (int j = 0; j < dim - 1; ++j) {
                    if (i == j) continue;
                    const Bound b = d.at(i, j);
                    if (!b.is_infinite() && (b.weight() > m || b.weight() < -m)) {
                        return false;
                    }
                }
            }
            return true;
        };
        if (!dot_in_m_form(dots)) continue;  // widening of loose cells may exceed M
        // Observer row/column: tight, huge, or slack at random.
        Dbm state = Dbm::top(dim);
        for (int i = 0; i < dim - 1; ++i) {
            for (int j = 0; j < dim - 1; ++j) state.set(i, j, dots.at(i, j));
        }
        state.set(delta, delta, Bound::zero());
        std::uniform_int_distribution<std::int64_t> big(0, 40);
        state.set(delta, 0, Bound::le(big(rng)));
        state.set(0, delta, Bound::le(-big(rng) / 4));
        state.set(delta, 1, Bound::le(big(rng)));
        const Dbm split = mcanon(state, ctx);
        ++checked;
        for (int i = 0; i < dim - 1; ++i) {
            for (int j = 0; j < dim - 1; ++j) {
                CHECK(split.at(i, j) == dots.at(i, j));
            }
        }
        CHECK(dot_in_m_form(split));
    }
    CHECK(checked > 50);
}

TEST_CASE("changed cells out of range are rejected") {
    const BoundsContext ctx = context_for(3, 5, 2);
    const std::vector<std::pair<int, int>> bad{{0, 7}};
    CHECK_THROWS_AS(mcanon_after_extrapolation(Dbm::zero(3), ctx, bad),
                    std::invalid_argument);
    BoundsContext no_delta = ctx;
    no_delta.delta_index = -1;
    CHECK_THROWS_AS(mcanon(Dbm::zero(3), no_delta), std::invalid_argument);
    CHECK_THROWS_AS(mextra_m(Dbm::zero(3), no_delta), std::invalid_argument);
}
