// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/extrapolation.hpp"

#include <stdexcept>

namespace tawcet {

namespace {

constexpr std::int64_t kNone = BoundsContext::kNoConstant;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_canonical(const Dbm& d, const char* who) {
    if (!d.canonical_flag()) {
        throw std::invalid_argument(std::string(who) + ": input must be canonical");
    }
}

void require_bounds(const Dbm& d, const BoundsContext& ctx, const char* who) {
    if (ctx.clock_max.size() < static_cast<std::size_t>(d.dim()) ||
        ctx.lower.size() < static_cast<std::size_t>(d.dim()) ||
        ctx.upper.size() < static_cast<std::size_t>(d.dim())) {
        throw std::invalid_argument(std::string(who) + ": bounds context too small");
    }
}

// weight > c, where c may be kNone (minus infinity).
bool above(Bound b, std::int64_t c) {
    if (c == kNone) return true;
    return b.is_infinite() || b.weight() > c;
}

// -weight > c; false for the infinite bound.
bool neg_above(Bound b, std::int64_t c) {
    if (b.is_infinite()) return false;
    if (c == kNone) return true;
    return -b.weight() > c;
}

// The zone lies strictly above c in the clock whose row-0 cell is b:
// every admitted value exceeds c. A strict bound at exactly -c counts.
bool zone_above(Bound b, std::int64_t c) {
    if (b.is_infinite()) return false;
    if (c == kNone) return true;
    return -b.weight() > c || (-b.weight() == c && b.strict());
}

void relax(DbmCells& m, int p, int q, int k) {
    Bound via = m(p, k) + m(k, q);
    if (via < m(p, q)) m(p, q) = via;
}

}  // namespace

Dbm extra_m(Dbm d, const BoundsContext& ctx) {
    require_canonical(d, "extra_m");
    const std::int64_t m = ctx.global_max;
    DbmCells cells(d);
    for (int i = 0; i < d.dim(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            if (i == j) continue;
            Bound& b = cells(i, j);
            if (b.is_infinite()) continue;
            if (b.weight() > m) {
                b = Bound::infinity();
            } else if (b.weight() < -m) {
                b = Bound::lt(-m);
            }
        }
    }
    d.mark_canonical(false);
    return d;
}

Dbm extra_lu(Dbm d, const BoundsContext& ctx) {
    require_canonical(d, "extra_lu");
    require_bounds(d, ctx, "extra_lu");
    DbmCells cells(d);
    for (int i = 0; i < d.dim(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            if (i == j) continue;
            Bound& b = cells(i, j);
            if (above(b, ctx.lower[static_cast<std::size_t>(i)])) {
                b = Bound::infinity();
            } else if (neg_above(b, ctx.upper[static_cast<std::size_t>(j)])) {
                const std::int64_t u = ctx.upper[static_cast<std::size_t>(j)];
                b = (u == kNone) ? Bound::infinity() : Bound::lt(-u);
            }
        }
    }
    d.mark_canonical(false);
    return d;
}

Dbm extra_m_plus(Dbm d, const BoundsContext& ctx) {
    require_canonical(d, "extra_m_plus");
    require_bounds(d, ctx, "extra_m_plus");
    const Dbm in = d;
    DbmCells cells(d);
    for (int i = 0; i < d.dim(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            if (i == j) continue;
            const std::int64_t mi = ctx.clock_max[static_cast<std::size_t>(i)];
            const std::int64_t mj = ctx.clock_max[static_cast<std::size_t>(j)];
            Bound& b = cells(i, j);
            if (above(in.at(i, j), mi)) {
                b = Bound::infinity();
            } else if (zone_above(in.at(0, i), mi)) {
                b = Bound::infinity();
            } else if (i != 0 && zone_above(in.at(0, j), mj)) {
                b = Bound::infinity();
            } else if (i == 0 && neg_above(in.at(i, j), mj)) {
                b = Bound::lt(-mj);
            }
        }
    }
    d.mark_canonical(false);
    return d;
}

Dbm extra_lu_plus(Dbm d, const BoundsContext& ctx) {
    require_canonical(d, "extra_lu_plus");
    require_bounds(d, ctx, "extra_lu_plus");
    const Dbm in = d;
    DbmCells cells(d);
    for (int i = 0; i < d.dim(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            if (i == j) continue;
            const std::int64_t li = ctx.lower[static_cast<std::size_t>(i)];
            const std::int64_t uj = ctx.upper[static_cast<std::size_t>(j)];
            Bound& b = cells(i, j);
            if (above(in.at(i, j), li)) {
                b = Bound::infinity();
            } else if (zone_above(in.at(0, i), li)) {
                b = Bound::infinity();
            } else if (i != 0 && zone_above(in.at(0, j), uj)) {
                b = Bound::infinity();
            } else if (i == 0 && neg_above(in.at(0, j), uj)) {
                b = (uj == kNone) ? Bound::infinity() : Bound::lt(-uj);
            }
        }
    }
    d.mark_canonical(false);
    return d;
}

PartialExtrapolation mextra_m(Dbm d, const BoundsContext& ctx) {
    require(ctx.delta_index >= 0 && ctx.delta_index < d.dim(),
            "mextra_m: observer clock index not set");
    const std::int64_t m = ctx.global_max;
    const int obs = ctx.delta_index;
    std::vector<std::pair<int, int>> changed;
    DbmCells cells(d);
    for (int j = 0; j < d.dim(); ++j) {
        for (int k = 0; k < d.dim(); ++k) {
            if (j == k || j == obs || k == obs) continue;
            Bound& b = cells(j, k);
            if (b.is_infinite()) continue;
            if (b.weight() > m) {
                b = Bound::infinity();
                changed.emplace_back(j, k);
            } else if (b.weight() < -m) {
                b = Bound::lt(-m);
                changed.emplace_back(j, k);
            }
        }
    }
    d.mark_canonical(false);
    return PartialExtrapolation{std::move(d), std::move(changed)};
}

Dbm mcanon(Dbm d, const BoundsContext& ctx) {
    require(ctx.delta_index >= 0 && ctx.delta_index < d.dim(),
            "mcanon: observer clock index not set");
    const int obs = ctx.delta_index;
    const int n = d.dim();
    DbmCells cells(d);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == obs || q == obs) {
                for (int k = 0; k < n; ++k) relax(cells, p, q, k);
            } else {
                for (int k = 0; k < n; ++k) {
                    if (k != obs) relax(cells, p, q, k);
                }
            }
        }
    }
    d.mark_canonical(true);
    return d;
}

Dbm mcanon_after_extrapolation(Dbm d, const BoundsContext& ctx,
                               std::span<const std::pair<int, int>> changed) {
    require(ctx.delta_index >= 0 && ctx.delta_index < d.dim(),
            "mcanon_after_extrapolation: observer clock index not set");
    for (const auto& [p, q] : changed) {
        require(p >= 0 && p < d.dim() && q >= 0 && q < d.dim(),
                "mcanon_after_extrapolation: changed cell out of range");
    }
    const int obs = ctx.delta_index;
    DbmCells cells(d);
    for (int k = 0; k < d.dim(); ++k) {
        if (k == obs) continue;
        for (const auto& [p, q] : changed) relax(cells, p, q, k);
    }
    d.mark_canonical(true);
    return d;
}

}  // namespace tawcet
