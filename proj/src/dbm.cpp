// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/dbm.hpp"

#include <sstream>
#include <stdexcept>

namespace tawcet {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Dbm::Dbm(int dim, Bound fill, bool canonical)
    : dim_(dim),
      cells_(static_cast<std::size_t>(dim) * dim, fill),
      canonical_(canonical) {}

Dbm Dbm::zero(int dim) {
    require(dim >= 1, "Dbm::zero: dimension must be at least 1");
    return Dbm(dim, Bound::zero(), true);
}

Dbm Dbm::top(int dim) {
    require(dim >= 1, "Dbm::top: dimension must be at least 1");
    return Dbm(dim, Bound::infinity(), false);
}

void Dbm::set(int i, int j, Bound b) {
    require(i >= 0 && i < dim_ && j >= 0 && j < dim_, "Dbm::set: index out of range");
    cells_[index(i, j)] = b;
    canonical_ = false;
}

std::size_t Dbm::fingerprint() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const Bound& b : cells_) {
        mix(static_cast<std::size_t>(b.weight()));
        mix(b.strict() ? 0x9eu : 0x3au);
    }
    return h;
}

std::string Dbm::to_string() const {
    std::ostringstream out;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            if (j > 0) out << ' ';
            out << at(i, j).to_string();
        }
        out << '\n';
    }
    return out.str();
}

Dbm canonicalize(Dbm d) {
    const int n = d.dim_;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Bound via = d.cells_[d.index(i, k)] + d.cells_[d.index(k, j)];
                Bound& cell = d.cells_[d.index(i, j)];
                if (via < cell) cell = via;
            }
        }
    }
    d.canonical_ = true;
    return d;
}

namespace {

bool diagonal_ok(const Dbm& d) {
    for (int k = 0; k < d.dim(); ++k) {
        if (d.at(k, k) < Bound::zero()) return false;
    }
    return true;
}

}  // namespace

bool is_consistent(const Dbm& d) {
    if (d.canonical_flag()) return diagonal_ok(d);
    return diagonal_ok(canonicalize(d));
}

Dbm intersect(const Dbm& a, const Dbm& b) {
    require(a.dim_ == b.dim_, "intersect: dimension mismatch");
    Dbm out = a;
    for (std::size_t c = 0; c < out.cells_.size(); ++c) {
        out.cells_[c] = intersect_min(out.cells_[c], b.cells_[c]);
    }
    out.canonical_ = false;
    return out;
}

Dbm up(Dbm d) {
    require(d.canonical_, "up: input must be canonical");
    for (int i = 1; i < d.dim_; ++i) {
        d.cells_[d.index(i, 0)] = Bound::infinity();
    }
    // Tight form survives: every path that could tighten a (i, 0) cell runs
    // through another (j, 0) cell, which is also infinite.
    return d;
}

Dbm reset(Dbm d, std::span<const int> clocks) {
    require(d.canonical_, "reset: input must be canonical");
    for (int c : clocks) {
        require(c >= 1 && c < d.dim_, "reset: clock index out of range");
    }
    if (clocks.empty()) return d;

    std::vector<bool> in_set(static_cast<std::size_t>(d.dim_), false);
    for (int c : clocks) in_set[static_cast<std::size_t>(c)] = true;

    // Four-case table: a reset clock's row/column takes row 0/column 0 of
    // the input, pairs of reset clocks become (0, <=). Copying from the
    // canonical input also restores canonical form.
    Dbm out = d;
    for (int j = 0; j < d.dim_; ++j) {
        for (int k = 0; k < d.dim_; ++k) {
            const bool rj = in_set[static_cast<std::size_t>(j)];
            const bool rk = in_set[static_cast<std::size_t>(k)];
            if (!rj && !rk) continue;
            Bound value;
            if (rj && rk) {
                value = Bound::zero();
            } else if (rj) {
                value = d.cells_[d.index(0, k)];
            } else {
                value = d.cells_[d.index(j, 0)];
            }
            out.cells_[out.index(j, k)] = value;
        }
    }
    out.canonical_ = true;
    return out;
}

bool includes(const Dbm& outer, const Dbm& inner) {
    require(outer.dim() == inner.dim(), "includes: dimension mismatch");
    require(outer.canonical_flag() && inner.canonical_flag(),
            "includes: both operands must be canonical");
    for (int i = 0; i < outer.dim(); ++i) {
        for (int j = 0; j < outer.dim(); ++j) {
            if (!(inner.at(i, j) <= outer.at(i, j))) return false;
        }
    }
    return true;
}

Bound upper_bound(const Dbm& d, int clock) {
    require(d.canonical_flag(), "upper_bound: input must be canonical");
    require(clock >= 1 && clock < d.dim(), "upper_bound: clock index out of range");
    return d.at(clock, 0);
}

Bound lower_bound(const Dbm& d, int clock) {
    require(d.canonical_flag(), "lower_bound: input must be canonical");
    require(clock >= 1 && clock < d.dim(), "lower_bound: clock index out of range");
    return d.at(0, clock);
}

bool equal_ignoring_clock(const Dbm& a, const Dbm& b, int clock) {
    require(a.dim() == b.dim(), "equal_ignoring_clock: dimension mismatch");
    require(clock >= 0 && clock < a.dim(), "equal_ignoring_clock: index out of range");
    for (int i = 0; i < a.dim(); ++i) {
        if (i == clock) continue;
        for (int j = 0; j < a.dim(); ++j) {
            if (j == clock) continue;
            if (a.at(i, j) != b.at(i, j)) return false;
        }
    }
    return true;
}

std::string render_constraints(const Dbm& d, std::span<const std::string> names) {
    require(names.size() >= static_cast<std::size_t>(d.dim()),
            "render_constraints: not enough clock names");
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < d.dim(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            if (i == j) continue;
            const Bound& b = d.at(i, j);
            if (b.is_infinite()) continue;
            if (!first) out << " && ";
            first = false;
            out << names[static_cast<std::size_t>(i)] << " - "
                << names[static_cast<std::size_t>(j)]
                << (b.strict() ? " < " : " <= ") << b.weight();
        }
    }
    if (first) out << "true";
    return out.str();
}

}  // namespace tawcet
