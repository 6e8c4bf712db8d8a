// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// dbm.hpp — difference bound matrices over a reference clock x0:
//           canonical form, consistency, inclusion, and the elementary
//           zone operations (intersection, delay, reset)
// ============================================================================

#ifndef TAWCET_DBM_HPP
#define TAWCET_DBM_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tawcet/bound.hpp"

namespace tawcet {

/// Square matrix of difference bounds over clocks {x0, x1, .., x(dim-1)}.
/// Cell (i, j) bounds x_i - x_j. Clock 0 is the reference clock, fixed at 0.
///
/// DBMs are immutable values in all pipeline code: operations take inputs
/// by value or const reference and return fresh matrices.
///
/// The `canonical` flag is advisory. It is set by the tightening operations
/// (canonicalize, the split canonicalization passes) and by the operations
/// that preserve tight form (delay, reset); it is cleared by intersection,
/// extrapolation and raw cell writes. A set flag means the matrix is closed
/// under the discipline that produced it — full shortest-path form after
/// canonicalize(), split form after the delta-aware passes. Operations with
/// a canonical precondition reject inputs whose flag is unset.
class Dbm {
public:
    /// Point zone with all clocks at 0: every cell (0, <=). Canonical.
    /// Rejects dim < 1.
    static Dbm zero(int dim);

    /// Identity element of intersection: every cell (inf, <). Used as the
    /// starting matrix for guard/invariant encodings. Not canonical.
    static Dbm top(int dim);

    int dim() const { return dim_; }

    const Bound& at(int i, int j) const { return cells_[index(i, j)]; }

    /// Raw cell write; clears the canonical flag.
    void set(int i, int j, Bound b);

    bool canonical_flag() const { return canonical_; }
    void mark_canonical(bool value) { canonical_ = value; }

    /// Cell-exact equality; the advisory flag does not participate.
    friend bool operator==(const Dbm& a, const Dbm& b) {
        return a.dim_ == b.dim_ && a.cells_ == b.cells_;
    }
    friend bool operator!=(const Dbm& a, const Dbm& b) { return !(a == b); }

    /// FNV-1a over cell contents, for hashed state stores.
    std::size_t fingerprint() const;

    /// Matrix grid, one row per line, for debugging.
    std::string to_string() const;

private:
    Dbm(int dim, Bound fill, bool canonical);

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * dim_ + j;
    }

    int dim_;
    std::vector<Bound> cells_;
    bool canonical_;

    friend Dbm canonicalize(Dbm d);
    friend Dbm intersect(const Dbm& a, const Dbm& b);
    friend Dbm up(Dbm d);
    friend Dbm reset(Dbm d, std::span<const int> clocks);
    friend class DbmCells;
};

/// Mutable cell access for the tightening algorithms; keeps flag handling
/// in one place.
class DbmCells {
public:
    explicit DbmCells(Dbm& d) : d_(d) {}
    Bound& operator()(int i, int j) { return d_.cells_[d_.index(i, j)]; }

private:
    Dbm& d_;
};

/// All-pairs tightening (Floyd-Warshall over the constraint graph). Returns
/// the tightest equivalent matrix and sets the canonical flag. Inconsistency
/// surfaces as a negative diagonal; see is_consistent.
Dbm canonicalize(Dbm d);

/// True iff no diagonal cell lies below (0, <=). Canonicalizes a copy first
/// when the canonical flag is unset.
bool is_consistent(const Dbm& d);

/// Cell-wise minimum with the four-case strictness rule. Clears the
/// canonical flag. Rejects dimension mismatch.
Dbm intersect(const Dbm& a, const Dbm& b);

/// Delay (time elapse): cells (i, 0) become (inf, <) for i != 0; everything
/// else is unchanged. Requires and preserves canonical form.
Dbm up(Dbm d);

/// Reset the given clocks to zero. Requires canonical input; the result is
/// restored to canonical form by copying row 0 / column 0 into each reset
/// clock's row/column. Rejects clock 0 and out-of-range indices.
Dbm reset(Dbm d, std::span<const int> clocks);

/// Zone inclusion: inner ⊆ outer, i.e. every cell of inner is at most the
/// corresponding cell of outer. Requires both canonical, equal dims.
bool includes(const Dbm& outer, const Dbm& inner);

/// Reads cell (clock, 0), the upper bound of the clock. Requires canonical
/// input; rejects clock 0 and out-of-range indices.
Bound upper_bound(const Dbm& d, int clock);

/// Reads cell (0, clock), the negated lower bound of the clock.
Bound lower_bound(const Dbm& d, int clock);

/// Cell-exact equality of the sub-matrices obtained by deleting one clock's
/// row and column from both operands.
bool equal_ignoring_clock(const Dbm& a, const Dbm& b, int clock);

/// Renders the finite off-diagonal cells as a constraint list, e.g.
/// "y - x0 <= 13". `names` maps matrix indices to clock names and must
/// cover the dimension; index 0 conventionally prints as "x0".
std::string render_constraints(const Dbm& d, std::span<const std::string> names);

}  // namespace tawcet

#endif  // TAWCET_DBM_HPP
