// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// extrapolation.hpp — classical M/LU extrapolation operators and the
//                     observer-aware partial extrapolation with split
//                     canonicalization
// ============================================================================
//
// The observer clock (index `delta_index`) never appears in guards or
// invariants and must keep exact bounds through the whole analysis. The
// partial operators therefore treat the matrix as two constraint sets:
// "dot" cells, whose indices both differ from the observer and which are
// widened into M-form, and the observer's row/column, which is never
// extrapolated and is tightened with the full matrix.

#ifndef TAWCET_EXTRAPOLATION_HPP
#define TAWCET_EXTRAPOLATION_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "tawcet/dbm.hpp"

namespace tawcet {

/// Extrapolation constants of an automaton: the global maximum M, per-clock
/// maxima, per-clock maximal lower/upper comparison constants, and the
/// observer clock's matrix index (-1 when absent). Indexed by matrix index;
/// entry 0 describes the reference clock (all bounds 0). Clocks that are
/// never compared carry kNoConstant in `lower`/`upper` and 0 in `clock_max`.
struct BoundsContext {
    static constexpr std::int64_t kNoConstant =
        std::numeric_limits<std::int64_t>::min();

    std::int64_t global_max = 0;
    std::vector<std::int64_t> clock_max;
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
    int delta_index = -1;
};

/// Classical M-extrapolation: cells above the global maximum become (inf, <),
/// cells below its negation are raised to (-M, <). Requires canonical input;
/// clears the canonical flag.
Dbm extra_m(Dbm d, const BoundsContext& ctx);

/// Classical LU-extrapolation over per-clock lower/upper maxima. Requires
/// canonical input; clears the canonical flag.
Dbm extra_lu(Dbm d, const BoundsContext& ctx);

/// The sharper variants that also widen cells of clocks whose whole zone
/// lies above the relevant per-clock maximum.
Dbm extra_m_plus(Dbm d, const BoundsContext& ctx);
Dbm extra_lu_plus(Dbm d, const BoundsContext& ctx);

struct PartialExtrapolation {
    Dbm dbm;
    /// Cells whose value the operator changed, as (row, column) pairs.
    std::vector<std::pair<int, int>> changed;
};

/// Partial M-extrapolation: identical to extra_m on dot cells, identity on
/// every cell in the observer's row or column. Returns the changed-cell
/// list consumed by mcanon_after_extrapolation. Requires ctx.delta_index
/// to be set; clears the canonical flag.
PartialExtrapolation mextra_m(Dbm d, const BoundsContext& ctx);

/// Split canonicalization: dot cells are tightened using only dot
/// intermediates, observer cells using all intermediates. A single
/// row-major sweep, as the successor pipeline only ever feeds it matrices
/// whose slack sits in row 0 / column 0 (fresh guard and invariant cells).
/// Sets the canonical flag.
Dbm mcanon(Dbm d, const BoundsContext& ctx);

/// Post-extrapolation repair: re-tightens only the cells reported changed
/// by mextra_m, using intermediates other than the observer. Cells the
/// extrapolation did not touch already hold their final weights. Sets the
/// canonical flag.
Dbm mcanon_after_extrapolation(Dbm d, const BoundsContext& ctx,
                               std::span<const std::pair<int, int>> changed);

}  // namespace tawcet

#endif  // TAWCET_EXTRAPOLATION_HPP
