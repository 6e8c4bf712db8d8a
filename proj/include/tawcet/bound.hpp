// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// bound.hpp — difference bound algebra: (weight, strictness) pairs with
//             infinity, total order, and checked addition
// ============================================================================

#ifndef TAWCET_BOUND_HPP
#define TAWCET_BOUND_HPP

#include <cstdint>
#include <limits>
#include <string>

namespace tawcet {

/// One cell of a difference bound matrix: a constraint `x_i - x_j ≺ w`
/// where ≺ is `<` (strict) or `<=`. The only infinite bound is (∞, <).
///
/// Bounds are totally ordered: (c1,≺1) < (c2,≺2) iff c1 < c2, or
/// c1 = c2 and ≺1 is `<` while ≺2 is `<=`.
class Bound {
public:
    static constexpr std::int64_t kInfiniteWeight =
        std::numeric_limits<std::int64_t>::max();

    /// Default is (0, <=), the diagonal/zero bound.
    constexpr Bound() : weight_(0), strict_(false) {}

    static constexpr Bound le(std::int64_t w) { return Bound(w, false); }
    static constexpr Bound lt(std::int64_t w) { return Bound(w, true); }
    static constexpr Bound zero() { return Bound(0, false); }
    static constexpr Bound infinity() { return Bound(kInfiniteWeight, true); }

    constexpr bool is_infinite() const { return weight_ == kInfiniteWeight; }

    /// Finite weight; kInfiniteWeight for the infinite bound.
    constexpr std::int64_t weight() const { return weight_; }
    constexpr bool strict() const { return strict_; }

    friend constexpr bool operator==(Bound a, Bound b) {
        return a.weight_ == b.weight_ && a.strict_ == b.strict_;
    }
    friend constexpr bool operator!=(Bound a, Bound b) { return !(a == b); }
    friend constexpr bool operator<(Bound a, Bound b) {
        if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
        return a.strict_ && !b.strict_;
    }
    friend constexpr bool operator<=(Bound a, Bound b) { return !(b < a); }
    friend constexpr bool operator>(Bound a, Bound b) { return b < a; }
    friend constexpr bool operator>=(Bound a, Bound b) { return !(a < b); }

    /// Bound addition: weights add (infinity absorbing), the sum is strict
    /// iff either operand is strict. Throws std::overflow_error when two
    /// finite weights overflow.
    friend Bound operator+(Bound a, Bound b);

    /// Debug form: "(3, <=)", "(-2, <)", "(inf, <)".
    std::string to_string() const;

private:
    constexpr Bound(std::int64_t w, bool s) : weight_(w), strict_(s) {}

    std::int64_t weight_;
    bool strict_;
};

/// Cell-wise minimum with the four-case strictness rule for intersections:
/// take the smaller weight; on equal weights keep the shared operator, or
/// `<` when the operators differ. Coincides with std::min under the total
/// order on bounds.
Bound intersect_min(Bound a, Bound b);

}  // namespace tawcet

#endif  // TAWCET_BOUND_HPP
