// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/bound.hpp"

#include <stdexcept>

namespace tawcet {

Bound operator+(Bound a, Bound b) {
    if (a.is_infinite() || b.is_infinite()) return Bound::infinity();
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.weight_, b.weight_, &sum)) {
        throw std::overflow_error("bound addition overflows: " + a.to_string() +
                                  " + " + b.to_string());
    }
    return Bound(sum, a.strict_ || b.strict_);
}

std::string Bound::to_string() const {
    if (is_infinite()) return "(inf, <)";
    return "(" + std::to_string(weight_) + (strict_ ? ", <)" : ", <=)");
}

Bound intersect_min(Bound a, Bound b) {
    if (a.weight() < b.weight()) return a;
    if (b.weight() < a.weight()) return b;
    if (a.strict() == b.strict()) return a;
    return Bound::lt(a.weight());
}

}  // namespace tawcet
