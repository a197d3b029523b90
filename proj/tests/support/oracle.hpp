#pragma once

// Independent checks that never touch the library numerics.

#include <cmath>
#include <functional>

namespace oracle {

// Plain long double bisection of f on [lo, hi], f(lo) and f(hi) of opposite sign.
inline long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi) {
    const bool lo_negative = f(lo) < 0;
    for (int i = 0; i < 200; ++i) {
        const long double mid = (lo + hi) / 2;
        if ((f(mid) < 0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// Expanded forms of (1 - y)(1 + y)^{q-1} = 1 divided by y.
inline long double golden_root() {
    return bisect([](long double y) { return y * y + y - 1; }, 0, 1);
}
inline long double quartic_pinch_root() {
    return bisect([](long double y) { return y * y * y + 2 * y * y - 2; }, 0, 1);
}

}  // namespace oracle
