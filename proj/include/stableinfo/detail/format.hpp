#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace stableinfo::detail {

/// Round-trippable decimal rendering (17 significant digits). Infinities
/// render as "inf"/"-inf" so they survive CSV/JSON round trips as markers.
inline std::string g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace stableinfo::detail
