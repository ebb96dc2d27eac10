#pragma once

#include <memory>

#include "hartmann/grid.hpp"
#include "hartmann/outer_flow.hpp"

namespace hartmann {

/// Time-stamped solution bundle. w is the primal unknown; u, v, b are always
/// re-derived from w by the recovery operations and kept consistent.
struct State {
    double t = 0.0;
    Field w, u, v, b;
    bool has_b = true; // false when sigma <= 2 and the b-integral diverges
    std::shared_ptr<const OuterFlow> outer;

    const GridSpec& grid() const { return w.grid(); }
};

} // namespace hartmann
