#pragma once

#include "hartmann/errors.hpp"
#include "hartmann/grid.hpp"

namespace hartmann {

/// Physics + norm parameters. The (s, gamma, sigma, delta) constraints are
/// the Theorem 1.1 hypotheses; validate() names the one that is broken.
struct Params {
    int s = 4;            // norm order, even, >= 4
    double gamma = 1.0;   // base weight exponent, >= 1
    double sigma = 2.5;   // decay exponent, > gamma + 1/2
    double delta = 0.1;   // monotonicity floor level, in (0,1)
    double eps = 0.1;     // x-regularization strength
    double dt = 0.002;    // time step
    double cfl = 0.5;     // advective CFL safety factor
    double t_end = 0.1;   // horizon

    // fitted-constant knobs for F(t): P(z) = c_P (1+z)^s, C_s = c_s
    double c_P = 1.0;
    double c_s = 1.0;

    /// Division guard for a = d_y w / w: hard error below delta/2.
    double w_floor() const { return 0.5 * delta; }

    void validate() const {
        if (s < 4 || s % 2 != 0)
            throw ConfigError("params.s", "s must be even and >= 4 (Theorem 1.1 hypothesis)");
        if (s + 1 > kMaxDerivOrder)
            throw ConfigError("params.s", "s too large for the stencil library");
        if (gamma < 1.0)
            throw ConfigError("params.gamma", "gamma must be >= 1 (Theorem 1.1 hypothesis)");
        if (sigma <= gamma + 0.5)
            throw ConfigError("params.sigma",
                              "sigma must exceed gamma + 1/2 (Theorem 1.1 hypothesis)");
        if (delta <= 0.0 || delta >= 1.0)
            throw ConfigError("params.delta", "delta must lie in (0,1) (Theorem 1.1 hypothesis)");
        if (eps < 0.0) throw ConfigError("params.eps", "eps must be >= 0");
        if (dt <= 0.0) throw ConfigError("params.dt", "dt must be positive");
        if (cfl <= 0.0 || cfl > 1.0) throw ConfigError("params.cfl", "cfl must lie in (0,1]");
        if (t_end < 0.0) throw ConfigError("params.t_end", "t_end must be >= 0");
    }
};

} // namespace hartmann
