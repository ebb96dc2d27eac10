#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hartmann/params.hpp"
#include "hartmann/state.hpp"

namespace hartmann {

// ---------------------------------------------------------------------------
// recovery operations (w is primal; u, v, b are derived)

/// u = U(t,.) - tail integral of w; u(., y_max) = U exactly.
Field recover_u(const Field& w, const OuterFlow& outer, double t);

/// v = -cumulative integral of d_x u; v(., 0) = 0 exactly.
Field recover_v(const Field& u);

/// b = B(t,.) - tail integral of (U - u). Throws MagneticRecoveryUnavailable
/// when sigma <= 2 (the built-in family then makes U - u non-integrable).
Field recover_b(const Field& u, const OuterFlow& outer, double t, double sigma);

/// Max over cell midpoints of the matched-pairing divergence of (u, v);
/// zero to round-off by construction of recover_v.
double discrete_divergence(const Field& u, const Field& v);

/// Built-in initial family w0 = U(0,x) (sigma-1) (1+y)^{-sigma} with u, v, b
/// recovered. Throws InvalidInitialData when min U(0,x) (sigma-1) < 2 delta.
State init_from_profile(std::shared_ptr<const OuterFlow> outer, const Params& p,
                        const GridSpec& g);

/// min over the grid of (1+y)^sigma w (signed).
double sigma_floor_of(const Field& w, double sigma);

// ---------------------------------------------------------------------------
// time stepping

/// Optional per-test overrides: a manufactured source for the vorticity
/// equation and exact boundary data replacing the defaults (flux K at y = 0,
/// zero at y = y_max).
struct StepHooks {
    std::function<Field(double)> source;            // S(t) added to d_t w
    std::function<XProfile(double)> bottom_flux;    // d_y w | y=0
    std::function<XProfile(double)> top_value;      // w | y=y_max
};

/// One IMEX step of the regularized vorticity equation:
/// d_y^2 and -w implicit (Crank-Nicolson, one tridiagonal solve per column),
/// advection and eps^2 d_x^2 explicit (AB2 after an initial Euler step).
/// Neumann flux at y = 0 through a 2nd-order ghost node, Dirichlet at y_max.
class TimeStepper {
public:
    TimeStepper(Params p, StepHooks hooks = {});

    /// Advance one step of p.dt. Throws StepRejected on CFL violation and
    /// NumericalBlowup on NaN/Inf.
    State step(const State& s);

    /// Largest dt the advective CFL allows for this state.
    double admissible_dt(const State& s) const;

    void reset_history() { have_prev_ = false; }

private:
    Params p_;
    StepHooks hooks_;
    Field prev_explicit_;
    bool have_prev_ = false;

    Field explicit_terms(const State& s) const;
};

enum class StopReason { Completed, MonotonicityLost, NumericalBlowup, StepRejected };

std::string to_string(StopReason r);

/// Recorded trajectory: state snapshots every record_every steps (plus the
/// initial one), with the stop reason if the run ended early.
struct RunSeries {
    std::vector<State> snapshots;
    StopReason reason = StopReason::Completed;
    double stop_time = 0.0;
};

/// Repeated stepping with snapshot recording; stops early when the floor
/// guard fails (MonotonicityLost), on NaN/Inf, or on CFL rejection.
RunSeries run(const State& s0, const Params& p, int record_every = 1,
              const StepHooks& hooks = {});

/// Pointwise residual of the regularized momentum equation evaluated between
/// two consecutive snapshots (centered in time at the midpoint).
Field residual_momentum(const State& prev, const State& next, const Params& p);

} // namespace hartmann
