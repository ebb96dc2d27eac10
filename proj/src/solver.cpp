#include "hartmann/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hartmann {

Field recover_u(const Field& w, const OuterFlow& outer, double t) {
    const GridSpec& g = w.grid();
    const XProfile U = outer.eval_U(t).sample(g);
    Field u = tail_integral_y(w);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) u(i, j) = U[i] - u(i, j);
    return u; // tail integral vanishes at y_max, so u(., y_max) = U exactly
}

Field recover_v(const Field& u) {
    return (-1.0) * cum_integral_y(deriv_x(u, 1));
}

Field recover_b(const Field& u, const OuterFlow& outer, double t, double sigma) {
    if (sigma <= 2.0) throw MagneticRecoveryUnavailable(sigma);
    const GridSpec& g = u.grid();
    const XProfile U = outer.eval_U(t).sample(g);
    const XProfile B = outer.eval_B(t).sample(g);
    Field integrand(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) integrand(i, j) = U[i] - u(i, j);
    Field b = tail_integral_y(integrand);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) b(i, j) = B[i] - b(i, j);
    return b;
}

double discrete_divergence(const Field& u, const Field& v) {
    // recover_v inverts the trapezoid exactly, so the midpoint pairing
    // (v_{j+1}-v_j)/dy + (dxu_{j+1}+dxu_j)/2 telescopes to zero.
    const GridSpec& g = u.grid();
    const Field dxu = deriv_x(u, 1);
    const double h = g.dy();
    double m = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double div = (v(i, j + 1) - v(i, j)) / h
                               + 0.5 * (dxu(i, j + 1) + dxu(i, j));
            m = std::max(m, std::abs(div));
        }
    return m;
}

double sigma_floor_of(const Field& w, double sigma) {
    const GridSpec& g = w.grid();
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= g.ny; ++j) {
        const double wy = std::pow(1.0 + g.y(j), sigma);
        for (int i = 0; i < g.nx; ++i) m = std::min(m, wy * w(i, j));
    }
    return m;
}

State init_from_profile(std::shared_ptr<const OuterFlow> outer, const Params& p,
                        const GridSpec& g) {
    p.validate();
    g.validate();
    const XProfile U0 = outer->eval_U(0.0).sample(g);
    double u_min = std::numeric_limits<double>::infinity();
    for (double u : U0) u_min = std::min(u_min, u);
    if (u_min <= 0.0)
        throw InvalidInitialData("outer flow must satisfy U(0,x) > 0");
    if (u_min * (p.sigma - 1.0) < 2.0 * p.delta)
        throw InvalidInitialData("initial floor violated: min U(0,x)*(sigma-1) = "
                                 + std::to_string(u_min * (p.sigma - 1.0))
                                 + " < 2*delta = " + std::to_string(2.0 * p.delta));
    State s;
    s.t = 0.0;
    s.outer = outer;
    s.w = Field(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            s.w(i, j) = U0[i] * (p.sigma - 1.0) * std::pow(1.0 + g.y(j), -p.sigma);
    s.u = recover_u(s.w, *outer, 0.0);
    s.v = recover_v(s.u);
    s.has_b = p.sigma > 2.0;
    s.b = s.has_b ? recover_b(s.u, *outer, 0.0, p.sigma) : Field(g);
    return s;
}

TimeStepper::TimeStepper(Params p, StepHooks hooks)
    : p_(std::move(p)), hooks_(std::move(hooks)) {
    p_.validate();
}

double TimeStepper::admissible_dt(const State& s) const {
    const GridSpec& g = s.grid();
    const double umax = max_abs(s.u);
    const double vmax = max_abs(s.v);
    double adm = std::numeric_limits<double>::infinity();
    if (umax > 0.0) adm = std::min(adm, g.dx() / umax);
    if (vmax > 0.0) adm = std::min(adm, g.dy() / vmax);
    return p_.cfl * adm;
}

Field TimeStepper::explicit_terms(const State& s) const {
    Field e = (-1.0) * (s.u * deriv_x(s.w, 1) + s.v * deriv_y(s.w, 1));
    if (p_.eps > 0.0) e = e + (p_.eps * p_.eps) * deriv_x(s.w, 2);
    if (hooks_.source) e = e + hooks_.source(s.t);
    return e;
}

State TimeStepper::step(const State& s) {
    const GridSpec& g = s.grid();
    const double dt = p_.dt;
    const double adm = admissible_dt(s);
    if (dt > adm * (1.0 + 1e-9)) throw StepRejected(adm);

    const double t_new = s.t + dt;
    const double h = g.dy();
    const double beta = 0.5 * dt / (h * h);
    const double theta = 0.5 * dt;

    const Field e_now = explicit_terms(s);
    Field e_hat = e_now;
    if (have_prev_) e_hat = 1.5 * e_now - 0.5 * prev_explicit_;

    const XProfile k_old = hooks_.bottom_flux
        ? hooks_.bottom_flux(s.t)
        : s.outer->boundary_flux_K(s.t, p_.eps).sample(g);
    const XProfile k_new = hooks_.bottom_flux
        ? hooks_.bottom_flux(t_new)
        : s.outer->boundary_flux_K(t_new, p_.eps).sample(g);
    const XProfile top_new = hooks_.top_value ? hooks_.top_value(t_new) : XProfile(g.nx, 0.0);

    const int ny = g.ny;
    const double diag = 1.0 + theta + 2.0 * beta;
    std::vector<double> dl(ny), dd(ny), du(ny), rhs(ny);

    State out;
    out.t = t_new;
    out.outer = s.outer;
    out.w = Field(g);
    out.has_b = s.has_b;

    for (int i = 0; i < g.nx; ++i) {
        // row 0: ghost node w_{-1} = w_1 - 2 dy K on both time levels
        dd[0] = diag;
        du[0] = -2.0 * beta;
        rhs[0] = (1.0 - theta) * s.w(i, 0) + dt * e_hat(i, 0)
                 + beta * (2.0 * s.w(i, 1) - 2.0 * s.w(i, 0) - 2.0 * h * k_old[i])
                 - beta * 2.0 * h * k_new[i];
        for (int j = 1; j < ny; ++j) {
            dl[j] = -beta;
            dd[j] = diag;
            du[j] = -beta;
            rhs[j] = (1.0 - theta) * s.w(i, j) + dt * e_hat(i, j)
                     + beta * (s.w(i, j + 1) - 2.0 * s.w(i, j) + s.w(i, j - 1));
        }
        rhs[ny - 1] += beta * top_new[i]; // Dirichlet neighbor at y_max

        // Thomas solve
        for (int j = 1; j < ny; ++j) {
            const double m = dl[j] / dd[j - 1];
            dd[j] -= m * du[j - 1];
            rhs[j] -= m * rhs[j - 1];
        }
        out.w(i, ny - 1) = rhs[ny - 1] / dd[ny - 1];
        for (int j = ny - 2; j >= 0; --j)
            out.w(i, j) = (rhs[j] - du[j] * out.w(i, j + 1)) / dd[j];
        out.w(i, ny) = top_new[i];
    }

    if (!out.w.finite()) throw NumericalBlowup(t_new);

    out.u = recover_u(out.w, *s.outer, t_new);
    out.v = recover_v(out.u);
    out.b = out.has_b ? recover_b(out.u, *s.outer, t_new, p_.sigma) : Field(g);

    prev_explicit_ = e_now;
    have_prev_ = true;
    return out;
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::Completed: return "completed";
        case StopReason::MonotonicityLost: return "monotonicity_lost";
        case StopReason::NumericalBlowup: return "numerical_blowup";
        case StopReason::StepRejected: return "step_rejected";
    }
    return "unknown";
}

RunSeries run(const State& s0, const Params& p, int record_every,
              const StepHooks& hooks) {
    if (record_every < 1) record_every = 1;
    RunSeries out;
    out.snapshots.push_back(s0);
    out.stop_time = s0.t;

    const int n_steps = static_cast<int>(std::ceil(p.t_end / p.dt - 1e-12));
    TimeStepper stepper(p, hooks);
    State cur = s0;
    for (int n = 1; n <= n_steps; ++n) {
        try {
            cur = stepper.step(cur);
        } catch (const NumericalBlowup& e) {
            out.reason = StopReason::NumericalBlowup;
            out.stop_time = e.t;
            return out;
        } catch (const StepRejected&) {
            out.reason = StopReason::StepRejected;
            out.stop_time = cur.t;
            return out;
        }
        if (sigma_floor_of(cur.w, p.sigma) < p.w_floor()) {
            out.reason = StopReason::MonotonicityLost;
            out.stop_time = cur.t;
            return out;
        }
        if (n % record_every == 0) out.snapshots.push_back(cur);
        out.stop_time = cur.t;
    }
    return out;
}

Field residual_momentum(const State& prev, const State& next, const Params& p) {
    const GridSpec& g = prev.grid();
    const double dt = next.t - prev.t;
    const double t_mid = 0.5 * (prev.t + next.t);
    const Field um = 0.5 * (prev.u + next.u);
    const Field vm = 0.5 * (prev.v + next.v);
    const XProfile U = prev.outer->eval_U(t_mid).sample(g);
    const XProfile px = prev.outer->pressure_gradient(t_mid, p.eps).sample(g);

    Field r = um * deriv_x(um, 1) + vm * deriv_y(um, 1)
              - deriv_y(um, 2) - (p.eps * p.eps) * deriv_x(um, 2);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            r(i, j) += (next.u(i, j) - prev.u(i, j)) / dt
                       - (U[i] - um(i, j)) + px[i];
    return r;
}

} // namespace hartmann
