#include "hartmann/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace hartmann {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trapz_y(const std::vector<double>& f, const GridSpec& g) {
    double acc = 0.0;
    for (int j = 0; j <= g.ny; ++j) acc += trapz_weight(g, j) * f[j];
    return acc;
}

void require_floor(const State& s, const Params& p) {
    const GridSpec& g = s.grid();
    double m = kInf;
    int bi = 0, bj = 0;
    for (int j = 0; j <= g.ny; ++j) {
        const double wy = std::pow(1.0 + g.y(j), p.sigma);
        for (int i = 0; i < g.nx; ++i)
            if (wy * s.w(i, j) < m) { m = wy * s.w(i, j); bi = i; bj = j; }
    }
    if (m < p.w_floor()) throw MonotonicityLost(s.t, bi, bj);
}

} // namespace

CheckVerdict CheckVerdict::make(std::string name, double lhs, double rhs, double tol) {
    CheckVerdict v;
    v.name = std::move(name);
    v.lhs = lhs;
    v.rhs = rhs;
    v.tolerance = tol;
    v.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
    v.pass = lhs <= rhs * (1.0 + tol);
    return v;
}

// ---------------------------------------------------------------------------
// Hardy

CheckVerdict hardy_check(const YProfile& prof, const GridSpec& g, double lambda,
                         HardyVariant variant, double tol) {
    if (std::abs(lambda + 0.5) < 1e-12) throw UnsupportedExponent(lambda);
    const int n = g.ny;
    double fmax = 0.0;
    for (double x : prof.f) fmax = std::max(fmax, std::abs(x));
    if (variant == HardyVariant::Decay) {
        if (lambda < -0.5) throw HypothesisFailed("decay variant needs lambda > -1/2");
        if (fmax > 0.0 && std::abs(prof.f[n]) > 1e-3 * fmax)
            throw HypothesisFailed("profile does not vanish at y_max");
    } else {
        if (lambda > -0.5) throw HypothesisFailed("zero-trace variant needs lambda < -1/2");
        if (std::abs(prof.f[0]) > 1e-12 * std::max(fmax, 1.0))
            throw HypothesisFailed("profile does not vanish at y = 0");
    }
    std::vector<double> lhs_sq(n + 1), rhs_sq(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double y1 = 1.0 + g.y(j);
        lhs_sq[j] = std::pow(y1, 2.0 * lambda) * prof.f[j] * prof.f[j];
        rhs_sq[j] = std::pow(y1, 2.0 * lambda + 2.0) * prof.fy[j] * prof.fy[j];
    }
    const double c = std::abs(2.0 / (2.0 * lambda + 1.0));
    const double lhs = std::sqrt(trapz_y(lhs_sq, g));
    const double rhs = c * std::sqrt(trapz_y(rhs_sq, g));
    return CheckVerdict::make("hardy(lambda=" + std::to_string(lambda) + ")", lhs, rhs, tol);
}

CheckVerdict hardy_check(const Field& f, double lambda, HardyVariant variant, double tol) {
    if (std::abs(lambda + 0.5) < 1e-12) throw UnsupportedExponent(lambda);
    const GridSpec& g = f.grid();
    const double fmax = max_abs(f);
    double edge = 0.0;
    if (variant == HardyVariant::Decay) {
        if (lambda < -0.5) throw HypothesisFailed("decay variant needs lambda > -1/2");
        for (int i = 0; i < g.nx; ++i) edge = std::max(edge, std::abs(f(i, g.ny)));
        if (fmax > 0.0 && edge > 1e-3 * fmax)
            throw HypothesisFailed("field does not vanish at y_max");
    } else {
        if (lambda > -0.5) throw HypothesisFailed("zero-trace variant needs lambda < -1/2");
        for (int i = 0; i < g.nx; ++i) edge = std::max(edge, std::abs(f(i, 0)));
        if (edge > 1e-12 * std::max(fmax, 1.0))
            throw HypothesisFailed("field does not vanish at y = 0");
    }
    const double c = std::abs(2.0 / (2.0 * lambda + 1.0));
    const double lhs = weighted_l2(f, lambda);
    const double rhs = c * weighted_l2(deriv_y(f, 1), lambda + 1.0);
    return CheckVerdict::make("hardy(lambda=" + std::to_string(lambda) + ")", lhs, rhs, tol);
}

// ---------------------------------------------------------------------------
// equivalence

EquivalenceReport equivalence_check(const State& s, const Params& p) {
    require_floor(s, p);
    EquivalenceReport rep;
    const Membership mem = membership_check(s, p);
    const double de2 = 1.0 / (mem.delta_eff * mem.delta_eff);
    const Field uU = u_minus_U_field(s);

    for (int k = 0; k <= p.s; ++k) {
        const double lhs = weighted_l2(g_k(s, k, p), p.gamma);
        const double rhs = weighted_l2(deriv_x(s.w, k), p.gamma)
                           + de2 * weighted_l2(deriv_x(uU, k), p.gamma - 1.0);
        rep.g_k_triangle.push_back(
            CheckVerdict::make("(4.5) k=" + std::to_string(k), lhs, rhs, 1e-12));

        const double lhs44 = weighted_l2(deriv_x(s.w, k), p.gamma)
                             + weighted_l2(deriv_x(uU, k), p.gamma - 1.0);
        const double den44 = s.outer->eval_U(s.t, k).l2_norm()
                             + weighted_l2(g_k(s, k, p), p.gamma);
        rep.per_k_ratio.push_back(den44 > 0.0 ? lhs44 / den44 : 0.0);
    }

    const double h = norm_hs_gamma(s.w, p.s, p.gamma);
    const double hg = norm_hs_gamma_g(s, p);
    const double uUn = norm_hs_gamma(uU, p.s, p.gamma - 1.0);
    const double dxsU = s.outer->eval_U(s.t, p.s).l2_norm();
    rep.lower_ratio = (h + uUn) > 0.0 ? hg / (h + uUn) : 0.0;
    rep.upper_ratio = (hg + dxsU) > 0.0 ? (h + uUn) / (hg + dxsU) : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// embedding

double embedding_check(const Field& f) {
    const double num = max_abs(f);
    const double den = weighted_l2(f, 0.0) + weighted_l2(deriv_x(f, 1), 0.0)
                       + weighted_l2(deriv_y(f, 2), 0.0);
    if (den == 0.0) {
        if (num == 0.0) throw DegenerateInput("embedding ratio undefined for f == 0");
        return kInf;
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// velocity bounds

VelocityBoundsReport velocity_bounds_check(const State& s, const Params& p) {
    require_floor(s, p);
    VelocityBoundsReport rep;
    const GridSpec& g = s.grid();
    const double hg = norm_hs_gamma_g(s, p);
    const double dxsU = s.outer->eval_U(s.t, p.s).l2_norm();
    const double den = hg + dxsU;
    const Field uU = u_minus_U_field(s);

    auto ratio = [&](double lhs) { return den > 0.0 ? lhs / den : 0.0; };

    for (int k = 0; k <= p.s - 1; ++k) {
        const Field dxv = deriv_x(s.v, k);
        const XProfile u_k1 = s.outer->eval_U(s.t, k + 1).sample(g);
        Field comb(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j <= g.ny; ++j)
                comb(i, j) = (dxv(i, j) + g.y(j) * u_k1[i]) / (1.0 + g.y(j));
        rep.v_combination.push_back(ratio(weighted_l2(comb, 0.0)));
    }
    for (int k = 0; k <= p.s; ++k)
        rep.u_minus_U_l2.push_back(ratio(weighted_l2(deriv_x(uU, k), p.gamma - 1.0)));
    for (int k = 0; k <= p.s - 2; ++k)
        rep.v_over_1py_inf.push_back(ratio(weighted_max_abs(deriv_x(s.v, k), -1.0)));
    for (int k = 0; k <= p.s - 1; ++k)
        rep.u_inf.push_back(ratio(max_abs(deriv_x(s.u, k))));
    for (int a1 = 0; a1 <= p.s - 2; ++a1)
        for (int a2 = 0; a1 + a2 <= p.s - 2; ++a2)
            rep.w_weighted_inf.push_back(
                hg > 0.0 ? weighted_max_abs(d_alpha(s.w, a1, a2), p.gamma + a2) / hg : 0.0);

    // (vi) alpha != (s,0) and (vii) k = s: exact slots of the Hg sum
    for (int a1 = 0; a1 <= p.s; ++a1)
        for (int a2 = 0; a1 + a2 <= p.s; ++a2) {
            if (a1 == p.s && a2 == 0) continue;
            rep.slot_bounds.push_back(CheckVerdict::make(
                "(4.52) alpha=(" + std::to_string(a1) + "," + std::to_string(a2) + ")",
                weighted_l2(d_alpha(s.w, a1, a2), p.gamma + a2), hg, 1e-12));
        }
    rep.slot_bounds.push_back(CheckVerdict::make(
        "(4.51) k=s", weighted_l2(g_k(s, p.s, p), p.gamma), hg, 1e-12));

    for (const auto& vec : {rep.v_combination, rep.u_minus_U_l2, rep.v_over_1py_inf,
                            rep.u_inf, rep.w_weighted_inf})
        for (double r : vec) rep.max_ratio = std::max(rep.max_ratio, r);
    return rep;
}

// ---------------------------------------------------------------------------
// boundary reduction

BoundaryReduction boundary_derivative(const State& s, const Params& p, int order) {
    const GridSpec& g = s.grid();
    const OuterFlow& outer = *s.outer;
    BoundaryReduction out;

    if (order == 1) {
        out.formula = outer.boundary_flux_K(s.t, p.eps).sample(g);
    } else if (order == 3) {
        TrigPoly base = outer.k_time_derivative(s.t, p.eps, 1);
        base += outer.boundary_flux_K(s.t, p.eps).deriv(2).scaled(-p.eps * p.eps);
        base += outer.boundary_flux_K(s.t, p.eps);
        out.formula = base.sample(g);
        const Field dxw = deriv_x(s.w, 1);
        for (int i = 0; i < g.nx; ++i)
            out.formula[i] += s.w(i, 0) * dxw(i, 0);
    } else if (order == 5) {
        if (!outer.x_independent())
            throw UnsupportedCase("order-5 reduction requires an x-independent outer flow");
        double span = 0.0;
        for (int j = 0; j <= g.ny; ++j) {
            double lo = s.w(0, j), hi = s.w(0, j);
            for (int i = 1; i < g.nx; ++i) {
                lo = std::min(lo, s.w(i, j));
                hi = std::max(hi, s.w(i, j));
            }
            span = std::max(span, hi - lo);
        }
        if (span > 1e-8 * (1.0 + max_abs(s.w)))
            throw UnsupportedCase("order-5 reduction requires x-independent data");
        TrigPoly base = outer.k_time_derivative(s.t, p.eps, 2);
        base += outer.k_time_derivative(s.t, p.eps, 1).scaled(2.0);
        base += outer.boundary_flux_K(s.t, p.eps);
        out.formula = base.sample(g);
    } else {
        throw UnsupportedCase("boundary reduction implemented for orders 1, 3, 5");
    }

    out.one_sided = wall_normal_derivative(s.w, order);
    for (int i = 0; i < g.nx; ++i)
        out.max_residual = std::max(out.max_residual,
                                    std::abs(out.formula[i] - out.one_sided[i]));
    return out;
}

// ---------------------------------------------------------------------------
// Proposition 2.3

double F_of_t(double t, const Params& p, const OuterFlow& outer) {
    const double z = outer.eval_U(t, p.s + 1).sup_norm();
    double acc = p.c_P * std::pow(1.0 + z, p.s);
    for (int l = 0; l <= p.s / 2; ++l) {
        const double h = outer.k_time_derivative(t, p.eps, l).h_norm(p.s - 2 * l);
        acc += p.c_s * h * h;
    }
    return acc;
}

double apriori_bound(double E0, double C, const Params& p, double F_integral, double t) {
    const double A = E0 + F_integral;
    const double ex = 0.5 * (p.s - 2);
    const double brace = 1.0 - C * (0.5 * p.s - 1.0) * std::pow(A, ex) * t;
    if (brace <= 0.0) {
        const double tb = C > 0.0 ? 1.0 / (C * (0.5 * p.s - 1.0) * std::pow(A, ex)) : kInf;
        throw BoundExpired(tb);
    }
    return A * std::pow(brace, -2.0 / (p.s - 2));
}

double apriori_blowup_time(double E0, double C, const Params& p, double M) {
    if (C <= 0.0) return kInf;
    const double ex = 0.5 * (p.s - 2);
    auto brace = [&](double t) {
        return 1.0 - C * (0.5 * p.s - 1.0) * std::pow(E0 + M * t, ex) * t;
    };
    double hi = 1e-9;
    while (brace(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e15) return kInf;
    }
    double lo = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (brace(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

EnergyRateFit energy_rate_check(const std::vector<double>& times,
                                const std::vector<double>& hg,
                                const std::vector<double>& F, int s) {
    const size_t n = times.size();
    if (n < 3) throw DegenerateInput("energy rate fit needs at least 3 samples");
    EnergyRateFit fit;
    std::vector<double> E(n);
    for (size_t i = 0; i < n; ++i) E[i] = hg[i] * hg[i];
    fit.rates.resize(n);
    fit.rates[0] = (E[1] - E[0]) / (times[1] - times[0]);
    for (size_t i = 1; i + 1 < n; ++i)
        fit.rates[i] = (E[i + 1] - E[i - 1]) / (times[i + 1] - times[i - 1]);
    fit.rates[n - 1] = (E[n - 1] - E[n - 2]) / (times[n - 1] - times[n - 2]);

    double C = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double pw = std::pow(hg[i], s);
        if (pw > 0.0) C = std::max(C, (fit.rates[i] - F[i]) / pw);
    }
    fit.C = C;
    fit.margins.resize(n);
    for (size_t i = 0; i < n; ++i)
        fit.margins[i] = C * std::pow(hg[i], s) + F[i] - fit.rates[i];
    return fit;
}

ExistenceTimes existence_time(double w0_hg, double M, double delta, double C,
                              double C2, const Params& p) {
    ExistenceTimes t;
    auto safe_div = [](double num, double den) { return den > 0.0 ? num / den : kInf; };

    const double first = safe_div(3.0 * w0_hg * w0_hg, C * M);
    const double second = safe_div(1.0 - std::pow(2.0, 2.0 - p.s),
                                   std::pow(2.0, p.s - 2.0) * C * std::pow(w0_hg, p.s - 2.0));
    t.T1 = std::min(first, second);

    const double N = 1.0 + 4.0 * w0_hg + M;
    t.T2 = std::min({t.T1,
                     safe_div(1.0, 64.0 * delta * delta * C2 * (1.0 + 4.0 * w0_hg) * w0_hg * w0_hg),
                     safe_div(std::numbers::ln2, C * N)});
    t.T3 = std::min({t.T1, safe_div(delta, 8.0 * C2 * w0_hg),
                     safe_div(1.0, 6.0 * C * N), safe_div(std::numbers::ln2, C * N)});
    t.T = std::min({t.T1, t.T2, t.T3});
    return t;
}

// ---------------------------------------------------------------------------
// envelopes

EnvelopeReport max_principle_envelopes(const EnvelopeSeries& se, double C) {
    EnvelopeReport rep;
    const size_t n = se.times.size();
    rep.upper.resize(n);
    rep.lower.resize(n);
    const double I0 = se.i_sup[0];
    const double floor0 = se.sigma_floor[0];
    rep.upper_ok = rep.lower_ok = true;
    for (size_t i = 0; i < n; ++i) {
        const double tau = se.times[i] - se.times[0];
        const double grow = C * (1.0 + se.G[i]) * tau;
        rep.upper[i] = std::max(I0, 6.0 * C * C * se.W[i] * se.W[i]) * std::exp(grow);
        rep.lower[i] = (1.0 - grow * std::exp(grow)) * (floor0 - C * se.W[i] * tau);
        if (se.i_sup[i] > rep.upper[i] * (1.0 + 1e-9)) rep.upper_ok = false;
        if (se.sigma_floor[i] < rep.lower[i] - 1e-9 * std::abs(floor0)) rep.lower_ok = false;
    }
    return rep;
}

std::optional<double> fit_envelope_upper_C(const EnvelopeSeries& se) {
    const double I0 = se.i_sup[0];
    if (I0 <= 0.0) {
        for (double v : se.i_sup)
            if (v > 0.0) return std::nullopt;
        return 0.0;
    }
    double C = 0.0;
    for (size_t i = 1; i < se.times.size(); ++i) {
        const double tau = se.times[i] - se.times[0];
        if (tau <= 0.0 || se.i_sup[i] <= I0) continue;
        C = std::max(C, std::log(se.i_sup[i] / I0) / ((1.0 + se.G[i]) * tau));
    }
    return C * (1.0 + 1e-12);
}

std::optional<double> fit_envelope_lower_C(const EnvelopeSeries& se) {
    auto feasible = [&](double C) { return max_principle_envelopes(se, C).lower_ok; };
    if (feasible(0.0)) return 0.0;
    double found = -1.0;
    for (double C = 1e-8; C <= 1e4; C *= 1.25)
        if (feasible(C)) { found = C; break; }
    if (found < 0.0) return std::nullopt;
    double lo = 0.0, hi = found;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// uniqueness

double perturbation_gbar(const State& s1, const State& s2, const Params& p) {
    require_floor(s2, p);
    const GridSpec& g = s2.grid();
    const Field wy2 = deriv_y(s2.w, 1);
    Field gbar(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            gbar(i, j) = (s1.w(i, j) - s2.w(i, j))
                         - wy2(i, j) / s2.w(i, j) * (s1.u(i, j) - s2.u(i, j));
    return weighted_l2(gbar, 0.0);
}

GronwallFit gronwall_check(const std::vector<double>& times,
                           const std::vector<double>& gbar) {
    if (times.size() < 3) throw DegenerateInput("Gronwall fit needs at least 3 samples");
    GronwallFit fit;
    for (double v : gbar) fit.max_gbar = std::max(fit.max_gbar, v);
    const double g0 = gbar[0];
    if (g0 <= 1e-14) {
        fit.uniqueness_branch = true;
        fit.C = 0.0;
        fit.pass = fit.max_gbar <= 1e-10;
        return fit;
    }
    double C = 0.0;
    for (size_t i = 1; i < times.size(); ++i) {
        const double tau = times[i] - times[0];
        if (tau <= 0.0 || gbar[i] <= g0) continue;
        C = std::max(C, 2.0 * std::log(gbar[i] / g0) / tau);
    }
    fit.C = C;
    fit.pass = std::isfinite(C);
    return fit;
}

// ---------------------------------------------------------------------------
// epsilon sweep

SweepTable epsilon_sweep(const State& s0, const Params& p,
                         const std::vector<double>& eps_list, int max_threads) {
    SweepTable table;
    const int n = static_cast<int>(eps_list.size());
    std::vector<std::optional<Field>> finals(n);
    std::vector<std::string> notes(n);
    const int n_steps = static_cast<int>(std::ceil(p.t_end / p.dt - 1e-12));
    auto member = [&](int m) {
        Params pm = p;
        pm.eps = eps_list[m];
        const RunSeries rs = run(s0, pm, std::max(1, n_steps));
        if (rs.reason != StopReason::Completed) {
            notes[m] = "eps=" + std::to_string(eps_list[m]) + ": " + to_string(rs.reason);
            return;
        }
        finals[m] = rs.snapshots.back().w;
    };
    const int cap = std::max(1, std::min(max_threads, n));
    if (cap == 1) {
        for (int m = 0; m < n; ++m) member(m);
    } else {
        for (int start = 0; start < n; start += cap) {
            std::vector<std::future<void>> futs;
            for (int m = start; m < std::min(start + cap, n); ++m)
                futs.push_back(std::async(std::launch::async, member, m));
            for (auto& f : futs) f.get();
        }
    }
    for (const std::string& note : notes)
        if (!note.empty()) table.failures.push_back(note);
    for (int m = 0; m + 1 < n; ++m) {
        if (!finals[m] || !finals[m + 1]) continue;
        SweepRow row;
        row.eps_hi = eps_list[m];
        row.eps_lo = eps_list[m + 1];
        row.diff_l2 = weighted_l2(*finals[m] - *finals[m + 1], 0.0);
        table.rows.push_back(row);
    }
    for (size_t r = 0; r + 1 < table.rows.size(); ++r)
        table.ratios.push_back(table.rows[r + 1].diff_l2 > 0.0
                                   ? table.rows[r].diff_l2 / table.rows[r + 1].diff_l2
                                   : kInf);
    return table;
}

} // namespace hartmann
