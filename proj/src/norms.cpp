#include "hartmann/norms.hpp"

#include <cmath>
#include <limits>

namespace hartmann {

Field u_minus_U_field(const State& s) {
    const GridSpec& g = s.grid();
    const XProfile U = s.outer->eval_U(s.t).sample(g);
    Field out = s.u;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) out(i, j) -= U[i];
    return out;
}

Field g_k(const State& s, int k, const Params& p) {
    const GridSpec& g = s.grid();
    const double floor = sigma_floor_of(s.w, p.sigma);
    if (floor < p.w_floor()) {
        // locate the violation for the error report
        int bi = 0, bj = 0;
        double m = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= g.ny; ++j) {
            const double wy = std::pow(1.0 + g.y(j), p.sigma);
            for (int i = 0; i < g.nx; ++i)
                if (wy * s.w(i, j) < m) { m = wy * s.w(i, j); bi = i; bj = j; }
        }
        throw MonotonicityLost(s.t, bi, bj);
    }
    const Field wy = deriv_y(s.w, 1);
    const Field dxw = deriv_x(s.w, k);
    const Field dxu = deriv_x(u_minus_U_field(s), k);
    Field out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            out(i, j) = dxw(i, j) - wy(i, j) / s.w(i, j) * dxu(i, j);
    return out;
}

double norm_hs_gamma(const Field& f, int s, double gamma) {
    std::map<std::pair<int, int>, double> table;
    return norm_hs_gamma(f, s, gamma, table);
}

double norm_hs_gamma(const Field& f, int s, double gamma,
                     std::map<std::pair<int, int>, double>& per_alpha) {
    per_alpha.clear();
    double acc = 0.0;
    for (int a1 = 0; a1 <= s; ++a1)
        for (int a2 = 0; a1 + a2 <= s; ++a2) {
            const double term = weighted_l2(d_alpha(f, a1, a2), gamma + a2);
            per_alpha[{a1, a2}] = term;
            acc += term * term;
        }
    return std::sqrt(acc);
}

double norm_hs_gamma_g(const State& s, const Params& p) {
    double acc = 0.0;
    for (int a1 = 0; a1 < p.s; ++a1)
        for (int a2 = 0; a1 + a2 <= p.s; ++a2) {
            const double term = weighted_l2(d_alpha(s.w, a1, a2), p.gamma + a2);
            acc += term * term;
        }
    const double gs = weighted_l2(g_k(s, p.s, p), p.gamma);
    return std::sqrt(acc + gs * gs);
}

Field pointwise_I(const State& s, const Params& p) {
    const GridSpec& g = s.grid();
    Field out(g);
    for (int a1 = 0; a1 <= 2; ++a1)
        for (int a2 = 0; a1 + a2 <= 2; ++a2) {
            const Field d = d_alpha(s.w, a1, a2);
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j <= g.ny; ++j) {
                    const double v = std::pow(1.0 + g.y(j), p.sigma + a2) * d(i, j);
                    out(i, j) += v * v;
                }
        }
    return out;
}

double sigma_floor(const State& s, const Params& p) {
    return sigma_floor_of(s.w, p.sigma);
}

Membership membership_check(const State& s, const Params& p) {
    Membership m;
    const double floor = sigma_floor(s, p);
    const double i_sup = max_abs(pointwise_I(s, p));
    const double h = norm_hs_gamma(s.w, p.s, p.gamma);
    m.norm_finite = std::isfinite(h);
    m.floor_margin = floor - p.delta;
    m.i_margin = 1.0 / (p.delta * p.delta) - i_sup;
    m.in_space = m.norm_finite && m.floor_margin >= 0.0 && m.i_margin >= 0.0;
    m.delta_eff = floor > 0.0 ? std::min(floor, 1.0 / std::sqrt(i_sup)) : 0.0;
    return m;
}

NormReport compute_norm_report(const State& s, const Params& p) {
    NormReport r;
    r.h_s_gamma = norm_hs_gamma(s.w, p.s, p.gamma, r.per_alpha);
    r.h_s_gamma_g = norm_hs_gamma_g(s, p);
    r.u_minus_U = norm_hs_gamma(u_minus_U_field(s), p.s, p.gamma - 1.0);
    r.sigma_floor = sigma_floor(s, p);
    r.i_sup = max_abs(pointwise_I(s, p));
    r.per_k_g.resize(p.s + 1);
    for (int k = 0; k <= p.s; ++k)
        r.per_k_g[k] = weighted_l2(g_k(s, k, p), p.gamma);
    return r;
}

} // namespace hartmann
