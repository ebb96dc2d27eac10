#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hartmann/params.hpp"
#include "hartmann/solver.hpp"
#include "hartmann/state.hpp"

namespace hartmann {

/// Per-state weighted-norm summary. per_alpha holds the individual
/// ||(1+y)^{gamma+a2} D^alpha w|| components of H^{s,gamma}; per_k_g the
/// ||(1+y)^gamma g_k|| column.
struct NormReport {
    double h_s_gamma = 0.0;
    double h_s_gamma_g = 0.0;
    double u_minus_U = 0.0; // H^{s,gamma-1} norm of u - U
    double sigma_floor = 0.0;
    double i_sup = 0.0;
    std::map<std::pair<int, int>, double> per_alpha;
    std::vector<double> per_k_g;
};

/// Three-part membership test for H^{s,gamma}_{sigma,delta}, with margins.
/// delta_eff = min(sigma_floor, 1/sqrt(I_sup)) is the largest delta the
/// state actually supports; it feeds the (4.5) check.
struct Membership {
    bool in_space = false;
    bool norm_finite = false;
    double floor_margin = 0.0; // sigma_floor - delta
    double i_margin = 0.0;     // 1/delta^2 - I_sup
    double delta_eff = 0.0;
};

/// u - U(t,.) as a field.
Field u_minus_U_field(const State& s);

/// Cancellation quantity g_k = d_x^k w - (d_y w / w) d_x^k (u - U).
/// Requires the floor guard (1+y)^sigma w >= delta/2; throws
/// MonotonicityLost otherwise.
Field g_k(const State& s, int k, const Params& p);

/// || f ||_{H^{s,gamma}} = sqrt( sum_{|alpha|<=s} ||(1+y)^{gamma+a2} D^alpha f||^2 ).
double norm_hs_gamma(const Field& f, int s, double gamma);

/// Same, with the per-component table filled.
double norm_hs_gamma(const Field& f, int s, double gamma,
                     std::map<std::pair<int, int>, double>& per_alpha);

/// || w ||_{H^{s,gamma}_g}: the (s,0) slot of H^{s,gamma} replaced by
/// ||(1+y)^gamma g_s||.
double norm_hs_gamma_g(const State& s, const Params& p);

/// Pointwise sum_{|alpha|<=2} ((1+y)^{sigma+a2} D^alpha w)^2 (sigma-weights,
/// squared, matching the space definition and the 1/delta^2 bound).
Field pointwise_I(const State& s, const Params& p);

/// min over the grid of (1+y)^sigma w.
double sigma_floor(const State& s, const Params& p);

Membership membership_check(const State& s, const Params& p);

/// Full per-sample report.
NormReport compute_norm_report(const State& s, const Params& p);

} // namespace hartmann
