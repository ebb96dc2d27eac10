#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hartmann/norms.hpp"
#include "hartmann/params.hpp"
#include "hartmann/solver.hpp"

namespace hartmann {

/// Outcome of one inequality instance. pass <=> lhs <= rhs * (1 + tolerance).
struct CheckVerdict {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0; // lhs / rhs (inf when rhs = 0 and lhs > 0)
    bool pass = false;
    double tolerance = 0.0;

    static CheckVerdict make(std::string name, double lhs, double rhs, double tol);
};

// ---------------------------------------------------------------------------
// Hardy inequality

enum class HardyVariant { Decay, ZeroTrace };

/// Decaying/zero-trace y-profile with analytic derivative, sampled on the
/// y-nodes of a grid (unit x-measure).
struct YProfile {
    std::vector<double> f;  // f(y_j)
    std::vector<double> fy; // f'(y_j)
};

/// Hardy check on a y-profile with the sharp constant |2/(2 lambda + 1)|.
/// Variant Decay needs lambda > -1/2 and f -> 0; ZeroTrace needs
/// lambda < -1/2 and f(0) = 0.
CheckVerdict hardy_check(const YProfile& prof, const GridSpec& g, double lambda,
                         HardyVariant variant, double tol = 1e-3);

/// Same on a 2D field, with the y-derivative taken by the stencil.
CheckVerdict hardy_check(const Field& f, double lambda, HardyVariant variant,
                         double tol = 1e-3);

// ---------------------------------------------------------------------------
// norm equivalence (Lemmas 1.1 and 1.3)

struct EquivalenceReport {
    // (4.5), hard verdicts with delta_eff^{-2}, one per k = 0..s
    std::vector<CheckVerdict> g_k_triangle;
    // (4.1): measured sandwich ratios (constants unspecified in the paper)
    double lower_ratio = 0.0; // ||w||_Hg / (||w||_H + ||u-U||)
    double upper_ratio = 0.0; // (||w||_H + ||u-U||) / (||w||_Hg + ||d_x^s U||)
    // (4.4): per-k measured ratios lhs_k / (||d_x^k U|| + ||(1+y)^gamma g_k||)
    std::vector<double> per_k_ratio;
};

EquivalenceReport equivalence_check(const State& s, const Params& p);

// ---------------------------------------------------------------------------
// embedding (Lemma 1.4) and velocity bounds (Lemma 1.5)

/// ||f||_inf / (||f|| + ||d_x f|| + ||d_y^2 f||); DegenerateInput when f == 0.
double embedding_check(const Field& f);

struct VelocityBoundsReport {
    // measured lhs / (||w||_Hg + ||d_x^s U||) per item and per k
    std::vector<double> v_combination;   // (i),  k = 0..s-1
    std::vector<double> u_minus_U_l2;    // (ii), k = 0..s
    std::vector<double> v_over_1py_inf;  // (iii), k = 0..s-2
    std::vector<double> u_inf;           // (iv), k = 0..s-1
    std::vector<double> w_weighted_inf;  // (v), |alpha| <= s-2 (flattened)
    // (vi) alpha != (s,0) and (vii) k = s are slots of the Hg sum, so the
    // ratio against ||w||_Hg alone is <= 1 exactly; checked as verdicts.
    std::vector<CheckVerdict> slot_bounds;
    double max_ratio = 0.0; // over the measured-ratio items
};

VelocityBoundsReport velocity_bounds_check(const State& s, const Params& p);

// ---------------------------------------------------------------------------
// boundary reduction (Lemma 2.1)

struct BoundaryReduction {
    XProfile formula;  // closed-form value of d_y^order w at y = 0
    XProfile one_sided; // one-sided finite difference of the state
    double max_residual = 0.0;
};

/// order in {1, 3, 5}; order 5 only for x-independent data (the recursion
/// collapses to (d_t + 1)^2 K there).
BoundaryReduction boundary_derivative(const State& s, const Params& p, int order);

// ---------------------------------------------------------------------------
// Proposition 2.3 machinery

/// F(t) = c_P (1 + ||d_x^{s+1} U||_inf)^s + c_s sum_{l<=s/2} ||d_t^l K||_{H^{s-2l}}^2.
double F_of_t(double t, const Params& p, const OuterFlow& outer);

/// (2.011) curve at elapsed time t with E0 = ||w_0||_Hg^2 and the cumulative
/// integral of F. Throws BoundExpired at or past the finite blow-up time.
double apriori_bound(double E0, double C, const Params& p, double F_integral, double t);

/// First t > 0 where the (2.011) brace hits zero, for F == const M
/// (bisection); +inf when C == 0.
double apriori_blowup_time(double E0, double C, const Params& p, double M);

struct EnergyRateFit {
    double C = 0.0;                 // smallest C >= 0 with rate <= C ||w||^s + F
    std::vector<double> rates;      // d/dt ||w||_Hg^2, finite differences
    std::vector<double> margins;    // C ||w||^s + F - rate
};

/// Fit on a sampled series (times, hg = ||w||_Hg, F values); s is the norm
/// power in the right-hand side C ||w||_Hg^s.
EnergyRateFit energy_rate_check(const std::vector<double>& times,
                                const std::vector<double>& hg,
                                const std::vector<double>& F, int s);

struct ExistenceTimes {
    double T1 = 0.0, T2 = 0.0, T3 = 0.0, T = 0.0;
};

/// Section 3.1 Steps 1-3 with fitted constants: C for C_{s,gamma,sigma,delta},
/// C2 for C_{s,gamma}.
ExistenceTimes existence_time(double w0_hg, double M, double delta, double C,
                              double C2, const Params& p);

// ---------------------------------------------------------------------------
// maximum-principle envelopes (Section 2.4)

/// Per-sample inputs the envelopes need.
struct EnvelopeSeries {
    std::vector<double> times;
    std::vector<double> i_sup;
    std::vector<double> sigma_floor;
    std::vector<double> G; // running sup ||w||_Hg + running sup ||d_x^s U||
    std::vector<double> W; // running sup ||w||_Hg
};

struct EnvelopeReport {
    std::vector<double> upper; // (3.31)
    std::vector<double> lower; // (3.33), read as the product of the brackets
    bool upper_ok = false;
    bool lower_ok = false;
};

EnvelopeReport max_principle_envelopes(const EnvelopeSeries& series, double C);

/// Smallest C >= 0 making one envelope verdict pass across the series
/// (the (3.31) and (3.33) constants are independent generic constants).
std::optional<double> fit_envelope_upper_C(const EnvelopeSeries& series);
std::optional<double> fit_envelope_lower_C(const EnvelopeSeries& series);

// ---------------------------------------------------------------------------
// uniqueness machinery (Section 3.2)

/// || (w1-w2) - (d_y w2 / w2)(u1-u2) ||_{L2}; floor guard on state2.
double perturbation_gbar(const State& s1, const State& s2, const Params& p);

struct GronwallFit {
    double C = 0.0;
    bool uniqueness_branch = false; // gbar(0) == 0: asserts gbar stays <= 1e-10
    bool pass = false;
    double max_gbar = 0.0;
};

GronwallFit gronwall_check(const std::vector<double>& times,
                           const std::vector<double>& gbar);

// ---------------------------------------------------------------------------
// vanishing-viscosity sweep (Section 3.1 Steps 4-5)

struct SweepRow {
    double eps_hi = 0.0, eps_lo = 0.0;
    double diff_l2 = 0.0; // ||w^{eps_hi} - w^{eps_lo}||_L2 at matched final time
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::vector<double> ratios; // successive diff ratios
    std::vector<std::string> failures;
};

/// Member runs are independent; max_threads > 1 executes them concurrently
/// (results identical either way).
SweepTable epsilon_sweep(const State& s0, const Params& p,
                         const std::vector<double>& eps_list, int max_threads = 1);

} // namespace hartmann
