#pragma once

#include "hartmann/estimates.hpp"

namespace hartmann {

/// Per-sample diagnostics row; the fitted-constant columns (apriori and
/// envelopes) are filled by the whole-series postprocess.
struct DiagnosticsRecord {
    double t = 0.0;
    NormReport norms;
    double energy_rate = 0.0;
    double F_value = 0.0;
    double apriori_bound = 0.0;
    double envelope_upper = 0.0;
    double envelope_lower = 0.0;
    double G = 0.0;
    double W = 0.0;
    double boundary_resid_1 = 0.0;
    double boundary_resid_3 = 0.0;
};

/// Whole-run fitted constants and verdicts.
struct RunConstants {
    double E0 = 0.0;           // ||w_0||_Hg^2
    double C_energy = 0.0;     // Prop 2.3 rate fit
    double blowup_time = 0.0;  // (2.011) brace root with fitted C
    double C_env_upper = 0.0;  // (3.31) fit
    double C_env_lower = 0.0;  // (3.33) fit
    bool env_upper_ok = false;
    bool env_lower_ok = false;
    bool apriori_ok = false;   // domination up to 0.9 * blowup_time
};

struct DiagnosedRun {
    RunSeries series;
    std::vector<DiagnosticsRecord> records;
    RunConstants constants;
};

/// Compute per-sample norms/checks and the whole-series fits for a recorded
/// trajectory.
DiagnosedRun diagnose(const RunSeries& series, const Params& p);

} // namespace hartmann
