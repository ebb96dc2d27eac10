#pragma once

#include <string>

#include "hartmann/config.hpp"
#include "hartmann/estimates.hpp"
#include "hartmann/io.hpp"

namespace hartmann {

/// Exit codes shared by the CLI and the command functions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitMonotonicityLost = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitMemberFailed = 4;

/// Time-step the configured scenario, writing diagnostics.csv and per-sample
/// snapshots under out_dir.
int run_command(const RunConfig& cfg, const std::string& out_dir);

/// Randomized static check suites (Hardy, embedding, equivalence, velocity
/// bounds, membership); writes checks.csv. Exit 0 iff every hard verdict
/// passes.
int check_command(const RunConfig& cfg, const std::string& out_dir);

/// Vanishing-viscosity convergence study over cfg.eps_list; writes sweep.csv.
int sweep_command(const RunConfig& cfg, const std::string& out_dir);

/// Twin-run Gronwall/uniqueness study; writes perturb.csv.
int perturb_command(const RunConfig& cfg, const std::string& out_dir);

/// Member-run parallelism cap: HARTMANN_THREADS when set, else hardware
/// concurrency.
int member_thread_cap();

/// Baseline state scaled by (1 + amplitude) in w, with u, v, b re-derived.
State perturb_initial(const State& s0, double amplitude, const Params& p);

struct PerturbResult {
    std::vector<double> times;
    std::vector<double> gbar;
    GronwallFit fit;
    bool members_ok = false;
};

PerturbResult perturb_study(const RunConfig& cfg);

} // namespace hartmann
