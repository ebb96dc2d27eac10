#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hartmann/outer_flow.hpp"
#include "hartmann/params.hpp"

namespace hartmann {

enum class Scenario { Run, Check, Sweep, Perturb };

/// Parsed + validated run configuration. parse_config fills defaults for
/// every missing field and rejects anything violating the Theorem 1.1
/// parameter hypotheses, naming the offending field.
struct RunConfig {
    GridSpec grid;
    Params params;
    std::vector<OuterFlowTerm> u_terms;
    std::vector<OuterFlowTerm> b_terms;
    Scenario scenario = Scenario::Run;
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    double perturb_amplitude = 0.01;
    int record_every = 1;
    unsigned long long seed = 20240518ULL;
    std::vector<double> hardy_lambdas{0.0, 0.5, 1.0, 2.0};
    std::vector<double> hardy_lambdas_trace{-1.0, -2.0};

    std::shared_ptr<OuterFlow> make_outer() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

std::string to_string(Scenario s);

} // namespace hartmann
