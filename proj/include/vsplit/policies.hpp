#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "vsplit/optimizer.hpp"
#include "vsplit/scenario.hpp"

namespace vsplit {

/// Baseline: keep every vSC in fixed_mode while its projected post-step
/// battery stays above the threshold, otherwise switch it off for the step.
struct StaticPolicy {
    SplitMode fixed_mode = SplitMode::Cran; // must not be Off
};

SearchResult run_policy(const StaticPolicy& policy, const Scenario& s);

/// One line of the comparison table.
struct PolicyRow {
    std::string name;
    double total_cost = 0.0;
    double grid_energy_kwh = 0.0;
    double avg_drop_rate_pct = 0.0;
    std::array<double, kNumModes> mode_rate_pct{}; // over all (vSC, step) pairs
    std::vector<std::array<double, kNumModes>> per_vsc_mode_rate_pct;
    std::uint64_t nodes_expanded = 0;
};

struct ComparisonReport {
    std::vector<PolicyRow> rows; // row 0 is the optimal run
};

/// Aggregates a finished run into comparison metrics.
PolicyRow summarize_run(const std::string& name, const SearchResult& run,
                        const Scenario& s);

/// Runs the optimizer plus each static policy on the same scenario.
ComparisonReport compare(const Scenario& s, std::span<const StaticPolicy> policies,
                         const SolveOptions& options = {});

std::string policy_name(SplitMode fixed_mode);

} // namespace vsplit
