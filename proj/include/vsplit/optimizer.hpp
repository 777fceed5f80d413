#pragma once

#include <cstdint>
#include <vector>

#include "vsplit/scenario.hpp"
#include "vsplit/system_dynamics.hpp"
#include "vsplit/types.hpp"

namespace vsplit {

/// A partial path through the stage graph: the mode vector applied at step t,
/// the batteries after that step, and the cost accumulated from the source.
struct PathLabel {
    int t = 0; // 0 is the artificial source (modes empty)
    std::vector<SplitMode> modes;
    std::vector<double> batteries_kwh;
    double cost_so_far = 0.0;
    const PathLabel* parent = nullptr; // non-owning
};

/// A complete feasible schedule with its per-step outcomes. Step index
/// 0..K-1 corresponds to decision steps 1..K.
struct SearchResult {
    std::vector<std::vector<SplitMode>> modes_per_step;  // [t][vsc]
    double total_cost = 0.0;
    std::vector<StepOutcome> per_step;                   // [t]
    std::vector<std::vector<double>> batteries_per_step; // [t][vsc]
    std::uint64_t nodes_expanded = 0;
    /// Incumbent bound after each improvement (filled when collect_stats).
    std::vector<double> upper_history;
};

struct SolveOptions {
    /// Discard a label when one at the same (t, mode-vector) key has cost <=
    /// and batteries component-wise >=. Sound; the batteries make labels
    /// path-dependent, so the plain per-node comparison is not.
    bool use_dominance = true;
    /// Prune children that cannot beat the incumbent bound.
    bool use_upper_prune = true;
    /// Extend the incumbent test with a per-step-minimum completion bound.
    bool use_completion_bound = true;
    /// Seed the incumbent with the best feasible static policy.
    bool warm_start = true;
    /// Visit children cheapest arc first instead of in mode-vector order.
    bool sort_children = true;
    /// Literal label-correcting bookkeeping: one best-known cost per
    /// (t, mode-vector) node and natural child order. Ignores battery state
    /// in the label comparison, so it can return suboptimal schedules when
    /// the battery constraint binds; kept for fidelity experiments.
    bool fidelity_mode = false;
    /// Record upper_history in the result.
    bool collect_stats = false;
};

/// Minimum-cost feasible mode sequence over the scenario horizon via
/// depth-first label-correcting search. Throws InfeasibleError when every
/// sequence violates the battery constraint.
SearchResult solve(const Scenario& s, const SolveOptions& options = {});

/// Exhaustive oracle: enumerates all mode sequences in lexicographic order,
/// filters by battery feasibility, returns the minimum-cost one. Refuses to
/// run when 4^(N*K) exceeds max_sequences.
SearchResult brute_force(const Scenario& s,
                         std::uint64_t max_sequences = 10'000'000);

/// All battery-feasible children of a label, in ascending mode-vector order.
/// Children carry arc cost f(S_{t+1}, t+1) accumulated into cost_so_far.
std::vector<PathLabel> expand(const PathLabel& label, const Scenario& s);

} // namespace vsplit
