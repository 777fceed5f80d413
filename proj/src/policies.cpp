#include "vsplit/policies.hpp"

#include <algorithm>
#include <cmath>

namespace vsplit {

SearchResult run_policy(const StaticPolicy& policy, const Scenario& s) {
    if (policy.fixed_mode == SplitMode::Off)
        throw ConfigError("static policy mode must not be Off");

    SearchResult res;
    res.modes_per_step.reserve(static_cast<std::size_t>(s.horizon));
    res.per_step.reserve(static_cast<std::size_t>(s.horizon));
    res.batteries_per_step.reserve(static_cast<std::size_t>(s.horizon));

    std::vector<double> batteries = s.battery.initial_kwh;
    std::vector<SplitMode> modes(static_cast<std::size_t>(s.n_vsc));
    double total = 0.0;

    for (int t = 0; t < s.horizon; ++t) {
        const auto demand = s.demand_at(t);
        const auto harvest = s.harvest_at(t);

        // Per-vSC one-step lookahead: stay in fixed_mode only if the
        // projected post-step battery clears the threshold.
        for (int i = 0; i < s.n_vsc; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            const double cap_i = s.capacity.vsc_mbps[ii];
            const double load =
                cap_i > 0.0 ? std::min(demand[ii], cap_i) / cap_i : 0.0;
            const double charged =
                std::min(batteries[ii] + harvest[ii], s.battery.capacity_kwh);
            const double projected =
                charged - vsc_power(s.vsc_params, policy.fixed_mode, load) *
                              s.delta_t_hours / 1000.0;
            modes[ii] = above_threshold(projected, s.battery.threshold_kwh)
                            ? policy.fixed_mode
                            : SplitMode::Off;
        }

        const double bg = s.traces.mbs_background_mbps[static_cast<std::size_t>(t)];
        const CarriedLoads loads = carried_loads(modes, demand, bg, s.capacity);
        const StepOutcome outcome = step_cost(modes, demand, bg, s.capacity,
                                              s.mbs_params, s.vsc_params, s.weights);
        batteries = battery_step(batteries, harvest, modes, loads.vsc_loads,
                                 s.vsc_params, s.battery, s.delta_t_hours);

        total += outcome.cost;
        res.modes_per_step.push_back(modes);
        res.per_step.push_back(outcome);
        res.batteries_per_step.push_back(batteries);
    }
    res.total_cost = total;
    res.nodes_expanded = 0;
    return res;
}

PolicyRow summarize_run(const std::string& name, const SearchResult& run,
                        const Scenario& s) {
    PolicyRow row;
    row.name = name;
    row.total_cost = run.total_cost;
    row.nodes_expanded = run.nodes_expanded;

    double drop_sum = 0.0;
    for (const auto& step : run.per_step) {
        row.grid_energy_kwh += step.grid_watts * s.delta_t_hours / 1000.0;
        drop_sum += step.drop_rate;
    }
    const double steps = static_cast<double>(run.per_step.size());
    row.avg_drop_rate_pct = steps > 0 ? 100.0 * drop_sum / steps : 0.0;

    row.per_vsc_mode_rate_pct.assign(static_cast<std::size_t>(s.n_vsc), {});
    for (const auto& modes : run.modes_per_step)
        for (int i = 0; i < s.n_vsc; ++i)
            row.per_vsc_mode_rate_pct[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(modes[static_cast<std::size_t>(i)])] +=
                100.0 / steps;
    for (int m = 0; m < kNumModes; ++m) {
        double sum = 0.0;
        for (const auto& rates : row.per_vsc_mode_rate_pct)
            sum += rates[static_cast<std::size_t>(m)];
        row.mode_rate_pct[static_cast<std::size_t>(m)] = sum / s.n_vsc;
    }
    return row;
}

ComparisonReport compare(const Scenario& s, std::span<const StaticPolicy> policies,
                         const SolveOptions& options) {
    if (policies.empty())
        throw ConfigError("compare needs at least one static policy");

    ComparisonReport report;
    report.rows.push_back(summarize_run("Optimal", solve(s, options), s));
    for (const StaticPolicy& p : policies)
        report.rows.push_back(
            summarize_run(policy_name(p.fixed_mode), run_policy(p, s), s));
    return report;
}

std::string policy_name(SplitMode fixed_mode) {
    return mode_name(fixed_mode);
}

} // namespace vsplit
