#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "vsplit/system_dynamics.hpp"
#include "vsplit/traffic_energy.hpp"
#include "vsplit/types.hpp"

namespace vsplit {

/// Fully resolved, immutable description of one experiment. A scenario always
/// carries concrete traces; synthetic generation happens at load time.
struct Scenario {
    int n_vsc = 3;
    int horizon = 21;          // K, number of control steps
    double delta_t_hours = 1.0;
    int start_day = 0;         // 0 = Monday
    double start_hour = 0.0;

    CostWeights weights;
    NodePowerParams vsc_params;
    NodePowerParams mbs_params;
    BatteryParams battery;
    CapacityParams capacity;

    SolarParams solar;
    TrafficParams traffic;
    std::string profile_name = "residential"; // "" when a custom table is given
    std::uint64_t seed = 0;

    TraceSet traces;
    bool traces_from_file = false;

    /// Demand row for step t across vSCs (helper for per-step evaluation).
    std::vector<double> demand_at(int t) const;
    std::vector<double> harvest_at(int t) const;
};

/// Parses, defaults, and validates a JSON config file. Unknown keys are
/// rejected. Throws ConfigError with the offending field path.
Scenario load_scenario(const std::filesystem::path& path);

/// Same but from an already-parsed document; relative trace paths resolve
/// against base_dir.
Scenario scenario_from_json(const nlohmann::json& doc,
                            const std::filesystem::path& base_dir);

/// Rebuilds synthetic traces from the generator parameters (used by
/// gen-traces and by load_scenario when no trace file is configured).
TraceSet make_traces(const Scenario& s, int n_steps);

/// Replaces the traces (e.g. from --traces) and re-validates coverage.
void attach_traces(Scenario& s, TraceSet traces);

/// SHA-256 over the canonical serialization of the resolved scenario;
/// stable under config key reordering.
std::string scenario_digest(const Scenario& s);

/// Step cost for a mode vector at step t (0-based), per the scenario traces.
StepOutcome scenario_step_cost(const Scenario& s,
                               std::span<const SplitMode> modes, int t);

/// Default normalization constant: MBS power at full load with every vSC in
/// CRAN at full load (the largest grid draw the model can produce).
double default_p_max(const NodePowerParams& mbs, const NodePowerParams& vsc,
                     int n_vsc);

} // namespace vsplit
