#pragma once

#include <span>
#include <vector>

#include "vsplit/power_model.hpp"
#include "vsplit/types.hpp"

namespace vsplit {

struct BatteryParams {
    double capacity_kwh = 2.0;
    double threshold_kwh = 0.4;
    std::vector<double> initial_kwh; // one entry per vSC
};

struct CapacityParams {
    std::vector<double> vsc_mbps; // one entry per vSC
    double mbs_mbps = 35.0;
    double p_max_watts = 0.0; // grid-power normalization constant
};

struct CostWeights {
    double grid = 0.5;
    double drop = 0.5;
    /// When false the power term is raw watts instead of watts / p_max.
    bool normalize_power = true;
};

/// Outcome of one timestep under a given mode vector.
struct StepOutcome {
    double grid_watts = 0.0;
    double drop_rate = 0.0;
    double cost = 0.0;
};

/// How the offered traffic is carried for a given mode vector.
struct CarriedLoads {
    std::vector<double> vsc_loads; // carried / vsc capacity
    double mbs_load = 0.0;         // carried / mbs capacity
    double drop_rate = 0.0;        // dropped / total offered
};

/// One battery update: per vSC, min(b + e, capacity) - vsc_power * dt / 1000.
/// May return values below the threshold or below zero; feasibility is the
/// caller's judgment.
std::vector<double> battery_step(std::span<const double> batteries_kwh,
                                 std::span<const double> harvest_kwh,
                                 std::span<const SplitMode> modes,
                                 std::span<const double> loads,
                                 const NodePowerParams& vsc_params,
                                 const BatteryParams& battery,
                                 double delta_t_hours);

/// Active vSCs carry up to their radio capacity; their excess, all demand of
/// Off vSCs, and the background offer flow to the MBS, which clips at its own
/// capacity. Conserves traffic exactly: carried + dropped == offered.
CarriedLoads carried_loads(std::span<const SplitMode> modes,
                           std::span<const double> demand_mbps,
                           double mbs_background_mbps,
                           const CapacityParams& caps);

/// Weighted step cost: w1 * grid_power_term + w2 * drop_rate, with grid power
/// from mbs_power under the loads of carried_loads.
StepOutcome step_cost(std::span<const SplitMode> modes,
                      std::span<const double> demand_mbps,
                      double mbs_background_mbps, const CapacityParams& caps,
                      const NodePowerParams& mbs_params,
                      const NodePowerParams& vsc_params, const CostWeights& w);

void check_weights(const CostWeights& w);

} // namespace vsplit
