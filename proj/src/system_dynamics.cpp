#include "vsplit/system_dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace vsplit {

std::vector<double> battery_step(std::span<const double> batteries_kwh,
                                 std::span<const double> harvest_kwh,
                                 std::span<const SplitMode> modes,
                                 std::span<const double> loads,
                                 const NodePowerParams& vsc_params,
                                 const BatteryParams& battery,
                                 double delta_t_hours) {
    assert(batteries_kwh.size() == harvest_kwh.size());
    assert(batteries_kwh.size() == modes.size());
    assert(batteries_kwh.size() == loads.size());

    std::vector<double> next(batteries_kwh.size());
    for (std::size_t i = 0; i < batteries_kwh.size(); ++i) {
        const double charged =
            std::min(batteries_kwh[i] + harvest_kwh[i], battery.capacity_kwh);
        const double draw_kwh =
            vsc_power(vsc_params, modes[i], loads[i]) * delta_t_hours / 1000.0;
        next[i] = charged - draw_kwh;
    }
    return next;
}

CarriedLoads carried_loads(std::span<const SplitMode> modes,
                           std::span<const double> demand_mbps,
                           double mbs_background_mbps,
                           const CapacityParams& caps) {
    assert(modes.size() == demand_mbps.size());
    assert(caps.vsc_mbps.size() >= modes.size());

    CarriedLoads out;
    out.vsc_loads.assign(modes.size(), 0.0);

    double offered_mbs = mbs_background_mbps;
    double total_offered = mbs_background_mbps;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double demand = demand_mbps[i];
        total_offered += demand;
        if (is_active(modes[i])) {
            const double cap = caps.vsc_mbps[i];
            const double carried = std::min(demand, cap);
            out.vsc_loads[i] = cap > 0.0 ? carried / cap : 0.0;
            offered_mbs += demand - carried;
        } else {
            offered_mbs += demand;
        }
    }

    const double carried_mbs = std::min(offered_mbs, caps.mbs_mbps);
    out.mbs_load = caps.mbs_mbps > 0.0 ? carried_mbs / caps.mbs_mbps : 0.0;
    const double dropped = offered_mbs - carried_mbs;
    out.drop_rate = total_offered > 0.0 ? dropped / total_offered : 0.0;
    return out;
}

StepOutcome step_cost(std::span<const SplitMode> modes,
                      std::span<const double> demand_mbps,
                      double mbs_background_mbps, const CapacityParams& caps,
                      const NodePowerParams& mbs_params,
                      const NodePowerParams& vsc_params, const CostWeights& w) {
    check_weights(w);
    const CarriedLoads loads =
        carried_loads(modes, demand_mbps, mbs_background_mbps, caps);

    StepOutcome outcome;
    outcome.grid_watts =
        mbs_power(mbs_params, vsc_params, modes, loads.vsc_loads, loads.mbs_load);
    outcome.drop_rate = loads.drop_rate;
    const double power_term =
        w.normalize_power ? outcome.grid_watts / caps.p_max_watts : outcome.grid_watts;
    outcome.cost = w.grid * power_term + w.drop * outcome.drop_rate;
    return outcome;
}

void check_weights(const CostWeights& w) {
    if (w.grid < 0.0 || w.drop < 0.0 || std::fabs(w.grid + w.drop - 1.0) > 1e-9)
        throw ConfigError("cost weights must be nonnegative and sum to 1 (got " +
                          std::to_string(w.grid) + " + " + std::to_string(w.drop) +
                          ")");
}

} // namespace vsplit
