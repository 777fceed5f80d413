#pragma once

#include <random>
#include <vector>

#include "vsplit/scenario.hpp"

namespace vsplit::testing {

inline NodePowerParams default_vsc_params() {
    NodePowerParams p;
    p.baseband = {200.0, 80.0, 160.0, 30.0, 10.0, 20.0};
    p.radio = {2.6, 71.4, 0.0};
    p.gops_per_watt = 8.0;
    return p;
}

inline NodePowerParams default_mbs_params() {
    NodePowerParams p;
    p.baseband = {630.0, 0.0, 0.0, 215.0 * (30.0 / 60.0), 215.0 * (10.0 / 60.0),
                  215.0 * (20.0 / 60.0)};
    p.radio = {9.18, 1100.0, 0.1};
    p.gops_per_watt = 8.0;
    return p;
}

/// Scenario with spec-default parameters and explicitly given flat traces.
inline Scenario flat_scenario(int n_vsc, int horizon, double demand_mbps,
                              double energy_kwh, double initial_kwh = 2.0,
                              double threshold_kwh = 0.4) {
    Scenario s;
    s.n_vsc = n_vsc;
    s.horizon = horizon;
    s.vsc_params = default_vsc_params();
    s.mbs_params = default_mbs_params();
    s.battery.capacity_kwh = 2.0;
    s.battery.threshold_kwh = threshold_kwh;
    s.battery.initial_kwh.assign(static_cast<std::size_t>(n_vsc), initial_kwh);
    s.capacity.vsc_mbps.assign(static_cast<std::size_t>(n_vsc), 25.0);
    s.capacity.mbs_mbps = 35.0;
    s.capacity.p_max_watts = default_p_max(s.mbs_params, s.vsc_params, n_vsc);
    s.traffic.profile = builtin_profile("residential");

    TraceSet traces;
    traces.energy_kwh.assign(
        static_cast<std::size_t>(n_vsc),
        std::vector<double>(static_cast<std::size_t>(horizon), energy_kwh));
    traces.demand_mbps.assign(
        static_cast<std::size_t>(n_vsc),
        std::vector<double>(static_cast<std::size_t>(horizon), demand_mbps));
    traces.mbs_background_mbps.assign(static_cast<std::size_t>(horizon), 0.0);
    attach_traces(s, std::move(traces));
    return s;
}

/// Randomized small scenario for oracle-equivalence and property tests.
/// Batteries are biased tight so the feasibility constraint actually binds.
inline Scenario random_scenario(std::mt19937_64& rng, int n_vsc, int horizon) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    Scenario s;
    s.n_vsc = n_vsc;
    s.horizon = horizon;
    s.vsc_params = default_vsc_params();
    s.mbs_params = default_mbs_params();

    s.battery.capacity_kwh = 0.5 + 1.5 * u01(rng);
    s.battery.threshold_kwh = 0.3 * s.battery.capacity_kwh * u01(rng);
    s.battery.initial_kwh.resize(static_cast<std::size_t>(n_vsc));
    for (auto& b : s.battery.initial_kwh) {
        const double headroom = s.battery.capacity_kwh - s.battery.threshold_kwh;
        b = s.battery.threshold_kwh + headroom * (0.05 + 0.95 * u01(rng));
    }

    s.capacity.vsc_mbps.resize(static_cast<std::size_t>(n_vsc));
    for (auto& c : s.capacity.vsc_mbps)
        c = 5.0 + 35.0 * u01(rng);
    s.capacity.mbs_mbps = 10.0 + 50.0 * u01(rng);
    s.capacity.p_max_watts = default_p_max(s.mbs_params, s.vsc_params, n_vsc);

    s.weights.grid = u01(rng);
    s.weights.drop = 1.0 - s.weights.grid;
    s.traffic.profile = builtin_profile("residential");

    TraceSet traces;
    traces.energy_kwh.resize(static_cast<std::size_t>(n_vsc));
    traces.demand_mbps.resize(static_cast<std::size_t>(n_vsc));
    for (int i = 0; i < n_vsc; ++i) {
        auto& e = traces.energy_kwh[static_cast<std::size_t>(i)];
        auto& d = traces.demand_mbps[static_cast<std::size_t>(i)];
        e.resize(static_cast<std::size_t>(horizon));
        d.resize(static_cast<std::size_t>(horizon));
        for (int t = 0; t < horizon; ++t) {
            e[static_cast<std::size_t>(t)] = 0.15 * u01(rng);
            d[static_cast<std::size_t>(t)] =
                1.5 * s.capacity.vsc_mbps[static_cast<std::size_t>(i)] * u01(rng);
        }
    }
    traces.mbs_background_mbps.resize(static_cast<std::size_t>(horizon));
    for (auto& bg : traces.mbs_background_mbps)
        bg = 0.5 * s.capacity.mbs_mbps * u01(rng);
    attach_traces(s, std::move(traces));
    return s;
}

} // namespace vsplit::testing
