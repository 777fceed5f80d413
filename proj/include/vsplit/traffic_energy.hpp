#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "vsplit/types.hpp"

namespace vsplit {

/// Clear-sky solar harvesting parameters (replaces externally generated
/// irradiance traces; real traces can be ingested instead).
struct SolarParams {
    double panel_area_m2 = 4.48;
    double efficiency = 0.2;
    double peak_irradiance_wm2 = 800.0;
    double daylight_hours = 14.0;
    double solar_noon_hour = 12.0;
};

using WeeklyProfile = std::array<std::array<double, 24>, 7>; // [day][hour], day 0 = Monday

struct TrafficParams {
    int users_per_vsc = 90;
    double heavy_ratio = 0.5;
    double heavy_rate_mb_per_hour = 900.0;
    double ordinary_rate_mb_per_hour = 112.5;
    WeeklyProfile profile{}; // normalized shape values in [0, 1]
    double mbs_background_fraction = 0.0; // fraction of MBS capacity
    double jitter = 0.0; // multiplicative demand jitter amplitude, 0 = off
};

/// Per-timestep harvested energy and offered traffic for the whole cluster.
struct TraceSet {
    std::vector<std::vector<double>> energy_kwh;  // [vsc][t]
    std::vector<std::vector<double>> demand_mbps; // [vsc][t]
    std::vector<double> mbs_background_mbps;      // [t]

    int n_vsc() const { return static_cast<int>(energy_kwh.size()); }
    int steps() const { return static_cast<int>(mbs_background_mbps.size()); }
};

/// Truncated-cosine clear-sky harvest, point-sampled at each step start.
/// E(t) = area * eff * peak * max(0, cos(pi * (h - noon) / daylight)) * dt / 1000,
/// zero outside the daylight window.
std::vector<double> synth_solar(const SolarParams& p, double timestep_hours,
                                int n_steps, double start_hour);

/// Offered load in Mbps from per-user MB/h activity rates shaped by the
/// weekly profile: users * mixed_rate * (8/3600) * profile[day][hour].
std::vector<double> synth_traffic(const TrafficParams& p, int n_steps,
                                  int start_day, double start_hour,
                                  double timestep_hours = 1.0);

/// Parses the trace CSV (header `t,e_1..e_N,d_1..d_N,d_mbs`). Rejects series
/// shorter than `horizon`, negative entries, and malformed rows, reporting
/// the offending line/column.
TraceSet ingest_traces(std::istream& in, int n_vsc, int horizon);
TraceSet ingest_traces(const std::filesystem::path& path, int n_vsc, int horizon);

/// Inverse of ingest_traces; numbers are written with round-trip precision.
void serialize_traces(const TraceSet& traces, std::ostream& out);

const WeeklyProfile& builtin_profile(std::string_view name); // "residential" | "office"
bool is_builtin_profile(std::string_view name);

} // namespace vsplit
