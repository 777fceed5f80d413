#pragma once

#include <span>

#include "vsplit/types.hpp"

namespace vsplit {

/// Baseband processing effort in GOPS. The load-dependent components
/// (fd_linear, fd_nonlinear, fec) are given at full load.
struct BasebandGops {
    double cpu = 0.0;
    double ofdm = 0.0;
    double filter = 0.0;
    double fd_linear = 0.0;
    double fd_nonlinear = 0.0;
    double fec = 0.0;
};

struct RadioPower {
    double rf_watts = 0.0;
    double pa_watts = 0.0;
    /// Cooling and similar overhead as a fraction of the rest of the node.
    double overhead_fraction = 0.0;
};

struct NodePowerParams {
    BasebandGops baseband;
    RadioPower radio;
    double gops_per_watt = 8.0;
    /// Draw while switched off. Kept at 0 unless a sensitivity study needs it.
    double sleep_watts = 0.0;
};

/// Load-independent baseband power: (cpu + ofdm + filter) / gops_per_watt.
double bb1_watts(const NodePowerParams& p);

/// Load-dependent baseband power:
/// (fd_linear*load + fd_nonlinear*load^2 + fec*load) / gops_per_watt.
/// Throws std::domain_error if load is outside [0, 1].
double bb2_watts(const NodePowerParams& p, double load);

/// Total vSC draw in watts for a given mode and carried load fraction.
/// Off nodes draw sleep_watts; active nodes draw baseband (per mode) plus
/// radio, all scaled by (1 + overhead_fraction).
double vsc_power(const NodePowerParams& p, SplitMode mode, double load);

/// Total MBS draw in watts: its own baseband and radio plus the baseband
/// work hosted for vSCs in centralized splits (full baseband for Cran,
/// bb2 only for UpperLower), scaled by (1 + overhead_fraction). Traffic of
/// Off vSCs enters through mbs_load, not here.
double mbs_power(const NodePowerParams& mbs, const NodePowerParams& vsc,
                 std::span<const SplitMode> modes,
                 std::span<const double> vsc_loads, double mbs_load);

} // namespace vsplit
