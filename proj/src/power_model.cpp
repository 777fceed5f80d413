#include "vsplit/power_model.hpp"

#include <cassert>
#include <stdexcept>

namespace vsplit {

namespace {

void check_load(double load) {
    if (!(load >= 0.0 && load <= 1.0))
        throw std::domain_error("load fraction must be in [0, 1], got " +
                                std::to_string(load));
}

} // namespace

double bb1_watts(const NodePowerParams& p) {
    const auto& b = p.baseband;
    return (b.cpu + b.ofdm + b.filter) / p.gops_per_watt;
}

double bb2_watts(const NodePowerParams& p, double load) {
    check_load(load);
    const auto& b = p.baseband;
    return (b.fd_linear * load + b.fd_nonlinear * load * load + b.fec * load) /
           p.gops_per_watt;
}

double vsc_power(const NodePowerParams& p, SplitMode mode, double load) {
    check_load(load);
    if (mode == SplitMode::Off)
        return p.sleep_watts;

    double baseband = 0.0;
    switch (mode) {
    case SplitMode::Cran:
        baseband = 0.0;
        break;
    case SplitMode::UpperLower:
        baseband = bb1_watts(p);
        break;
    case SplitMode::MacPhy:
        baseband = bb1_watts(p) + bb2_watts(p, load);
        break;
    default:
        break;
    }
    const double radio = p.radio.rf_watts + p.radio.pa_watts;
    return (baseband + radio) * (1.0 + p.radio.overhead_fraction);
}

double mbs_power(const NodePowerParams& mbs, const NodePowerParams& vsc,
                 std::span<const SplitMode> modes,
                 std::span<const double> vsc_loads, double mbs_load) {
    assert(modes.size() == vsc_loads.size());
    check_load(mbs_load);

    double total = bb1_watts(mbs) + bb2_watts(mbs, mbs_load) +
                   mbs.radio.rf_watts + mbs.radio.pa_watts;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        switch (modes[i]) {
        case SplitMode::Cran:
            total += bb1_watts(vsc) + bb2_watts(vsc, vsc_loads[i]);
            break;
        case SplitMode::UpperLower:
            total += bb2_watts(vsc, vsc_loads[i]);
            break;
        default: // MacPhy processes locally; Off traffic arrives via mbs_load
            break;
        }
    }
    return total * (1.0 + mbs.radio.overhead_fraction);
}

const char* mode_name(SplitMode m) {
    switch (m) {
    case SplitMode::Off:
        return "Off";
    case SplitMode::Cran:
        return "CRAN";
    case SplitMode::UpperLower:
        return "UpperPHY/LowerPHY";
    case SplitMode::MacPhy:
        return "MAC/PHY";
    }
    return "?";
}

ModeCode encode_modes(std::span<const SplitMode> modes) {
    ModeCode code = 0;
    for (SplitMode m : modes)
        code = (code << 2) | static_cast<ModeCode>(m);
    return code;
}

std::vector<SplitMode> decode_modes(ModeCode code, int n_vsc) {
    std::vector<SplitMode> modes(static_cast<std::size_t>(n_vsc));
    for (int i = 0; i < n_vsc; ++i)
        modes[static_cast<std::size_t>(i)] = mode_at(code, i, n_vsc);
    return modes;
}

} // namespace vsplit
