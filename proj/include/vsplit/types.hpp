#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsplit {

/// Operative mode of a vSC. Integer codes are part of the output format.
enum class SplitMode : std::uint8_t {
    Off = 0,        // radio and baseband off, traffic handed over to the MBS
    Cran = 1,       // all baseband central, vSC runs radio only
    UpperLower = 2, // LowerPHY local, UpperPHY and above central
    MacPhy = 3,     // whole PHY local, MAC and above central
};

inline constexpr int kNumModes = 4;

inline constexpr SplitMode kAllModes[kNumModes] = {
    SplitMode::Off, SplitMode::Cran, SplitMode::UpperLower, SplitMode::MacPhy};

const char* mode_name(SplitMode m);

inline bool is_active(SplitMode m) { return m != SplitMode::Off; }

/// A joint mode assignment for N vSCs packed into an integer, vSC 0 in the
/// most significant digit so that ascending codes enumerate mode vectors in
/// lexicographic order.
using ModeCode = std::uint32_t;

inline ModeCode mode_space_size(int n_vsc) {
    return ModeCode{1} << (2 * n_vsc);
}

inline SplitMode mode_at(ModeCode code, int vsc, int n_vsc) {
    return static_cast<SplitMode>((code >> (2 * (n_vsc - 1 - vsc))) & 3u);
}

ModeCode encode_modes(std::span<const SplitMode> modes);
std::vector<SplitMode> decode_modes(ModeCode code, int n_vsc);

/// Battery levels must clear the threshold by more than this margin to count
/// as feasible; keeps the strict comparison of the feasibility constraint
/// stable against float rounding.
inline constexpr double kBatteryTolKwh = 1e-12;

inline bool above_threshold(double battery_kwh, double threshold_kwh) {
    return battery_kwh - threshold_kwh > kBatteryTolKwh;
}

// Error taxonomy; the CLI maps these onto exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No mode sequence satisfies the battery constraint at every step.
struct InfeasibleError : std::runtime_error {
    InfeasibleError(std::string msg, int blocked_step)
        : std::runtime_error(std::move(msg)), first_blocked_step(blocked_step) {}
    /// 1-based index of the first step at which every candidate was pruned.
    int first_blocked_step;
};

} // namespace vsplit
