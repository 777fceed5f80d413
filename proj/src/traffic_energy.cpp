#include "vsplit/traffic_energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace vsplit {

namespace {

double hour_of_day(double start_hour, int step, double dt) {
    return std::fmod(start_hour + step * dt, 24.0);
}

// Editable shape tables; values are fractions of the nominal per-user
// activity rates, scaled so that busy-hour demand stays near radio capacity.
// Not measured profiles.
constexpr std::array<double, 24> kResidentialWeekday = {
    0.10, 0.08, 0.06, 0.05, 0.05, 0.06, 0.08, 0.11, 0.13, 0.14, 0.15, 0.16,
    0.17, 0.17, 0.18, 0.19, 0.21, 0.24, 0.28, 0.31, 0.33, 0.34, 0.30, 0.18};
constexpr std::array<double, 24> kResidentialWeekend = {
    0.12, 0.09, 0.07, 0.06, 0.05, 0.06, 0.09, 0.12, 0.16, 0.19, 0.21, 0.22,
    0.23, 0.23, 0.23, 0.23, 0.24, 0.26, 0.29, 0.32, 0.34, 0.34, 0.31, 0.20};
constexpr std::array<double, 24> kOfficeWeekday = {
    0.04, 0.04, 0.04, 0.04, 0.04, 0.05, 0.08, 0.14, 0.22, 0.28, 0.31, 0.32,
    0.28, 0.30, 0.32, 0.31, 0.28, 0.21, 0.13, 0.09, 0.07, 0.06, 0.05, 0.04};
constexpr std::array<double, 24> kOfficeWeekend = {
    0.04, 0.04, 0.03, 0.03, 0.03, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.08,
    0.08, 0.08, 0.08, 0.08, 0.07, 0.06, 0.06, 0.05, 0.05, 0.05, 0.04, 0.04};

WeeklyProfile make_weekly(const std::array<double, 24>& weekday,
                          const std::array<double, 24>& weekend) {
    WeeklyProfile p{};
    for (int d = 0; d < 7; ++d)
        p[static_cast<std::size_t>(d)] = (d < 5) ? weekday : weekend;
    return p;
}

const WeeklyProfile kResidential = make_weekly(kResidentialWeekday, kResidentialWeekend);
const WeeklyProfile kOffice = make_weekly(kOfficeWeekday, kOfficeWeekend);

[[noreturn]] void trace_error(int line, const std::string& what) {
    throw ConfigError("trace file, line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    for (auto& f : out) {
        while (!f.empty() && (f.back() == '\r' || f.back() == ' '))
            f.pop_back();
        while (!f.empty() && f.front() == ' ')
            f.erase(f.begin());
    }
    return out;
}

double parse_double(const std::string& field, int line, const std::string& col) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        trace_error(line, "column " + col + ": cannot parse number '" + field + "'");
    return value;
}

void format_double(std::ostream& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    (void)ec;
}

} // namespace

std::vector<double> synth_solar(const SolarParams& p, double timestep_hours,
                                int n_steps, double start_hour) {
    std::vector<double> energy(static_cast<std::size_t>(n_steps), 0.0);
    const double half_window = p.daylight_hours / 2.0;
    for (int t = 0; t < n_steps; ++t) {
        const double h = hour_of_day(start_hour, t, timestep_hours);
        double dist = std::fabs(h - p.solar_noon_hour);
        dist = std::min(dist, 24.0 - dist);
        if (dist > half_window)
            continue; // outside the daylight window
        const double shape =
            std::max(0.0, std::cos(std::numbers::pi * dist / p.daylight_hours));
        energy[static_cast<std::size_t>(t)] = p.panel_area_m2 * p.efficiency *
                                              p.peak_irradiance_wm2 * shape *
                                              timestep_hours / 1000.0;
    }
    return energy;
}

std::vector<double> synth_traffic(const TrafficParams& p, int n_steps,
                                  int start_day, double start_hour,
                                  double timestep_hours) {
    const double mixed_mb_per_hour =
        p.users_per_vsc * (p.heavy_ratio * p.heavy_rate_mb_per_hour +
                           (1.0 - p.heavy_ratio) * p.ordinary_rate_mb_per_hour);
    const double rate_mbps = mixed_mb_per_hour * 8.0 / 3600.0;

    std::vector<double> demand(static_cast<std::size_t>(n_steps), 0.0);
    for (int t = 0; t < n_steps; ++t) {
        const double abs_hour = start_day * 24.0 + start_hour + t * timestep_hours;
        const int day = static_cast<int>(std::fmod(std::floor(abs_hour / 24.0), 7.0));
        const int hour = static_cast<int>(std::floor(std::fmod(abs_hour, 24.0)));
        demand[static_cast<std::size_t>(t)] =
            rate_mbps * p.profile[static_cast<std::size_t>(day)]
                                 [static_cast<std::size_t>(hour)];
    }
    return demand;
}

TraceSet ingest_traces(std::istream& in, int n_vsc, int horizon) {
    const std::size_t n = static_cast<std::size_t>(n_vsc);
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("trace file is empty");

    // header: t,e_1..e_N,d_1..d_N,d_mbs
    auto header = split_csv(line);
    const std::size_t expected_cols = 2 * n + 2;
    if (header.size() != expected_cols)
        trace_error(1, "expected " + std::to_string(expected_cols) +
                           " columns for " + std::to_string(n_vsc) +
                           " vSCs, found " + std::to_string(header.size()));

    TraceSet traces;
    traces.energy_kwh.assign(n, {});
    traces.demand_mbps.assign(n, {});

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        auto fields = split_csv(line);
        if (fields.size() != expected_cols)
            trace_error(lineno, "expected " + std::to_string(expected_cols) +
                                    " columns, found " + std::to_string(fields.size()));
        for (std::size_t i = 0; i < n; ++i) {
            const std::string col = "e_" + std::to_string(i + 1);
            double e = parse_double(fields[1 + i], lineno, col);
            if (e < 0.0)
                trace_error(lineno, "column " + col + ": negative energy value");
            traces.energy_kwh[i].push_back(e);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::string col = "d_" + std::to_string(i + 1);
            double d = parse_double(fields[1 + n + i], lineno, col);
            if (d < 0.0)
                trace_error(lineno, "column " + col + ": negative demand value");
            traces.demand_mbps[i].push_back(d);
        }
        double bg = parse_double(fields[1 + 2 * n], lineno, "d_mbs");
        if (bg < 0.0)
            trace_error(lineno, "column d_mbs: negative demand value");
        traces.mbs_background_mbps.push_back(bg);
    }

    if (traces.steps() < horizon)
        throw ConfigError("trace file covers " + std::to_string(traces.steps()) +
                          " steps but the horizon needs " + std::to_string(horizon));
    return traces;
}

TraceSet ingest_traces(const std::filesystem::path& path, int n_vsc, int horizon) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open trace file: " + path.string());
    return ingest_traces(in, n_vsc, horizon);
}

void serialize_traces(const TraceSet& traces, std::ostream& out) {
    const int n = traces.n_vsc();
    out << "t";
    for (int i = 1; i <= n; ++i)
        out << ",e_" << i;
    for (int i = 1; i <= n; ++i)
        out << ",d_" << i;
    out << ",d_mbs\n";
    for (int t = 0; t < traces.steps(); ++t) {
        out << (t + 1);
        for (int i = 0; i < n; ++i) {
            out << ',';
            format_double(out, traces.energy_kwh[static_cast<std::size_t>(i)]
                                                [static_cast<std::size_t>(t)]);
        }
        for (int i = 0; i < n; ++i) {
            out << ',';
            format_double(out, traces.demand_mbps[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(t)]);
        }
        out << ',';
        format_double(out, traces.mbs_background_mbps[static_cast<std::size_t>(t)]);
        out << '\n';
    }
}

const WeeklyProfile& builtin_profile(std::string_view name) {
    if (name == "residential")
        return kResidential;
    if (name == "office")
        return kOffice;
    throw ConfigError("unknown traffic profile '" + std::string(name) +
                      "' (expected 'residential' or 'office')");
}

bool is_builtin_profile(std::string_view name) {
    return name == "residential" || name == "office";
}

} // namespace vsplit
