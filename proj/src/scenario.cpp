#include "vsplit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "vsplit/log.hpp"

namespace vsplit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

// Strict section reader: every key must be consumed by a get_* call.
class Section {
  public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object())
            fail(path_, "expected an object");
    }

    double get_number(const char* key, double fallback) {
        mark(key);
        if (!obj_.contains(key))
            return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number())
            fail(path_ + "." + key, "expected a number");
        return v.get<double>();
    }

    int get_int(const char* key, int fallback) {
        mark(key);
        if (!obj_.contains(key))
            return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number_integer())
            fail(path_ + "." + key, "expected an integer");
        return v.get<int>();
    }

    bool get_bool(const char* key, bool fallback) {
        mark(key);
        if (!obj_.contains(key))
            return fallback;
        const json& v = obj_.at(key);
        if (!v.is_boolean())
            fail(path_ + "." + key, "expected a boolean");
        return v.get<bool>();
    }

    std::string get_string(const char* key, const std::string& fallback) {
        mark(key);
        if (!obj_.contains(key))
            return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string())
            fail(path_ + "." + key, "expected a string");
        return v.get<std::string>();
    }

    const json* get_raw(const char* key) {
        mark(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    /// Scalar broadcast or per-vSC array.
    std::vector<double> get_per_vsc(const char* key, double fallback, int n_vsc) {
        mark(key);
        std::vector<double> out(static_cast<std::size_t>(n_vsc), fallback);
        if (!obj_.contains(key))
            return out;
        const json& v = obj_.at(key);
        if (v.is_number()) {
            std::fill(out.begin(), out.end(), v.get<double>());
            return out;
        }
        if (v.is_array()) {
            if (static_cast<int>(v.size()) != n_vsc)
                fail(path_ + "." + key, "array must have n_vsc = " +
                                            std::to_string(n_vsc) + " entries");
            for (int i = 0; i < n_vsc; ++i) {
                if (!v[static_cast<std::size_t>(i)].is_number())
                    fail(path_ + "." + key, "expected numbers");
                out[static_cast<std::size_t>(i)] =
                    v[static_cast<std::size_t>(i)].get<double>();
            }
            return out;
        }
        fail(path_ + "." + key, "expected a number or an array");
    }

    void finish() {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.contains(it.key()))
                fail(path_ + "." + it.key(), "unknown key");
    }

  private:
    void mark(const char* key) { seen_.insert(key); }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

const json kEmptyObject = json::object();

const json& sub_object(const json& doc, const char* key) {
    if (!doc.contains(key))
        return kEmptyObject;
    return doc.at(key);
}

void read_baseband(Section& s, BasebandGops& b, const BasebandGops& defaults) {
    b.cpu = s.get_number("cpu_gops", defaults.cpu);
    b.ofdm = s.get_number("ofdm_gops", defaults.ofdm);
    b.filter = s.get_number("filter_gops", defaults.filter);
    b.fd_linear = s.get_number("fd_linear_gops", defaults.fd_linear);
    b.fd_nonlinear = s.get_number("fd_nonlinear_gops", defaults.fd_nonlinear);
    b.fec = s.get_number("fec_gops", defaults.fec);
}

WeeklyProfile parse_profile_table(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 7)
        fail(path, "expected 7 arrays of 24 values");
    WeeklyProfile p{};
    for (std::size_t d = 0; d < 7; ++d) {
        const json& row = v[d];
        if (!row.is_array() || row.size() != 24)
            fail(path, "day " + std::to_string(d) + " must have 24 values");
        for (std::size_t h = 0; h < 24; ++h) {
            if (!row[h].is_number())
                fail(path, "expected numbers");
            p[d][h] = row[h].get<double>();
        }
    }
    return p;
}

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok)
        fail(path, what);
}

void validate(const Scenario& s) {
    require(s.n_vsc >= 1 && s.n_vsc <= 8, "cluster.n_vsc", "must be in [1, 8]");
    require(s.horizon >= 1, "cluster.horizon", "must be >= 1");
    require(s.delta_t_hours > 0.0, "cluster.delta_t_hours", "must be > 0");
    require(s.start_day >= 0 && s.start_day < 7, "cluster.start_day",
            "must be in [0, 6] (0 = Monday)");
    require(s.start_hour >= 0.0 && s.start_hour < 24.0, "cluster.start_hour",
            "must be in [0, 24)");
    check_weights(s.weights);

    for (const auto* p : {&s.vsc_params, &s.mbs_params}) {
        const char* who = (p == &s.vsc_params) ? "vsc_power" : "mbs_power";
        const auto& b = p->baseband;
        require(b.cpu >= 0 && b.ofdm >= 0 && b.filter >= 0 && b.fd_linear >= 0 &&
                    b.fd_nonlinear >= 0 && b.fec >= 0,
                who, "GOPS values must be >= 0");
        require(p->gops_per_watt > 0.0, std::string(who) + ".gops_per_watt",
                "must be > 0");
        require(p->radio.rf_watts >= 0 && p->radio.pa_watts >= 0, who,
                "radio watts must be >= 0");
        require(p->radio.overhead_fraction >= 0.0 && p->radio.overhead_fraction <= 1.0,
                std::string(who) + ".overhead_fraction", "must be in [0, 1]");
        require(p->sleep_watts >= 0.0, std::string(who) + ".sleep_watts",
                "must be >= 0");
    }

    require(s.battery.capacity_kwh > 0.0, "battery.capacity_kwh", "must be > 0");
    require(s.battery.threshold_kwh >= 0.0 &&
                s.battery.threshold_kwh < s.battery.capacity_kwh,
            "battery", "threshold must satisfy 0 <= threshold < capacity");
    require(static_cast<int>(s.battery.initial_kwh.size()) == s.n_vsc, "battery.initial_kwh",
            "must have one entry per vSC");
    for (double b : s.battery.initial_kwh)
        require(b >= 0.0 && b <= s.battery.capacity_kwh, "battery.initial_kwh",
                "entries must be in [0, capacity]");

    require(static_cast<int>(s.capacity.vsc_mbps.size()) == s.n_vsc,
            "capacity.vsc_mbps", "must have one entry per vSC");
    for (double c : s.capacity.vsc_mbps)
        require(c > 0.0, "capacity.vsc_mbps", "entries must be > 0");
    require(s.capacity.mbs_mbps > 0.0, "capacity.mbs_mbps", "must be > 0");
    require(s.capacity.p_max_watts > 0.0, "capacity.p_max_watts", "must be > 0");

    require(s.solar.panel_area_m2 > 0.0, "solar.panel_area_m2", "must be > 0");
    require(s.solar.efficiency > 0.0 && s.solar.efficiency <= 1.0,
            "solar.efficiency", "must be in (0, 1]");
    require(s.solar.peak_irradiance_wm2 >= 0.0, "solar.peak_irradiance_wm2",
            "must be >= 0");
    require(s.solar.daylight_hours > 0.0 && s.solar.daylight_hours <= 24.0,
            "solar.daylight_hours", "must be in (0, 24]");

    require(s.traffic.users_per_vsc >= 0, "traffic.users_per_vsc", "must be >= 0");
    require(s.traffic.heavy_ratio >= 0.0 && s.traffic.heavy_ratio <= 1.0,
            "traffic.heavy_ratio", "must be in [0, 1]");
    require(s.traffic.heavy_rate_mb_per_hour >= 0.0 &&
                s.traffic.ordinary_rate_mb_per_hour >= 0.0,
            "traffic", "activity rates must be >= 0");
    for (const auto& day : s.traffic.profile)
        for (double v : day)
            require(v >= 0.0 && v <= 1.0, "traffic.profile",
                    "shape values must be in [0, 1]");
    require(s.traffic.mbs_background_fraction >= 0.0 &&
                s.traffic.mbs_background_fraction <= 1.0,
            "traffic.mbs_background_fraction", "must be in [0, 1]");
    require(s.traffic.jitter >= 0.0 && s.traffic.jitter < 1.0, "traffic.jitter",
            "must be in [0, 1)");

    // A threshold below one worst-case step's draw lets trajectories touch 0
    // before the constraint bites; legal, but worth flagging.
    const double worst_step_kwh =
        vsc_power(s.vsc_params, SplitMode::MacPhy, 1.0) * s.delta_t_hours / 1000.0;
    if (s.battery.threshold_kwh < worst_step_kwh)
        log_info("battery.threshold_kwh (" + std::to_string(s.battery.threshold_kwh) +
                 ") is below one worst-case step draw (" +
                 std::to_string(worst_step_kwh) +
                 " kWh); feasible trajectories may approach 0");
}

void validate_traces(const Scenario& s) {
    require(s.traces.n_vsc() == s.n_vsc, "traces", "vSC count mismatch");
    require(s.traces.steps() >= s.horizon, "traces",
            "must cover at least horizon steps");
    for (const auto& series : s.traces.energy_kwh)
        require(static_cast<int>(series.size()) == s.traces.steps(), "traces",
                "ragged energy series");
    for (const auto& series : s.traces.demand_mbps)
        require(static_cast<int>(series.size()) == s.traces.steps(), "traces",
                "ragged demand series");
}

std::string sha256_hex(const std::string& payload) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

json baseband_json(const BasebandGops& b) {
    return {{"cpu_gops", b.cpu},
            {"ofdm_gops", b.ofdm},
            {"filter_gops", b.filter},
            {"fd_linear_gops", b.fd_linear},
            {"fd_nonlinear_gops", b.fd_nonlinear},
            {"fec_gops", b.fec}};
}

json node_json(const NodePowerParams& p) {
    json j = baseband_json(p.baseband);
    j["rf_watts"] = p.radio.rf_watts;
    j["pa_watts"] = p.radio.pa_watts;
    j["overhead_fraction"] = p.radio.overhead_fraction;
    j["gops_per_watt"] = p.gops_per_watt;
    j["sleep_watts"] = p.sleep_watts;
    return j;
}

} // namespace

double default_p_max(const NodePowerParams& mbs, const NodePowerParams& vsc,
                     int n_vsc) {
    std::vector<SplitMode> all_cran(static_cast<std::size_t>(n_vsc), SplitMode::Cran);
    std::vector<double> full(static_cast<std::size_t>(n_vsc), 1.0);
    return mbs_power(mbs, vsc, all_cran, full, 1.0);
}

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object())
        throw ConfigError("config root must be a JSON object");

    Scenario s;

    {
        Section sec(sub_object(doc, "cluster"), "cluster");
        s.n_vsc = sec.get_int("n_vsc", 3);
        s.horizon = sec.get_int("horizon", 21);
        s.delta_t_hours = sec.get_number("delta_t_hours", 1.0);
        s.start_day = sec.get_int("start_day", 0);
        s.start_hour = sec.get_number("start_hour", 0.0);
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "weights"), "weights");
        s.weights.grid = sec.get_number("grid_power", 0.5);
        s.weights.drop = sec.get_number("drop_rate", 0.5);
        s.weights.normalize_power = sec.get_bool("normalize_power", true);
        sec.finish();
    }
    {
        BasebandGops defaults{200.0, 80.0, 160.0, 30.0, 10.0, 20.0};
        Section sec(sub_object(doc, "vsc_power"), "vsc_power");
        read_baseband(sec, s.vsc_params.baseband, defaults);
        s.vsc_params.radio.rf_watts = sec.get_number("rf_watts", 2.6);
        s.vsc_params.radio.pa_watts = sec.get_number("pa_watts", 71.4);
        s.vsc_params.radio.overhead_fraction = sec.get_number("overhead_fraction", 0.0);
        s.vsc_params.gops_per_watt = sec.get_number("gops_per_watt", 8.0);
        s.vsc_params.sleep_watts = sec.get_number("sleep_watts", 0.0);
        sec.finish();
    }
    {
        // The 215 GOPS load-dependent aggregate is split in the same 30:10:20
        // proportions as the vSC figures; only the sum of the static parts
        // matters for bb1.
        BasebandGops defaults{630.0, 0.0,          0.0,
                              215.0 * (30.0 / 60.0), 215.0 * (10.0 / 60.0),
                              215.0 * (20.0 / 60.0)};
        Section sec(sub_object(doc, "mbs_power"), "mbs_power");
        read_baseband(sec, s.mbs_params.baseband, defaults);
        s.mbs_params.radio.rf_watts = sec.get_number("rf_watts", 9.18);
        s.mbs_params.radio.pa_watts = sec.get_number("pa_watts", 1100.0);
        s.mbs_params.radio.overhead_fraction = sec.get_number("overhead_fraction", 0.1);
        s.mbs_params.gops_per_watt = sec.get_number("gops_per_watt", 8.0);
        s.mbs_params.sleep_watts = sec.get_number("sleep_watts", 0.0);
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "battery"), "battery");
        s.battery.capacity_kwh = sec.get_number("capacity_kwh", 2.0);
        const double default_threshold = 0.2 * s.battery.capacity_kwh;
        const json* frac = sec.get_raw("threshold_fraction");
        const json* kwh = sec.get_raw("threshold_kwh");
        if (frac != nullptr && kwh != nullptr)
            fail("battery", "give either threshold_fraction or threshold_kwh, not both");
        if (kwh != nullptr) {
            if (!kwh->is_number())
                fail("battery.threshold_kwh", "expected a number");
            s.battery.threshold_kwh = kwh->get<double>();
        } else if (frac != nullptr) {
            if (!frac->is_number())
                fail("battery.threshold_fraction", "expected a number");
            s.battery.threshold_kwh = frac->get<double>() * s.battery.capacity_kwh;
        } else {
            s.battery.threshold_kwh = default_threshold;
        }
        s.battery.initial_kwh =
            sec.get_per_vsc("initial_kwh", s.battery.capacity_kwh, s.n_vsc);
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "capacity"), "capacity");
        s.capacity.vsc_mbps = sec.get_per_vsc("vsc_mbps", 25.0, s.n_vsc);
        s.capacity.mbs_mbps = sec.get_number("mbs_mbps", 35.0);
        const json* pmax = sec.get_raw("p_max_watts");
        if (pmax == nullptr || (pmax->is_string() && pmax->get<std::string>() == "auto")) {
            s.capacity.p_max_watts = default_p_max(s.mbs_params, s.vsc_params, s.n_vsc);
        } else if (pmax->is_number()) {
            s.capacity.p_max_watts = pmax->get<double>();
        } else {
            fail("capacity.p_max_watts", "expected a number or \"auto\"");
        }
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "solar"), "solar");
        s.solar.panel_area_m2 = sec.get_number("panel_area_m2", 4.48);
        s.solar.efficiency = sec.get_number("efficiency", 0.2);
        s.solar.peak_irradiance_wm2 = sec.get_number("peak_irradiance_wm2", 800.0);
        s.solar.daylight_hours = sec.get_number("daylight_hours", 14.0);
        s.solar.solar_noon_hour = sec.get_number("solar_noon_hour", 12.0);
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "traffic"), "traffic");
        s.traffic.users_per_vsc = sec.get_int("users_per_vsc", 90);
        s.traffic.heavy_ratio = sec.get_number("heavy_ratio", 0.5);
        s.traffic.heavy_rate_mb_per_hour = sec.get_number("heavy_rate_mb_per_hour", 900.0);
        s.traffic.ordinary_rate_mb_per_hour =
            sec.get_number("ordinary_rate_mb_per_hour", 112.5);
        s.traffic.mbs_background_fraction =
            sec.get_number("mbs_background_fraction", 0.0);
        s.traffic.jitter = sec.get_number("jitter", 0.0);
        const json* profile = sec.get_raw("profile");
        if (profile == nullptr) {
            s.profile_name = "residential";
            s.traffic.profile = builtin_profile(s.profile_name);
        } else if (profile->is_string()) {
            s.profile_name = profile->get<std::string>();
            s.traffic.profile = builtin_profile(s.profile_name);
        } else {
            s.profile_name.clear();
            s.traffic.profile = parse_profile_table(*profile, "traffic.profile");
        }
        sec.finish();
    }
    {
        Section sec(sub_object(doc, "traces"), "traces");
        std::string file = sec.get_string("file", "");
        sec.finish();
        if (!file.empty()) {
            std::filesystem::path p(file);
            if (p.is_relative())
                p = base_dir / p;
            validate(s); // catch bad params before touching the filesystem
            attach_traces(s, ingest_traces(p, s.n_vsc, s.horizon));
            s.traces_from_file = true;
        }
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
            fail("seed", "expected an integer");
        s.seed = doc.at("seed").get<std::uint64_t>();
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const std::set<std::string> known = {
            "cluster", "weights", "vsc_power", "mbs_power", "battery",
            "capacity", "solar",   "traffic",   "traces",    "seed"};
        if (!known.contains(it.key()))
            fail(it.key(), "unknown section");
    }

    validate(s);
    if (!s.traces_from_file)
        attach_traces(s, make_traces(s, s.horizon));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return scenario_from_json(doc, path.parent_path());
}

TraceSet make_traces(const Scenario& s, int n_steps) {
    TraceSet traces;
    const auto energy =
        synth_solar(s.solar, s.delta_t_hours, n_steps, s.start_hour);
    const auto demand = synth_traffic(s.traffic, n_steps, s.start_day,
                                      s.start_hour, s.delta_t_hours);
    traces.energy_kwh.assign(static_cast<std::size_t>(s.n_vsc), energy);
    traces.demand_mbps.assign(static_cast<std::size_t>(s.n_vsc), demand);

    if (s.traffic.jitter > 0.0) {
        std::mt19937_64 rng(s.seed);
        std::uniform_real_distribution<double> u(-s.traffic.jitter, s.traffic.jitter);
        for (auto& series : traces.demand_mbps)
            for (auto& d : series)
                d = std::max(0.0, d * (1.0 + u(rng)));
    }

    traces.mbs_background_mbps.assign(
        static_cast<std::size_t>(n_steps),
        s.traffic.mbs_background_fraction * s.capacity.mbs_mbps);
    return traces;
}

void attach_traces(Scenario& s, TraceSet traces) {
    s.traces = std::move(traces);
    validate_traces(s);
}

std::vector<double> Scenario::demand_at(int t) const {
    std::vector<double> row(static_cast<std::size_t>(n_vsc));
    for (int i = 0; i < n_vsc; ++i)
        row[static_cast<std::size_t>(i)] =
            traces.demand_mbps[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    return row;
}

std::vector<double> Scenario::harvest_at(int t) const {
    std::vector<double> row(static_cast<std::size_t>(n_vsc));
    for (int i = 0; i < n_vsc; ++i)
        row[static_cast<std::size_t>(i)] =
            traces.energy_kwh[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    return row;
}

StepOutcome scenario_step_cost(const Scenario& s,
                               std::span<const SplitMode> modes, int t) {
    const auto demand = s.demand_at(t);
    return step_cost(modes, demand,
                     s.traces.mbs_background_mbps[static_cast<std::size_t>(t)],
                     s.capacity, s.mbs_params, s.vsc_params, s.weights);
}

std::string scenario_digest(const Scenario& s) {
    json j;
    j["cluster"] = {{"n_vsc", s.n_vsc},
                    {"horizon", s.horizon},
                    {"delta_t_hours", s.delta_t_hours},
                    {"start_day", s.start_day},
                    {"start_hour", s.start_hour}};
    j["weights"] = {{"grid_power", s.weights.grid},
                    {"drop_rate", s.weights.drop},
                    {"normalize_power", s.weights.normalize_power}};
    j["vsc_power"] = node_json(s.vsc_params);
    j["mbs_power"] = node_json(s.mbs_params);
    j["battery"] = {{"capacity_kwh", s.battery.capacity_kwh},
                    {"threshold_kwh", s.battery.threshold_kwh},
                    {"initial_kwh", s.battery.initial_kwh}};
    j["capacity"] = {{"vsc_mbps", s.capacity.vsc_mbps},
                     {"mbs_mbps", s.capacity.mbs_mbps},
                     {"p_max_watts", s.capacity.p_max_watts}};
    j["solar"] = {{"panel_area_m2", s.solar.panel_area_m2},
                  {"efficiency", s.solar.efficiency},
                  {"peak_irradiance_wm2", s.solar.peak_irradiance_wm2},
                  {"daylight_hours", s.solar.daylight_hours},
                  {"solar_noon_hour", s.solar.solar_noon_hour}};
    j["traffic"] = {{"users_per_vsc", s.traffic.users_per_vsc},
                    {"heavy_ratio", s.traffic.heavy_ratio},
                    {"heavy_rate_mb_per_hour", s.traffic.heavy_rate_mb_per_hour},
                    {"ordinary_rate_mb_per_hour", s.traffic.ordinary_rate_mb_per_hour},
                    {"profile", s.traffic.profile},
                    {"mbs_background_fraction", s.traffic.mbs_background_fraction},
                    {"jitter", s.traffic.jitter}};
    j["seed"] = s.seed;
    j["traces"] = {{"energy_kwh", s.traces.energy_kwh},
                   {"demand_mbps", s.traces.demand_mbps},
                   {"mbs_background_mbps", s.traces.mbs_background_mbps}};
    return sha256_hex(j.dump());
}

} // namespace vsplit
