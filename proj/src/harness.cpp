#include "vsplit/harness.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "vsplit/log.hpp"
#include "vsplit/version.hpp"

namespace vsplit {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path.string());
    return out;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " +
                      ec.message());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string mode_slug(SplitMode m) {
    switch (m) {
    case SplitMode::Off:
        return "off";
    case SplitMode::Cran:
        return "cran";
    case SplitMode::UpperLower:
        return "upper_lower";
    case SplitMode::MacPhy:
        return "mac_phy";
    }
    return "?";
}

} // namespace

std::string format_fixed6(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    if (ec != std::errc{})
        return "nan";
    return std::string(buf, ptr);
}

void write_schedule_csv(const std::filesystem::path& path,
                        const SearchResult& run, const Scenario& s) {
    auto out = open_out(path);
    out << "t";
    for (int i = 1; i <= s.n_vsc; ++i)
        out << ",mode_" << i;
    for (int i = 1; i <= s.n_vsc; ++i)
        out << ",battery_kwh_" << i;
    for (int i = 1; i <= s.n_vsc; ++i)
        out << ",load_" << i;
    out << '\n';

    for (std::size_t t = 0; t < run.modes_per_step.size(); ++t) {
        const auto& modes = run.modes_per_step[t];
        const auto demand = s.demand_at(static_cast<int>(t));
        const auto loads =
            carried_loads(modes, demand, s.traces.mbs_background_mbps[t], s.capacity)
                .vsc_loads;
        out << (t + 1);
        for (int i = 0; i < s.n_vsc; ++i)
            out << ',' << static_cast<int>(modes[static_cast<std::size_t>(i)]);
        for (int i = 0; i < s.n_vsc; ++i)
            out << ','
                << format_fixed6(run.batteries_per_step[t][static_cast<std::size_t>(i)]);
        for (int i = 0; i < s.n_vsc; ++i)
            out << ',' << format_fixed6(loads[static_cast<std::size_t>(i)]);
        out << '\n';
    }
}

void write_steps_csv(const std::filesystem::path& path, const SearchResult& run) {
    auto out = open_out(path);
    out << "t,grid_watts,drop_rate,cost\n";
    for (std::size_t t = 0; t < run.per_step.size(); ++t) {
        const auto& step = run.per_step[t];
        out << (t + 1) << ',' << format_fixed6(step.grid_watts) << ','
            << format_fixed6(step.drop_rate) << ',' << format_fixed6(step.cost)
            << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<PolicyRow>& rows) {
    auto out = open_out(path);
    out << "policy,total_cost,grid_energy_kwh,avg_drop_rate_pct,off_rate_pct,"
           "cran_rate_pct,upper_lower_rate_pct,mac_phy_rate_pct,nodes_expanded\n";
    for (const auto& row : rows) {
        out << row.name << ',' << format_fixed6(row.total_cost) << ','
            << format_fixed6(row.grid_energy_kwh) << ','
            << format_fixed6(row.avg_drop_rate_pct);
        for (double rate : row.mode_rate_pct)
            out << ',' << format_fixed6(rate);
        out << ',' << row.nodes_expanded << '\n';
    }
}

void write_manifest(const std::filesystem::path& path, const Scenario& s,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["scenario_digest"] = scenario_digest(s);
    j["tool"] = "vsplit";
    j["version"] = kVersion;
    j["created_utc"] = utc_timestamp();
    j["outputs"] = outputs;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string render_comparison_table(const ComparisonReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "policy" << std::right << std::setw(12)
        << "cost" << std::setw(14) << "grid (kWh)" << std::setw(12) << "drop (%)"
        << std::setw(10) << "off %" << std::setw(10) << "cran %" << std::setw(10)
        << "ul %" << std::setw(10) << "macphy %" << '\n';
    for (const auto& row : report.rows) {
        out << std::left << std::setw(20) << row.name << std::right << std::fixed
            << std::setprecision(4) << std::setw(12) << row.total_cost
            << std::setw(14) << row.grid_energy_kwh << std::setw(12)
            << row.avg_drop_rate_pct;
        for (double rate : row.mode_rate_pct)
            out << std::setprecision(1) << std::setw(10) << rate;
        out << '\n';
    }
    return out.str();
}

void run_solve_cmd(const Scenario& s, const std::filesystem::path& out_dir,
                   const SolveOptions& options) {
    ensure_dir(out_dir);
    const SearchResult run = solve(s, options);
    write_schedule_csv(out_dir / "schedule.csv", run, s);
    write_steps_csv(out_dir / "steps.csv", run);
    write_summary_csv(out_dir / "summary.csv", {summarize_run("Optimal", run, s)});
    write_manifest(out_dir / "manifest.json", s,
                   {"schedule.csv", "steps.csv", "summary.csv"});
    log_info("solve: total cost " + format_fixed6(run.total_cost) + ", " +
             std::to_string(run.nodes_expanded) + " labels expanded");
}

void run_policy_cmd(const Scenario& s, SplitMode fixed_mode,
                    const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    const SearchResult run = run_policy(StaticPolicy{fixed_mode}, s);
    write_schedule_csv(out_dir / "schedule.csv", run, s);
    write_steps_csv(out_dir / "steps.csv", run);
    write_summary_csv(out_dir / "summary.csv",
                      {summarize_run(policy_name(fixed_mode), run, s)});
    write_manifest(out_dir / "manifest.json", s,
                   {"schedule.csv", "steps.csv", "summary.csv"});
}

ComparisonReport run_compare_cmd(const Scenario& s,
                                 const std::filesystem::path& out_dir,
                                 const SolveOptions& options) {
    ensure_dir(out_dir);
    const StaticPolicy policies[] = {StaticPolicy{SplitMode::Cran},
                                     StaticPolicy{SplitMode::UpperLower},
                                     StaticPolicy{SplitMode::MacPhy}};
    // compare() would re-run solve; drive the runs here so the per-run CSVs
    // come from the same results that feed the summary.
    ComparisonReport report;
    std::vector<std::string> outputs = {"summary.csv"};

    const SearchResult optimal = solve(s, options);
    report.rows.push_back(summarize_run("Optimal", optimal, s));
    write_schedule_csv(out_dir / "schedule_optimal.csv", optimal, s);
    write_steps_csv(out_dir / "steps_optimal.csv", optimal);
    outputs.push_back("schedule_optimal.csv");
    outputs.push_back("steps_optimal.csv");

    for (const StaticPolicy& p : policies) {
        const SearchResult run = run_policy(p, s);
        report.rows.push_back(summarize_run(policy_name(p.fixed_mode), run, s));
        const std::string slug = mode_slug(p.fixed_mode);
        write_schedule_csv(out_dir / ("schedule_" + slug + ".csv"), run, s);
        write_steps_csv(out_dir / ("steps_" + slug + ".csv"), run);
        outputs.push_back("schedule_" + slug + ".csv");
        outputs.push_back("steps_" + slug + ".csv");
    }

    write_summary_csv(out_dir / "summary.csv", report.rows);
    write_manifest(out_dir / "manifest.json", s, outputs);
    return report;
}

void run_gen_traces_cmd(const Scenario& s, const std::filesystem::path& out_dir,
                        int n_steps) {
    ensure_dir(out_dir);
    const TraceSet traces = make_traces(s, n_steps > 0 ? n_steps : s.horizon);
    auto out = open_out(out_dir / "traces.csv");
    serialize_traces(traces, out);
    write_manifest(out_dir / "manifest.json", s, {"traces.csv"});
}

} // namespace vsplit
