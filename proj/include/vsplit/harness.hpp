#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vsplit/optimizer.hpp"
#include "vsplit/policies.hpp"
#include "vsplit/scenario.hpp"

namespace vsplit {

/// Fixed 6-decimal formatting used by all report CSVs; locale-independent.
std::string format_fixed6(double v);

// CSV schemas (LF line endings, '.' decimal separator, t = 1..K):
//   schedule.csv: t,mode_1..N,battery_kwh_1..N,load_1..N
//   steps.csv:    t,grid_watts,drop_rate,cost
//   summary.csv:  policy,total_cost,grid_energy_kwh,avg_drop_rate_pct,
//                 off_rate_pct,cran_rate_pct,upper_lower_rate_pct,
//                 mac_phy_rate_pct,nodes_expanded
void write_schedule_csv(const std::filesystem::path& path,
                        const SearchResult& run, const Scenario& s);
void write_steps_csv(const std::filesystem::path& path, const SearchResult& run);
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<PolicyRow>& rows);
void write_manifest(const std::filesystem::path& path, const Scenario& s,
                    const std::vector<std::string>& outputs);

std::string render_comparison_table(const ComparisonReport& report);

// Subcommand bodies, shared between the CLI and the tests. Each writes its
// artifacts plus manifest.json into out_dir.
void run_solve_cmd(const Scenario& s, const std::filesystem::path& out_dir,
                   const SolveOptions& options = {});
void run_policy_cmd(const Scenario& s, SplitMode fixed_mode,
                    const std::filesystem::path& out_dir);
ComparisonReport run_compare_cmd(const Scenario& s,
                                 const std::filesystem::path& out_dir,
                                 const SolveOptions& options = {});
void run_gen_traces_cmd(const Scenario& s, const std::filesystem::path& out_dir,
                        int n_steps = 0); // 0 = horizon

} // namespace vsplit
