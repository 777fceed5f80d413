#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vsplit/harness.hpp"
#include "vsplit/log.hpp"
#include "vsplit/version.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir;
    std::string traces;
    bool fidelity = false;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_fidelity) {
    cmd->add_option("--config", args.config, "scenario config file (JSON)")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--traces", args.traces,
                    "trace CSV overriding the scenario traces");
    cmd->add_option("--seed", args.seed, "override the scenario RNG seed");
    if (with_fidelity)
        cmd->add_flag("--fidelity-mode", args.fidelity,
                      "literal per-node label correction, natural child order");
}

vsplit::Scenario load(const CommonArgs& args) {
    vsplit::Scenario s = vsplit::load_scenario(args.config);
    if (args.seed >= 0) {
        s.seed = static_cast<std::uint64_t>(args.seed);
        if (!s.traces_from_file)
            vsplit::attach_traces(s, vsplit::make_traces(s, s.horizon));
    }
    if (!args.traces.empty()) {
        vsplit::attach_traces(
            s, vsplit::ingest_traces(std::filesystem::path(args.traces), s.n_vsc,
                                     s.horizon));
        s.traces_from_file = true;
    }
    vsplit::log_info("scenario digest " + vsplit::scenario_digest(s));
    return s;
}

vsplit::SolveOptions options_for(const CommonArgs& args) {
    vsplit::SolveOptions opt;
    opt.fidelity_mode = args.fidelity;
    return opt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid-energy-optimal functional split placement for "
                 "solar-powered virtual small cells"};
    app.set_version_flag("--version", vsplit::kVersion);
    app.require_subcommand(1);

    CommonArgs solve_args, policy_args, compare_args, gen_args;
    std::string policy_mode;
    int gen_steps = 0;

    CLI::App* solve_cmd =
        app.add_subcommand("solve", "optimal mode sequence for the scenario");
    add_common(solve_cmd, solve_args, true);

    CLI::App* policy_cmd =
        app.add_subcommand("policy", "run one static split policy");
    add_common(policy_cmd, policy_args, false);
    policy_cmd
        ->add_option("--mode", policy_mode, "cran | upperlower | macphy")
        ->required();

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "optimal vs. static policies on the same scenario");
    add_common(compare_cmd, compare_args, true);

    CLI::App* gen_cmd =
        app.add_subcommand("gen-traces", "emit the synthetic traces as CSV");
    add_common(gen_cmd, gen_args, false);
    gen_cmd->add_option("--steps", gen_steps,
                        "number of steps to emit (default: horizon)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) {
            vsplit::run_solve_cmd(load(solve_args), solve_args.out_dir,
                                  options_for(solve_args));
        } else if (policy_cmd->parsed()) {
            vsplit::SplitMode mode;
            if (policy_mode == "cran")
                mode = vsplit::SplitMode::Cran;
            else if (policy_mode == "upperlower")
                mode = vsplit::SplitMode::UpperLower;
            else if (policy_mode == "macphy")
                mode = vsplit::SplitMode::MacPhy;
            else
                throw vsplit::ConfigError("--mode must be cran, upperlower, or macphy");
            vsplit::run_policy_cmd(load(policy_args), mode, policy_args.out_dir);
        } else if (compare_cmd->parsed()) {
            const auto report = vsplit::run_compare_cmd(
                load(compare_args), compare_args.out_dir, options_for(compare_args));
            std::cout << vsplit::render_comparison_table(report);
        } else if (gen_cmd->parsed()) {
            vsplit::run_gen_traces_cmd(load(gen_args), gen_args.out_dir, gen_steps);
        }
    } catch (const vsplit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const vsplit::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const vsplit::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
