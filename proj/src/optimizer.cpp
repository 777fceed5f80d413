#include "vsplit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "vsplit/log.hpp"
#include "vsplit/policies.hpp"

namespace vsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack shielding the completion-bound prune from summation rounding; the
// plain incumbent test needs none (prefix sums are monotone).
constexpr double kBoundSlack = 1e-9;

/// Arc costs and per-vSC battery draws memoized per (step, mode).
struct StageTables {
    int n_vsc = 0;
    int horizon = 0;
    ModeCode n_codes = 0;
    std::vector<StepOutcome> outcome; // [t * n_codes + mv]
    std::vector<double> draw_kwh;     // [(t * n_vsc + i) * 4 + mode]
    std::vector<double> lb_tail;      // [t]: sum of per-step minima from t on

    const StepOutcome& at(int t, ModeCode mv) const {
        return outcome[static_cast<std::size_t>(t) * n_codes + mv];
    }
    double draw(int t, int i, SplitMode m) const {
        return draw_kwh[(static_cast<std::size_t>(t) * n_vsc + static_cast<std::size_t>(i)) *
                            4 +
                        static_cast<std::size_t>(m)];
    }
};

StageTables build_tables(const Scenario& s) {
    StageTables tab;
    tab.n_vsc = s.n_vsc;
    tab.horizon = s.horizon;
    tab.n_codes = mode_space_size(s.n_vsc);
    tab.outcome.resize(static_cast<std::size_t>(s.horizon) * tab.n_codes);
    tab.draw_kwh.resize(static_cast<std::size_t>(s.horizon) * s.n_vsc * 4);
    tab.lb_tail.assign(static_cast<std::size_t>(s.horizon) + 1, 0.0);

    std::vector<SplitMode> modes(static_cast<std::size_t>(s.n_vsc));
    for (int t = 0; t < s.horizon; ++t) {
        const auto demand = s.demand_at(t);
        const double bg = s.traces.mbs_background_mbps[static_cast<std::size_t>(t)];
        for (ModeCode mv = 0; mv < tab.n_codes; ++mv) {
            for (int i = 0; i < s.n_vsc; ++i)
                modes[static_cast<std::size_t>(i)] = mode_at(mv, i, s.n_vsc);
            tab.outcome[static_cast<std::size_t>(t) * tab.n_codes + mv] =
                step_cost(modes, demand, bg, s.capacity, s.mbs_params,
                          s.vsc_params, s.weights);
        }
        for (int i = 0; i < s.n_vsc; ++i) {
            const double cap = s.capacity.vsc_mbps[static_cast<std::size_t>(i)];
            const double active_load =
                cap > 0.0 ? std::min(demand[static_cast<std::size_t>(i)], cap) / cap : 0.0;
            for (SplitMode m : kAllModes) {
                const double load = is_active(m) ? active_load : 0.0;
                tab.draw_kwh[(static_cast<std::size_t>(t) * s.n_vsc +
                              static_cast<std::size_t>(i)) *
                                 4 +
                             static_cast<std::size_t>(m)] =
                    vsc_power(s.vsc_params, m, load) * s.delta_t_hours / 1000.0;
            }
        }
    }
    for (int t = s.horizon - 1; t >= 0; --t) {
        double best = kInf;
        for (ModeCode mv = 0; mv < tab.n_codes; ++mv)
            best = std::min(best, tab.at(t, mv).cost);
        tab.lb_tail[static_cast<std::size_t>(t)] =
            best + tab.lb_tail[static_cast<std::size_t>(t) + 1];
    }
    return tab;
}

/// Completes a SearchResult from a mode-code sequence: per-step outcomes from
/// the tables, batteries re-derived through battery_step.
SearchResult assemble_result(const Scenario& s, const StageTables& tab,
                             const std::vector<ModeCode>& codes,
                             std::uint64_t nodes) {
    SearchResult res;
    res.nodes_expanded = nodes;
    res.modes_per_step.reserve(codes.size());
    res.per_step.reserve(codes.size());
    res.batteries_per_step.reserve(codes.size());

    std::vector<double> batteries = s.battery.initial_kwh;
    double total = 0.0;
    for (int t = 0; t < static_cast<int>(codes.size()); ++t) {
        const ModeCode mv = codes[static_cast<std::size_t>(t)];
        auto modes = decode_modes(mv, s.n_vsc);
        const auto demand = s.demand_at(t);
        const auto loads =
            carried_loads(modes, demand,
                          s.traces.mbs_background_mbps[static_cast<std::size_t>(t)],
                          s.capacity)
                .vsc_loads;
        batteries = battery_step(batteries, s.harvest_at(t), modes, loads,
                                 s.vsc_params, s.battery, s.delta_t_hours);
        const StepOutcome& out = tab.at(t, mv);
        total += out.cost;
        res.per_step.push_back(out);
        res.batteries_per_step.push_back(batteries);
        res.modes_per_step.push_back(std::move(modes));
    }
    res.total_cost = total;
    return res;
}

[[noreturn]] void throw_infeasible(int first_blocked_step) {
    throw InfeasibleError(
        "no feasible mode sequence: every candidate mode vector at step " +
            std::to_string(first_blocked_step) +
            " drives some battery to the threshold or below",
        first_blocked_step);
}

/// Antichain of (cost, batteries) rows packed as [cost, b_0..b_{n-1}].
/// Returns true when the candidate is dominated by an existing row; otherwise
/// inserts it and evicts rows the candidate dominates.
bool dominated_or_insert(std::vector<double>& frontier, double cost,
                         const double* batteries, int n_vsc) {
    const std::size_t stride = static_cast<std::size_t>(n_vsc) + 1;
    std::size_t write = 0;
    for (std::size_t row = 0; row < frontier.size(); row += stride) {
        const double* r = frontier.data() + row;
        bool r_dominates = r[0] <= cost;
        bool cand_dominates = cost <= r[0];
        for (int i = 0; i < n_vsc && (r_dominates || cand_dominates); ++i) {
            if (r[1 + i] < batteries[i])
                r_dominates = false;
            if (batteries[i] < r[1 + i])
                cand_dominates = false;
        }
        if (r_dominates)
            return true; // also covers exact duplicates
        if (!cand_dominates) {
            if (write != row)
                std::copy(r, r + stride, frontier.begin() + static_cast<std::ptrdiff_t>(write));
            write += stride;
        }
    }
    frontier.resize(write);
    frontier.push_back(cost);
    frontier.insert(frontier.end(), batteries, batteries + n_vsc);
    return false;
}

struct DepthFirstSearch {
    const Scenario& s;
    const StageTables& tab;
    SolveOptions opt;

    double upper = kInf;
    std::vector<ModeCode> incumbent;
    bool have_incumbent = false;
    std::vector<ModeCode> current;
    std::vector<double> battery_rows; // [(horizon + 1) * n_vsc] DFS scratch
    std::vector<std::vector<ModeCode>> child_order; // per stage
    std::unordered_map<std::uint64_t, std::vector<double>> frontiers;
    std::unordered_map<std::uint64_t, double> node_cost; // fidelity-mode d_j
    std::uint64_t nodes = 0;
    int max_stage_reached = 0;
    std::vector<double> upper_history;

    explicit DepthFirstSearch(const Scenario& scenario, const StageTables& tables,
                              const SolveOptions& options)
        : s(scenario), tab(tables), opt(options) {
        battery_rows.resize(static_cast<std::size_t>(s.horizon + 1) * s.n_vsc);
        std::copy(s.battery.initial_kwh.begin(), s.battery.initial_kwh.end(),
                  battery_rows.begin());
        current.reserve(static_cast<std::size_t>(s.horizon));

        child_order.resize(static_cast<std::size_t>(s.horizon));
        for (int t = 0; t < s.horizon; ++t) {
            auto& order = child_order[static_cast<std::size_t>(t)];
            order.resize(tab.n_codes);
            for (ModeCode mv = 0; mv < tab.n_codes; ++mv)
                order[mv] = mv;
            if (opt.sort_children && !opt.fidelity_mode)
                std::sort(order.begin(), order.end(), [&](ModeCode a, ModeCode b) {
                    const double ca = tab.at(t, a).cost;
                    const double cb = tab.at(t, b).cost;
                    return ca != cb ? ca < cb : a < b;
                });
        }
    }

    double* battery_row(int t) {
        return battery_rows.data() + static_cast<std::size_t>(t) * s.n_vsc;
    }

    void seed_incumbent(const std::vector<ModeCode>& codes, double cost) {
        upper = cost;
        incumbent = codes;
        have_incumbent = true;
        if (opt.collect_stats)
            upper_history.push_back(cost);
    }

    void run() {
        descend(0, 0.0);
        if (!have_incumbent)
            throw_infeasible(max_stage_reached + 1);
    }

    void descend(int t, double cost) {
        ++nodes;
        if (t == tab.horizon) {
            if (cost < upper) {
                upper = cost;
                incumbent = current;
                have_incumbent = true;
                if (opt.collect_stats)
                    upper_history.push_back(cost);
            }
            return;
        }

        const double* batteries = battery_row(t);
        double* child_batteries = battery_row(t + 1);
        for (ModeCode mv : child_order[static_cast<std::size_t>(t)]) {
            const double arc = tab.at(t, mv).cost;
            const double child_cost = cost + arc;
            if (opt.use_upper_prune && !opt.fidelity_mode) {
                if (child_cost >= upper)
                    continue;
                if (opt.use_completion_bound &&
                    child_cost + tab.lb_tail[static_cast<std::size_t>(t) + 1] >=
                        upper + kBoundSlack)
                    continue;
            }
            if (opt.fidelity_mode && child_cost >= upper)
                continue;

            bool feasible = true;
            for (int i = 0; i < s.n_vsc; ++i) {
                const double e = s.traces.energy_kwh[static_cast<std::size_t>(i)]
                                                    [static_cast<std::size_t>(t)];
                const double charged =
                    std::min(batteries[i] + e, s.battery.capacity_kwh);
                const double b = charged - tab.draw(t, i, mode_at(mv, i, s.n_vsc));
                if (!above_threshold(b, s.battery.threshold_kwh)) {
                    feasible = false;
                    break;
                }
                child_batteries[i] = b;
            }
            if (!feasible)
                continue;
            max_stage_reached = std::max(max_stage_reached, t + 1);

            const std::uint64_t key =
                (static_cast<std::uint64_t>(t + 1) << 32) | mv;
            if (opt.fidelity_mode) {
                auto [it, inserted] = node_cost.try_emplace(key, child_cost);
                if (!inserted) {
                    if (child_cost >= it->second)
                        continue;
                    it->second = child_cost;
                }
            } else if (opt.use_dominance) {
                if (dominated_or_insert(frontiers[key], child_cost,
                                        child_batteries, s.n_vsc))
                    continue;
            }

            current.push_back(mv);
            descend(t + 1, child_cost);
            current.pop_back();
        }
    }
};

std::uint64_t sequence_space(int n_vsc, int horizon, std::uint64_t cap) {
    // 4^(N*K), saturating against the cap without overflow
    std::uint64_t count = 1;
    for (int i = 0; i < n_vsc * horizon; ++i) {
        if (count > cap / 4 + 1)
            return cap + 1;
        count *= 4;
        if (count > cap)
            return cap + 1;
    }
    return count;
}

} // namespace

SearchResult solve(const Scenario& s, const SolveOptions& options) {
    const StageTables tab = build_tables(s);
    DepthFirstSearch search(s, tab, options);

    if (options.warm_start && !options.fidelity_mode) {
        const SplitMode candidates[] = {SplitMode::Cran, SplitMode::UpperLower,
                                        SplitMode::MacPhy};
        for (SplitMode fixed : candidates) {
            SearchResult run = run_policy(StaticPolicy{fixed}, s);
            bool feasible = true;
            for (const auto& row : run.batteries_per_step)
                for (double b : row)
                    if (!above_threshold(b, s.battery.threshold_kwh))
                        feasible = false;
            if (!feasible || run.total_cost >= search.upper)
                continue;
            std::vector<ModeCode> codes;
            codes.reserve(run.modes_per_step.size());
            for (const auto& modes : run.modes_per_step)
                codes.push_back(encode_modes(modes));
            search.seed_incumbent(codes, run.total_cost);
        }
    }

    search.run();
    log_debug("solve: " + std::to_string(search.nodes) + " labels expanded, cost " +
              std::to_string(search.upper));

    SearchResult res = assemble_result(s, tab, search.incumbent, search.nodes);
    res.upper_history = std::move(search.upper_history);
    return res;
}

SearchResult brute_force(const Scenario& s, std::uint64_t max_sequences) {
    if (sequence_space(s.n_vsc, s.horizon, max_sequences) > max_sequences)
        throw ConfigError("brute force refused: 4^(N*K) exceeds the enumeration cap of " +
                          std::to_string(max_sequences) + " sequences");

    const StageTables tab = build_tables(s);
    const ModeCode n_codes = tab.n_codes;

    std::vector<ModeCode> current;
    std::vector<ModeCode> best_sequence;
    double best_cost = kInf;
    std::uint64_t evaluated = 0;
    int max_stage_reached = 0;
    std::vector<double> battery_rows(static_cast<std::size_t>(s.horizon + 1) * s.n_vsc);
    std::copy(s.battery.initial_kwh.begin(), s.battery.initial_kwh.end(),
              battery_rows.begin());

    auto battery_row = [&](int t) {
        return battery_rows.data() + static_cast<std::size_t>(t) * s.n_vsc;
    };

    auto recurse = [&](auto&& self, int t, double cost) -> void {
        if (t == s.horizon) {
            if (cost < best_cost) {
                best_cost = cost;
                best_sequence = current;
            }
            return;
        }
        const double* batteries = battery_row(t);
        double* child_batteries = battery_row(t + 1);
        for (ModeCode mv = 0; mv < n_codes; ++mv) {
            ++evaluated;
            bool feasible = true;
            for (int i = 0; i < s.n_vsc; ++i) {
                const double e = s.traces.energy_kwh[static_cast<std::size_t>(i)]
                                                    [static_cast<std::size_t>(t)];
                const double charged =
                    std::min(batteries[i] + e, s.battery.capacity_kwh);
                const double b = charged - tab.draw(t, i, mode_at(mv, i, s.n_vsc));
                if (!above_threshold(b, s.battery.threshold_kwh)) {
                    feasible = false;
                    break;
                }
                child_batteries[i] = b;
            }
            if (!feasible)
                continue;
            max_stage_reached = std::max(max_stage_reached, t + 1);
            current.push_back(mv);
            self(self, t + 1, cost + tab.at(t, mv).cost);
            current.pop_back();
        }
    };
    recurse(recurse, 0, 0.0);

    if (!std::isfinite(best_cost))
        throw_infeasible(max_stage_reached + 1);
    return assemble_result(s, tab, best_sequence, evaluated);
}

std::vector<PathLabel> expand(const PathLabel& label, const Scenario& s) {
    if (label.t >= s.horizon)
        throw std::logic_error("expand: label is already at the horizon");

    const int t = label.t;
    const auto demand = s.demand_at(t);
    const auto harvest = s.harvest_at(t);
    const double bg = s.traces.mbs_background_mbps[static_cast<std::size_t>(t)];

    std::vector<PathLabel> children;
    const ModeCode n_codes = mode_space_size(s.n_vsc);
    for (ModeCode mv = 0; mv < n_codes; ++mv) {
        auto modes = decode_modes(mv, s.n_vsc);
        const CarriedLoads loads = carried_loads(modes, demand, bg, s.capacity);
        auto batteries = battery_step(label.batteries_kwh, harvest, modes,
                                      loads.vsc_loads, s.vsc_params, s.battery,
                                      s.delta_t_hours);
        const bool feasible =
            std::all_of(batteries.begin(), batteries.end(), [&](double b) {
                return above_threshold(b, s.battery.threshold_kwh);
            });
        if (!feasible)
            continue;
        const StepOutcome outcome = step_cost(modes, demand, bg, s.capacity,
                                              s.mbs_params, s.vsc_params, s.weights);
        PathLabel child;
        child.t = t + 1;
        child.modes = std::move(modes);
        child.batteries_kwh = std::move(batteries);
        child.cost_so_far = label.cost_so_far + outcome.cost;
        child.parent = &label;
        children.push_back(std::move(child));
    }
    return children;
}

} // namespace vsplit
