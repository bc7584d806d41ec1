// Command-line workbench: reproducible sweep-strategy experiments, threshold
// certification, parameter optimization, and anti-concentration checks.
// Every run writes a manifest naming the subcommand, the full parameter set,
// and the produced files; re-running the recorded command line reproduces
// the outputs byte for byte.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "homewalk/bounds.hpp"
#include "homewalk/distribution.hpp"
#include "homewalk/errors.hpp"
#include "homewalk/io.hpp"
#include "homewalk/montecarlo.hpp"
#include "homewalk/strategy.hpp"

namespace hw = homewalk;

namespace {

hw::GridPoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("expected X,Y coordinates, got '" + text + "'");
    }
    try {
        return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("expected X,Y coordinates, got '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad checkpoint '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

hw::DpOptions dp_options_from_env() {
    hw::DpOptions options;
    if (const char* env = std::getenv("HOMEWALK_MEM_CAP_BYTES")) {
        try {
            options.memory_cap_bytes = std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("HOMEWALK_MEM_CAP_BYTES must be a byte count, got '" +
                                        std::string(env) + "'");
        }
    }
    return options;
}

void write_with_manifest(const std::string& subcommand, const hw::ordered_json& parameters,
                         const std::vector<std::pair<std::string, std::string>>& files,
                         const std::string& manifest_path) {
    std::vector<std::string> paths;
    for (const auto& [path, contents] : files) {
        hw::write_file(path, contents);
        paths.push_back(path);
    }
    const hw::ordered_json manifest{{"tool", "homewalk"},
                                    {"version", hw::kToolVersion},
                                    {"subcommand", subcommand},
                                    {"parameters", parameters},
                                    {"outputs", paths}};
    hw::write_file(manifest_path, hw::dump_json(manifest));
    for (const std::string& path : paths) std::cout << "wrote " << path << "\n";
    std::cout << "wrote " << manifest_path << "\n";
}

struct SimulateFlags {
    double p = 0.01;
    std::string home = "0,0";
    std::uint64_t trials = 1000;
    std::uint64_t max_steps = 100000;
    std::uint64_t seed = 1;
    std::uint64_t t0 = 256;
    double a = 4.566;
    double alpha = 1.0;
    double p0 = 0.01139;
    std::string checkpoints;  // empty = log-spaced defaults
    std::string out = "simulate";
    unsigned threads = 0;
    bool schedule_out = false;
};

void cmd_simulate(const SimulateFlags& flags) {
    hw::ExperimentConfig config;
    config.strategy.p0 = flags.p0;
    config.strategy.a = flags.a;
    config.strategy.alpha = flags.alpha;
    config.strategy.t0 = flags.t0;
    config.strategy.instruction_seed = flags.seed;
    config.strategy.home = parse_point(flags.home);
    config.walk.p = flags.p;
    config.walk.home = config.strategy.home;
    config.walk.max_steps = flags.max_steps;
    config.walk.seed = flags.seed;
    config.trials = flags.trials;
    config.checkpoint_times = flags.checkpoints.empty()
                                  ? hw::default_checkpoints(flags.max_steps)
                                  : parse_checkpoints(flags.checkpoints);
    config.threads = flags.threads;
    config.validate();

    const hw::HittingStats stats = hw::run_trials(config);
    const hw::SurvivalCurve curve = hw::survival_curve(stats, config.checkpoint_times);

    hw::ordered_json report;
    report["config"] = hw::to_json(config);
    report["stats"] = hw::to_json(stats);
    try {
        const auto [lo, hi] = hw::auto_fit_window(curve);
        report["tail"] = hw::to_json(hw::tail_exponent(curve, lo, hi));
    } catch (const std::runtime_error&) {
        report["tail"] = nullptr;  // curve too flat or too sparse to fit
    }

    std::vector<std::pair<std::string, std::string>> files{
        {flags.out + ".survival.csv", hw::survival_csv(curve)},
        {flags.out + ".stats.json", hw::dump_json(report)}};
    if (flags.schedule_out) {
        const hw::Schedule schedule = hw::build_schedule(config.strategy, flags.max_steps);
        files.emplace_back(flags.out + ".schedule.txt", hw::schedule_text(schedule));
    }

    hw::ordered_json parameters = hw::to_json(config);
    parameters["schedule_out"] = flags.schedule_out;
    write_with_manifest("simulate", parameters, files, flags.out + ".manifest.json");
}

struct BoundsFlags {
    std::uint64_t tau = 4;
    std::uint64_t tau_max = 0;  // 0 = no sweep
    double tol = 1e-6;
    double p = -1.0;  // >= 0 = evaluate R_tau and the margin at this p
    std::string out = "bounds";
};

void cmd_bounds(const BoundsFlags& flags) {
    const hw::ordered_json parameters{
        {"tau", flags.tau}, {"tau_max", flags.tau_max}, {"tol", flags.tol}, {"p", flags.p}};
    if (flags.tau_max > 0) {
        std::string csv = "tau,threshold\n";
        for (std::uint64_t tau = 4; tau <= flags.tau_max; tau += 2) {
            const hw::ThresholdReport report = hw::impossibility_threshold(tau, flags.tol);
            csv += std::to_string(tau) + "," + hw::format_double(report.threshold) + "\n";
        }
        write_with_manifest("bounds", parameters, {{flags.out + ".csv", csv}},
                            flags.out + ".manifest.json");
        return;
    }
    hw::ordered_json doc;
    if (flags.p >= 0.0) {
        doc["r_tau"] = hw::to_json(hw::r_tau_lower_bound(flags.tau, flags.p));
        if (flags.p > 0.0) {
            const hw::ConditionMargin margin = hw::impossibility_margin(flags.p, flags.tau);
            doc["margin"] = hw::ordered_json{{"rhs", margin.rhs}, {"holds", margin.holds}};
        } else {
            doc["margin"] = nullptr;  // condition degenerate at p = 0
        }
    } else {
        doc = hw::to_json(hw::impossibility_threshold(flags.tau, flags.tol));
    }
    write_with_manifest("bounds", parameters, {{flags.out + ".json", hw::dump_json(doc)}},
                        flags.out + ".manifest.json");
}

struct OptimizeFlags {
    double alpha = 1.0;
    double tol = 1e-7;
    std::string out = "optimize";
};

void cmd_optimize(const OptimizeFlags& flags) {
    const hw::OptimumA best = hw::optimize_a(flags.alpha);
    const hw::ThresholdReport threshold = hw::feasibility_threshold(flags.alpha, flags.tol);
    const hw::ordered_json doc{{"alpha", flags.alpha},
                               {"a_star", best.a_star},
                               {"objective", best.objective},
                               {"threshold", hw::to_json(threshold)}};
    const hw::ordered_json parameters{{"alpha", flags.alpha}, {"tol", flags.tol}};
    write_with_manifest("optimize", parameters, {{flags.out + ".json", hw::dump_json(doc)}},
                        flags.out + ".manifest.json");
}

struct AntiFlags {
    double p = 0.8;
    std::vector<std::uint64_t> times{64, 128, 256, 512};
    std::string instructions = "straight";
    std::string out = "anticoncentration";
};

std::vector<hw::Direction> instruction_preset(const std::string& name, std::uint64_t t) {
    if (name == "straight") {
        return std::vector<hw::Direction>(t, hw::Direction::North);
    }
    if (name == "zigzag") {
        std::vector<hw::Direction> out(t, hw::Direction::North);
        for (std::uint64_t i = 1; i < t; i += 2) out[i] = hw::Direction::South;
        return out;
    }
    if (name == "sweep") {
        const hw::StrategyConfig config;  // defaults
        return hw::instruction_stream(config)->take(t);
    }
    throw std::invalid_argument("unknown instruction preset '" + name + "'");
}

void cmd_anticoncentration(const AntiFlags& flags) {
    const hw::DpOptions options = dp_options_from_env();
    std::string csv = "t,max_mass,bound,ratio\n";
    for (const std::uint64_t t : flags.times) {
        const auto instructions = instruction_preset(flags.instructions, t);
        const hw::DistributionGrid grid = hw::exact_distribution(instructions, flags.p, options);
        const auto [cell, mass] = hw::max_point_probability(grid);
        csv += std::to_string(t) + "," + hw::format_double(mass) + ",";
        if (flags.p > 0.0) {
            const double bound = hw::anticoncentration_bound(t, flags.p);
            csv += hw::format_double(bound) + "," + hw::format_double(mass / bound) + "\n";
        } else {
            csv += "na,na\n";
        }
    }
    const hw::ordered_json parameters{
        {"p", flags.p}, {"t", flags.times}, {"instructions", flags.instructions}};
    write_with_manifest("anticoncentration", parameters, {{flags.out + ".csv", csv}},
                        flags.out + ".manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"guided random walk workbench"};
    app.set_version_flag("--version", hw::kToolVersion);
    app.require_subcommand(1);

    SimulateFlags sim;
    CLI::App* simulate = app.add_subcommand("simulate", "run sweep-strategy trials");
    simulate->add_option("--p", sim.p, "walk error probability")->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--home", sim.home, "home cell as X,Y");
    simulate->add_option("--trials", sim.trials, "number of independent trials");
    simulate->add_option("--max-steps", sim.max_steps, "per-trial step budget");
    simulate->add_option("--seed", sim.seed, "master seed (noise and phase offsets)");
    simulate->add_option("--t0", sim.t0, "first phase start time");
    simulate->add_option("--a", sim.a, "box-scale constant");
    simulate->add_option("--alpha", sim.alpha, "target tail exponent");
    simulate->add_option("--p0", sim.p0, "design error bound of the sweep");
    simulate->add_option("--checkpoints", sim.checkpoints,
                         "comma-separated survival checkpoints (default: log-spaced)");
    simulate->add_option("--out", sim.out, "output path prefix");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = hardware)");
    simulate->add_flag("--schedule-out", sim.schedule_out, "also write the phase schedule");
    simulate->callback([&sim] { cmd_simulate(sim); });

    BoundsFlags bnd;
    CLI::App* bounds = app.add_subcommand("bounds", "impossibility bounds and thresholds");
    bounds->add_option("--tau", bnd.tau, "return-count horizon (even)");
    bounds->add_option("--tau-max", bnd.tau_max, "sweep tau = 4,6,..,tau-max into a CSV");
    bounds->add_option("--tol", bnd.tol, "bisection bracket tolerance");
    bounds->add_option("--p", bnd.p, "evaluate R_tau and the margin at this p instead");
    bounds->add_option("--out", bnd.out, "output path prefix");
    bounds->callback([&bnd] { cmd_bounds(bnd); });

    OptimizeFlags opt;
    CLI::App* optimize = app.add_subcommand("optimize", "feasibility constants and threshold");
    optimize->add_option("--alpha", opt.alpha, "target tail exponent");
    optimize->add_option("--tol", opt.tol, "bisection bracket tolerance");
    optimize->add_option("--out", opt.out, "output path prefix");
    optimize->callback([&opt] { cmd_optimize(opt); });

    AntiFlags anti;
    CLI::App* anticoncentration =
        app.add_subcommand("anticoncentration", "exact max cell mass vs the analytic bound");
    anticoncentration->add_option("--p", anti.p, "walk error probability")
        ->check(CLI::Range(0.0, 1.0));
    anticoncentration->add_option("--t", anti.times, "step counts to evaluate")->delimiter(',');
    anticoncentration->add_option("--instructions", anti.instructions,
                                  "straight | zigzag | sweep");
    anticoncentration->add_option("--out", anti.out, "output path prefix");
    anticoncentration->callback([&anti] { cmd_anticoncentration(anti); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
