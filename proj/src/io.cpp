#include "homewalk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace homewalk {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    std::string text(buf, result.ptr);
    if (text.find_first_of(".eE") == std::string::npos) text += ".0";
    return text;
}

std::string survival_csv(const SurvivalCurve& curve) {
    std::string out = "t,survivors,fraction,stderr\n";
    for (const SurvivalPoint& point : curve.points) {
        out += std::to_string(point.t);
        out += ',';
        out += std::to_string(point.survivors);
        out += ',';
        out += format_double(point.fraction);
        out += ',';
        out += format_double(point.std_error);
        out += '\n';
    }
    return out;
}

std::string schedule_text(const Schedule& schedule) {
    std::string out;
    for (const PhasePlan& plan : schedule.phases) {
        out += std::to_string(plan.t);
        for (std::uint64_t field : {plan.W, plan.H, plan.G, plan.N, plan.Z, plan.length}) {
            out += ' ';
            out += std::to_string(field);
        }
        out += '\n';
    }
    return out;
}

ordered_json to_json(const RTauReport& report) {
    return ordered_json{{"tau", report.tau},
                        {"p", report.p},
                        {"value", report.value},
                        {"per_k_terms", report.per_k_terms}};
}

ordered_json to_json(const ThresholdReport& report) {
    ordered_json doc;
    doc["kind"] = report.tau > 0 ? "impossibility" : "feasibility";
    if (report.tau > 0) {
        doc["tau"] = report.tau;
    } else {
        doc["alpha"] = report.alpha;
    }
    doc["threshold"] = report.threshold;
    doc["bracket_low"] = report.bracket_low;
    doc["bracket_high"] = report.bracket_high;
    doc["tolerance"] = report.tolerance;
    doc["iterations"] = report.iterations;
    return doc;
}

ordered_json to_json(const StrategyConfig& config) {
    return ordered_json{{"p0", config.p0},
                        {"a", config.a},
                        {"alpha", config.alpha},
                        {"t0", config.t0},
                        {"instruction_seed", config.instruction_seed},
                        {"box_scaling", config.scaling == BoxScaling::Deviation ? "deviation"
                                                                                : "variance"},
                        {"home", {config.home.x, config.home.y}},
                        {"center_on_home", config.center_on_home}};
}

ordered_json to_json(const ExperimentConfig& config) {
    return ordered_json{{"strategy", to_json(config.strategy)},
                        {"p", config.walk.p},
                        {"home", {config.walk.home.x, config.walk.home.y}},
                        {"max_steps", config.walk.max_steps},
                        {"seed", config.walk.seed},
                        {"trials", config.trials},
                        {"checkpoints", config.checkpoint_times},
                        {"threads", config.threads}};
}

ordered_json to_json(const HittingStats& stats) {
    ordered_json doc;
    doc["trials"] = stats.trials;
    doc["max_steps"] = stats.max_steps;
    doc["hits"] = stats.hit_times.size();
    doc["censored"] = stats.censored;
    if (stats.hit_times.empty()) {
        doc["hit_time_min"] = nullptr;
        doc["hit_time_median"] = nullptr;
        doc["hit_time_mean"] = nullptr;
        doc["hit_time_max"] = nullptr;
    } else {
        double sum = 0.0;
        for (std::uint64_t h : stats.hit_times) sum += double(h);
        const std::size_t n = stats.hit_times.size();
        const double median = n % 2 == 1 ? double(stats.hit_times[n / 2])
                                         : 0.5 * double(stats.hit_times[n / 2 - 1] +
                                                        stats.hit_times[n / 2]);
        doc["hit_time_min"] = stats.hit_times.front();
        doc["hit_time_median"] = median;
        doc["hit_time_mean"] = sum / double(n);
        doc["hit_time_max"] = stats.hit_times.back();
    }
    // With censored trials the observed mean undercounts E[T].
    doc["mean_is_lower_bound"] = stats.censored > 0;
    return doc;
}

ordered_json to_json(const TailEstimate& estimate) {
    return ordered_json{{"alpha_hat", estimate.alpha_hat},
                        {"fit_window", {estimate.t_lo, estimate.t_hi}},
                        {"r_squared", estimate.r_squared},
                        {"points_used", estimate.points_used}};
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(contents.data(), std::streamsize(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace homewalk
