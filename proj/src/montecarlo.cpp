#include "homewalk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "homewalk/rng.hpp"

namespace homewalk {

namespace {

constexpr std::uint64_t kNoHit = ~0ULL;

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Contiguous static partition of the trial range. Every per-trial result is
// a pure function of the trial index, so the partition (and with it the
// worker count) cannot change any output.
template <class Work>
void for_each_trial_range(std::uint64_t trials, unsigned threads, const Work& work) {
    const std::uint64_t n =
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(trials, 1));
    if (n <= 1) {
        work(0, trials);
        return;
    }
    const std::uint64_t chunk = (trials + n - 1) / n;
    std::vector<std::thread> pool;
    for (std::uint64_t k = 0; k < n; ++k) {
        const std::uint64_t begin = k * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&work, begin, end] { work(begin, end); });
    }
    for (auto& worker : pool) worker.join();
}

}  // namespace

void ExperimentConfig::validate() const {
    strategy.validate();
    if (!(walk.p >= 0.0 && walk.p <= 1.0)) {
        throw std::invalid_argument("experiment: p must lie in [0,1]");
    }
    if (walk.max_steps < 1) throw std::invalid_argument("experiment: max_steps must be >= 1");
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    for (std::size_t i = 0; i < checkpoint_times.size(); ++i) {
        if (i > 0 && checkpoint_times[i] <= checkpoint_times[i - 1]) {
            throw std::invalid_argument("experiment: checkpoints must be strictly increasing");
        }
    }
    if (!checkpoint_times.empty() && checkpoint_times.back() > walk.max_steps) {
        throw std::invalid_argument("experiment: checkpoints must not exceed max_steps");
    }
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t max_steps) {
    std::vector<std::uint64_t> out;
    std::uint64_t cur = 1;
    while (cur < max_steps) {
        out.push_back(cur);
        const auto next = std::uint64_t(std::ceil(double(cur) * 1.0594630943592953));  // 2^(1/12)
        cur = std::max(cur + 1, next);
    }
    out.push_back(max_steps);
    return out;
}

HittingStats run_trials(std::span<const Direction> instructions, const WalkConfig& walk,
                        std::uint64_t trials, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    std::vector<std::uint64_t> hits(trials, kNoHit);
    for_each_trial_range(trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        WalkConfig config = walk;
        for (std::uint64_t i = begin; i < end; ++i) {
            config.seed = trial_seed(walk.seed, i);
            const TrialResult result = simulate(instructions, config);
            if (result.hit_time) hits[i] = *result.hit_time;
        }
    });

    HittingStats stats;
    stats.trials = trials;
    stats.max_steps = walk.max_steps;
    stats.hit_times.reserve(trials);
    for (std::uint64_t h : hits) {
        if (h == kNoHit) {
            ++stats.censored;
        } else {
            stats.hit_times.push_back(h);
        }
    }
    std::sort(stats.hit_times.begin(), stats.hit_times.end());
    return stats;
}

HittingStats run_trials(const ExperimentConfig& config) {
    config.validate();
    const auto stream = instruction_stream(config.strategy);
    const std::vector<Direction> instructions = stream->take(config.walk.max_steps);
    return run_trials(instructions, config.walk, config.trials, config.threads);
}

SurvivalCurve survival_curve(const HittingStats& stats,
                             std::span<const std::uint64_t> checkpoints) {
    SurvivalCurve curve;
    curve.trials = stats.trials;
    curve.points.reserve(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const std::uint64_t t = checkpoints[i];
        if (i > 0 && t <= checkpoints[i - 1]) {
            throw std::invalid_argument("survival_curve: checkpoints must be strictly increasing");
        }
        if (t > stats.max_steps) {
            throw std::invalid_argument(
                "survival_curve: checkpoint beyond the step budget is ill-defined under "
                "censoring");
        }
        const auto up =
            std::upper_bound(stats.hit_times.begin(), stats.hit_times.end(), t);
        const std::uint64_t hit_by_t = std::uint64_t(up - stats.hit_times.begin());
        SurvivalPoint point;
        point.t = t;
        point.survivors = stats.trials - hit_by_t;
        point.fraction = double(point.survivors) / double(stats.trials);
        point.std_error =
            std::sqrt(point.fraction * (1.0 - point.fraction) / double(stats.trials));
        curve.points.push_back(point);
    }
    return curve;
}

TailEstimate tail_exponent(const SurvivalCurve& curve, std::uint64_t t_lo, std::uint64_t t_hi) {
    if (t_lo >= t_hi) throw std::invalid_argument("tail_exponent: need t_lo < t_hi");
    const double floor = 10.0 / double(curve.trials);
    std::vector<double> xs, ys;
    for (const SurvivalPoint& point : curve.points) {
        if (point.t < t_lo || point.t > t_hi) continue;
        if (!(point.fraction > floor)) continue;  // below the noise floor
        xs.push_back(std::log(double(point.t)));
        ys.push_back(std::log(point.fraction));
    }
    if (xs.size() < 5) {
        throw std::runtime_error("tail_exponent: only " + std::to_string(xs.size()) +
                                 " usable points in [" + std::to_string(t_lo) + "," +
                                 std::to_string(t_hi) + "]; need 5");
    }

    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }

    TailEstimate estimate;
    estimate.t_lo = t_lo;
    estimate.t_hi = t_hi;
    estimate.points_used = n;
    estimate.alpha_hat = -(sxy / sxx);
    // A flat curve is fit exactly by a horizontal line.
    estimate.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return estimate;
}

std::pair<std::uint64_t, std::uint64_t> auto_fit_window(const SurvivalCurve& curve,
                                                        double upper_fraction) {
    const double floor = 10.0 / double(curve.trials);
    const auto usable = [&](const SurvivalPoint& point, double upper) {
        return point.fraction > floor && point.fraction < upper;
    };
    for (const double upper : {upper_fraction, 1.0}) {
        std::uint64_t lo = 0, hi = 0;
        std::size_t count = 0;
        for (const SurvivalPoint& point : curve.points) {
            if (!usable(point, upper)) continue;
            if (count == 0) lo = point.t;
            hi = point.t;
            ++count;
        }
        if (count >= 5) return {lo, hi};
    }
    throw std::runtime_error("auto_fit_window: fewer than 5 points between the noise floor and "
                             "the plateau");
}

ReturnCountEstimate empirical_return_count(double p, std::uint64_t tau,
                                           std::span<const Direction> instructions,
                                           std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads) {
    if (instructions.size() < tau) {
        throw std::invalid_argument("empirical_return_count: need at least tau instructions");
    }
    if (trials < 2) throw std::invalid_argument("empirical_return_count: trials must be >= 2");

    std::vector<std::uint32_t> counts(trials, 0);
    for_each_trial_range(trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            WalkRng rng(trial_seed(seed, i));
            GridPoint position{0, 0};
            std::uint32_t returns = 0;
            for (std::uint64_t t = 0; t < tau; ++t) {
                position = step(position, instructions[t], p, rng);
                if (position == GridPoint{0, 0}) ++returns;
            }
            counts[i] = returns;
        }
    });

    // Exact integer moments keep the estimate independent of summation order.
    std::uint64_t sum = 0, sum_sq = 0;
    for (std::uint32_t c : counts) {
        sum += c;
        sum_sq += std::uint64_t(c) * std::uint64_t(c);
    }
    const double n = double(trials);
    const double mean = double(sum) / n;
    const double variance = (double(sum_sq) - n * mean * mean) / (n - 1.0);
    return {mean, std::sqrt(std::max(variance, 0.0) / n)};
}

BoxContainment empirical_box_containment(const ExperimentConfig& config,
                                         std::size_t phase_index) {
    config.validate();

    Schedule schedule;
    for (std::uint64_t horizon = config.strategy.t0;
         schedule.phases.size() <= phase_index; horizon *= 2) {
        schedule = build_schedule(config.strategy, horizon);
    }
    const PhasePlan& plan = schedule.phases[phase_index];
    const std::uint64_t steps = plan.t - config.strategy.t0;  // walk steps before the phase

    // Box half-sides for the walk's actual spread at the phase start.
    const double half_w =
        config.strategy.a * step_sigma_along(config.walk.p) * std::sqrt(double(plan.t));
    const double half_h =
        config.strategy.a * step_sigma_across(config.walk.p) * std::sqrt(double(plan.t));

    enum : std::uint8_t { kHitEarlier = 0, kOutside = 1, kInside = 2 };
    std::vector<std::uint8_t> outcome(config.trials, kHitEarlier);
    if (steps == 0) {
        const bool home_is_origin = config.walk.home == GridPoint{0, 0};
        std::fill(outcome.begin(), outcome.end(),
                  home_is_origin ? std::uint8_t(kHitEarlier) : std::uint8_t(kInside));
    } else {
        const auto stream = instruction_stream(config.strategy);
        const std::vector<Direction> instructions = stream->take(steps);
        WalkConfig walk = config.walk;
        walk.max_steps = steps;
        for_each_trial_range(config.trials, config.threads,
                             [&](std::uint64_t begin, std::uint64_t end) {
            WalkConfig trial_walk = walk;
            for (std::uint64_t i = begin; i < end; ++i) {
                trial_walk.seed = trial_seed(walk.seed, i);
                const TrialResult result = simulate(instructions, trial_walk);
                if (result.hit_time) continue;
                const GridPoint x = result.final_position;
                const bool inside = std::abs(double(x.x)) <= half_w &&
                                    std::abs(double(x.y)) <= half_h;
                outcome[i] = inside ? kInside : kOutside;
            }
        });
    }

    BoxContainment containment;
    for (std::uint8_t o : outcome) {
        if (o == kHitEarlier) continue;
        ++containment.surviving;
        if (o == kInside) ++containment.inside;
    }
    containment.low_power = containment.surviving < 100;
    if (containment.surviving > 0) {
        containment.fraction_inside =
            double(containment.inside) / double(containment.surviving);
        containment.std_error =
            std::sqrt(containment.fraction_inside * (1.0 - containment.fraction_inside) /
                      double(containment.surviving));
    }
    return containment;
}

}  // namespace homewalk
