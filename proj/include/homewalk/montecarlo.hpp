// Reproducible trial harness: runs many independent walks against one shared
// instruction buffer, derives per-trial seeds from (master seed, index), and
// aggregates hitting times into survival curves and tail-exponent fits.
// Outputs are identical for any worker count.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "homewalk/strategy.hpp"
#include "homewalk/walk.hpp"

namespace homewalk {

struct ExperimentConfig {
    StrategyConfig strategy;
    WalkConfig walk;                             // p, home, max_steps, master seed
    std::uint64_t trials = 1;
    std::vector<std::uint64_t> checkpoint_times; // strictly increasing, last <= max_steps
    unsigned threads = 0;                        // 0 = hardware concurrency

    void validate() const;  // throws std::invalid_argument
};

// Log-spaced default checkpoint grid (about 12 points per doubling of t).
std::vector<std::uint64_t> default_checkpoints(std::uint64_t max_steps);

struct HittingStats {
    std::uint64_t trials = 0;
    std::uint64_t max_steps = 0;
    std::vector<std::uint64_t> hit_times;  // sorted; size + censored == trials
    std::uint64_t censored = 0;            // trials with T > max_steps
};

// Runs config.trials independent walks under the sweep stream. Trial i uses
// noise seed trial_seed(walk.seed, i), so results do not depend on the
// worker count or on scheduling.
HittingStats run_trials(const ExperimentConfig& config);

// Same harness against an explicit instruction buffer (oracle comparisons).
HittingStats run_trials(std::span<const Direction> instructions, const WalkConfig& walk,
                        std::uint64_t trials, unsigned threads = 0);

struct SurvivalPoint {
    std::uint64_t t = 0;
    std::uint64_t survivors = 0;  // trials with T > t (censored ones included)
    double fraction = 0.0;
    double std_error = 0.0;       // binomial, sqrt(f(1-f)/trials)
};

struct SurvivalCurve {
    std::uint64_t trials = 0;
    std::vector<SurvivalPoint> points;  // fractions nonincreasing in t
};

SurvivalCurve survival_curve(const HittingStats& stats,
                             std::span<const std::uint64_t> checkpoints);

struct TailEstimate {
    double alpha_hat = 0.0;  // minus the log-log slope of P(T > t)
    std::uint64_t t_lo = 0, t_hi = 0;
    double r_squared = 0.0;
    std::size_t points_used = 0;
};

// Least-squares line through (log t, log fraction) over checkpoints in
// [t_lo, t_hi], skipping points at or below the noise floor of 10/trials.
// Throws if fewer than 5 usable points remain.
TailEstimate tail_exponent(const SurvivalCurve& curve, std::uint64_t t_lo, std::uint64_t t_hi);

// Widest window whose points lie strictly between the noise floor and the
// given upper fraction (default: below 0.9, i.e. past the initial plateau).
std::pair<std::uint64_t, std::uint64_t> auto_fit_window(const SurvivalCurve& curve,
                                                        double upper_fraction = 0.9);

struct ReturnCountEstimate {
    double mean = 0.0;       // average #{1 <= t <= tau : X_t = origin} per trial
    double std_error = 0.0;
};

// Monte Carlo estimate of the expected number of returns to the start within
// tau steps. The walk is not absorbed at the origin. The matching analytic
// bound counts the t=0 visit too, so compare mean + 1 against it.
ReturnCountEstimate empirical_return_count(double p, std::uint64_t tau,
                                           std::span<const Direction> instructions,
                                           std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads = 0);

struct BoxContainment {
    std::uint64_t surviving = 0;   // trials with T > phase start time
    std::uint64_t inside = 0;      // of those, walks inside the phase box
    double fraction_inside = 0.0;
    double std_error = 0.0;
    bool low_power = false;        // fewer than 100 surviving trials
};

// Among trials that have not hit home by the start of phase `phase_index`,
// the fraction whose position lies inside that phase's box
// [-W..W] x [-H..H] around the instructed origin.
BoxContainment empirical_box_containment(const ExperimentConfig& config,
                                         std::size_t phase_index);

}  // namespace homewalk
