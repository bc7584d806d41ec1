#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "homewalk/bounds.hpp"
#include "homewalk/montecarlo.hpp"
#include "oracles.hpp"

using namespace homewalk;

TEST_CASE("default checkpoints are a log grid ending at the budget") {
    const auto grid = default_checkpoints(1024);
    REQUIRE(!grid.empty());
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 1024);
    for (std::size_t i = 1; i < grid.size(); ++i) REQUIRE(grid[i] > grid[i - 1]);
    // Roughly 12 points per doubling once spacing beats the +1 floor.
    CHECK(grid.size() > 80);
    CHECK(grid.size() < 140);
    CHECK(default_checkpoints(1) == std::vector<std::uint64_t>{1});
}

TEST_CASE("trial batches are reproducible and worker-count invariant") {
    const std::vector<Direction> instructions(256, Direction::North);
    WalkConfig walk;
    walk.p = 0.7;
    walk.home = {2, 1};
    walk.max_steps = 256;
    walk.seed = 11;

    const HittingStats one = run_trials(instructions, walk, 200, 1);
    const HittingStats three = run_trials(instructions, walk, 200, 3);
    const HittingStats deflt = run_trials(instructions, walk, 200);
    CHECK(one.hit_times == three.hit_times);
    CHECK(one.censored == three.censored);
    CHECK(one.hit_times == deflt.hit_times);
    CHECK(one.trials == 200);
    CHECK(one.hit_times.size() + one.censored == 200);
    CHECK(std::is_sorted(one.hit_times.begin(), one.hit_times.end()));
}

TEST_CASE("noiseless trials hit deterministically") {
    const std::vector<Direction> instructions(16, Direction::North);
    WalkConfig walk;
    walk.p = 0.0;
    walk.max_steps = 16;

    SUBCASE("home on the instructed path") {
        walk.home = {0, 5};
        const HittingStats stats = run_trials(instructions, walk, 50, 2);
        REQUIRE(stats.hit_times.size() == 50);
        CHECK(stats.censored == 0);
        for (const std::uint64_t t : stats.hit_times) REQUIRE(t == 5);
    }
    SUBCASE("home off the instructed path") {
        walk.home = {1, 1};
        const HittingStats stats = run_trials(instructions, walk, 50, 2);
        CHECK(stats.hit_times.empty());
        CHECK(stats.censored == 50);
    }
}

TEST_CASE("config-level runs equal explicit-buffer runs on the same stream") {
    ExperimentConfig config;
    config.walk.p = 0.02;
    config.walk.home = {5, 3};
    config.walk.max_steps = 4096;
    config.walk.seed = 21;
    config.strategy.instruction_seed = 21;
    config.strategy.home = config.walk.home;
    config.trials = 100;
    config.checkpoint_times = default_checkpoints(4096);

    const HittingStats from_config = run_trials(config);
    const std::vector<Direction> buffer = instruction_stream(config.strategy)->take(4096);
    const HittingStats from_buffer = run_trials(buffer, config.walk, 100);
    CHECK(from_config.hit_times == from_buffer.hit_times);
    CHECK(from_config.censored == from_buffer.censored);

    const HittingStats again = run_trials(config);
    CHECK(from_config.hit_times == again.hit_times);
}

TEST_CASE("experiment validation") {
    ExperimentConfig config;
    config.walk.max_steps = 100;
    config.trials = 10;
    SUBCASE("zero trials") {
        config.trials = 0;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("checkpoints must increase") {
        config.checkpoint_times = {10, 10};
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("checkpoints beyond the budget") {
        config.checkpoint_times = {10, 200};
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
}

TEST_CASE("survival curve from hand-tallied hitting times") {
    HittingStats stats;
    stats.trials = 5;
    stats.max_steps = 100;
    stats.hit_times = {3, 7, 7, 50};
    stats.censored = 1;

    const std::vector<std::uint64_t> checkpoints{3, 7, 10, 50, 100};
    const SurvivalCurve curve = survival_curve(stats, checkpoints);
    REQUIRE(curve.points.size() == 5);
    CHECK(curve.trials == 5);
    const std::vector<std::uint64_t> survivors{4, 2, 2, 1, 1};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(curve.points[i].t == checkpoints[i]);
        CHECK(curve.points[i].survivors == survivors[i]);
        const double f = double(survivors[i]) / 5.0;
        CHECK(curve.points[i].fraction == doctest::Approx(f).epsilon(1e-15));
        CHECK(curve.points[i].std_error ==
              doctest::Approx(std::sqrt(f * (1.0 - f) / 5.0)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(survival_curve(stats, std::vector<std::uint64_t>{10, 5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(survival_curve(stats, std::vector<std::uint64_t>{10, 101}),
                    std::invalid_argument);
}

TEST_CASE("tail exponent recovers an exact power law") {
    std::vector<std::uint64_t> times;
    for (std::uint64_t t = 16; t <= 65536; t *= 2) times.push_back(t);
    const SurvivalCurve curve = oracle::synthetic_power_law(0.8, 1000000, times);
    const TailEstimate fit = tail_exponent(curve, 16, 65536);
    CHECK(fit.alpha_hat == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.points_used == times.size());
    CHECK(fit.t_lo == 16);
    CHECK(fit.t_hi == 65536);
}

TEST_CASE("tail exponent tolerates multiplicative noise") {
    std::vector<std::uint64_t> times;
    for (std::uint64_t t = 16; t <= 65536; t *= 2) times.push_back(t);
    const SurvivalCurve curve = oracle::synthetic_power_law(0.8, 1000000, times, 0.05, 7);
    const TailEstimate fit = tail_exponent(curve, 16, 65536);
    CHECK(fit.alpha_hat == doctest::Approx(0.8).epsilon(0.1));
    CHECK(fit.r_squared > 0.98);
}

TEST_CASE("points at or below the noise floor are excluded from the fit") {
    std::vector<std::uint64_t> times;
    for (std::uint64_t t = 16; t <= 65536; t *= 2) times.push_back(t);
    SurvivalCurve curve = oracle::synthetic_power_law(0.8, 1000, times);  // floor 0.01
    std::size_t above = 0;
    for (const auto& point : curve.points) {
        if (point.fraction > 0.01) ++above;
    }
    REQUIRE(above < times.size());  // deep tail sits below the floor
    REQUIRE(above >= 5);
    const TailEstimate fit = tail_exponent(curve, 16, 65536);
    CHECK(fit.points_used == above);
    CHECK(fit.alpha_hat == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("tail exponent needs five usable points") {
    std::vector<std::uint64_t> times{16, 32, 64, 128};
    const SurvivalCurve curve = oracle::synthetic_power_law(0.5, 100000, times);
    CHECK_THROWS_AS(tail_exponent(curve, 16, 128), std::runtime_error);
    CHECK_THROWS_AS(tail_exponent(curve, 128, 16), std::invalid_argument);
}

TEST_CASE("auto fit window skips the initial plateau") {
    std::vector<std::uint64_t> times;
    for (std::uint64_t t = 16; t <= 65536; t *= 2) times.push_back(t);
    SurvivalCurve curve = oracle::synthetic_power_law(0.6, 1000000, times);
    // Prepend a plateau where nothing has hit yet.
    SurvivalPoint plateau;
    plateau.t = 4;
    plateau.survivors = 1000000;
    plateau.fraction = 1.0;
    plateau.std_error = 0.0;
    curve.points.insert(curve.points.begin(), plateau);
    const auto [lo, hi] = auto_fit_window(curve);
    CHECK(lo > 4);  // the flat point is not "strictly below the upper cut"
    const TailEstimate fit = tail_exponent(curve, lo, hi);
    CHECK(fit.alpha_hat == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("return counts are zero without noise and match the bound with it") {
    const std::vector<Direction> straight(4, Direction::North);

    SUBCASE("noiseless straight walk never returns") {
        const ReturnCountEstimate estimate = empirical_return_count(0.0, 4, straight, 100, 3);
        CHECK(estimate.mean == 0.0);
        CHECK(estimate.std_error == 0.0);
    }

    SUBCASE("noisy straight walk attains the analytic value") {
        // R_4 is attained exactly on straight lines; 1e5 seeded trials land
        // within a conservative 5 standard errors.
        const std::uint64_t trials = 100000;
        for (const double p : {0.5, 0.8, 1.0}) {
            CAPTURE(p);
            const double expected = r_tau_lower_bound(4, p).value;
            const ReturnCountEstimate estimate =
                empirical_return_count(p, 4, straight, trials, 3);
            CHECK(std::abs(estimate.mean + 1.0 - expected) < 5.0 * estimate.std_error);
        }
    }

    SUBCASE("zig-zag instructions return strictly more often") {
        std::vector<Direction> zigzag{Direction::North, Direction::South, Direction::North,
                                      Direction::South};
        const ReturnCountEstimate zig = empirical_return_count(0.5, 4, zigzag, 100000, 3);
        const ReturnCountEstimate str = empirical_return_count(0.5, 4, straight, 100000, 3);
        CHECK(zig.mean > str.mean + 10.0 * zig.std_error);
    }
}

TEST_CASE("return count estimates are worker-count invariant") {
    const std::vector<Direction> straight(6, Direction::North);
    const ReturnCountEstimate one = empirical_return_count(0.6, 6, straight, 5000, 17, 1);
    const ReturnCountEstimate four = empirical_return_count(0.6, 6, straight, 5000, 17, 4);
    CHECK(one.mean == four.mean);          // exact: integer aggregation
    CHECK(one.std_error == four.std_error);
}

TEST_CASE("return count input validation") {
    const std::vector<Direction> short_buffer(3, Direction::North);
    CHECK_THROWS_AS(empirical_return_count(0.5, 4, short_buffer, 10, 1),
                    std::invalid_argument);
    const std::vector<Direction> buffer(4, Direction::North);
    CHECK_THROWS_AS(empirical_return_count(0.5, 4, buffer, 1, 1), std::invalid_argument);
}

TEST_CASE("box containment at the design error rate") {
    // The walk's home is moved out of reach so every trial survives to the
    // phase start; the sweep itself keeps searching around the origin.
    ExperimentConfig config;
    config.walk.p = config.strategy.p0;  // walk at the design rate
    config.walk.home = {1000000, 1000000};
    config.walk.max_steps = 1;
    config.walk.seed = 9;
    config.strategy.instruction_seed = 9;
    config.trials = 1000;

    SUBCASE("phase 0 measures the position at walk time zero") {
        const BoxContainment at_start = empirical_box_containment(config, 0);
        CHECK(at_start.surviving == 1000);
        CHECK(at_start.inside == 1000);  // everyone still sits on the origin
        CHECK(at_start.fraction_inside == 1.0);
        CHECK(!at_start.low_power);
    }

    SUBCASE("later phases keep nearly all walks inside their boxes") {
        const BoxContainment later = empirical_box_containment(config, 3);
        CHECK(later.surviving == 1000);
        CHECK(later.fraction_inside >= 0.99);
    }

    SUBCASE("a much tighter box leaks a predictable fraction") {
        ExperimentConfig tight = config;
        tight.strategy.a = 1.0;
        const BoxContainment leaky = empirical_box_containment(tight, 3);
        CHECK(leaky.fraction_inside > 0.6);
        CHECK(leaky.fraction_inside < 0.9);
        CHECK(leaky.std_error > 0.0);
    }
}

TEST_CASE("box containment flags hit-outs and low power") {
    SUBCASE("home at the origin absorbs everyone immediately") {
        ExperimentConfig config;
        config.trials = 200;
        config.walk.p = 0.01;
        const BoxContainment none = empirical_box_containment(config, 1);
        CHECK(none.surviving == 0);
        CHECK(none.fraction_inside == 0.0);
        CHECK(none.low_power);
    }
    SUBCASE("fewer than 100 survivors is low power") {
        ExperimentConfig config;
        config.trials = 50;
        config.walk.p = config.strategy.p0;
        config.walk.home = {1000000, 1000000};
        const BoxContainment few = empirical_box_containment(config, 2);
        CHECK(few.surviving == 50);
        CHECK(few.low_power);
    }
}
