#include "homewalk/walk.hpp"

#include <stdexcept>
#include <string>

namespace homewalk {

namespace {

void check(const WalkConfig& config) {
    if (!(config.p >= 0.0 && config.p <= 1.0)) {
        throw std::invalid_argument("walk: p must lie in [0,1], got " + std::to_string(config.p));
    }
    if (config.max_steps < 1) {
        throw std::invalid_argument("walk: max_steps must be at least 1");
    }
}

}  // namespace

TrialResult simulate(std::span<const Direction> instructions, const WalkConfig& config) {
    check(config);
    GridPoint position{0, 0};
    if (position == config.home) {
        return {0, position, 0};
    }
    WalkRng rng(config.seed);
    for (std::uint64_t t = 0; t < config.max_steps; ++t) {
        if (t >= instructions.size()) {
            throw StreamExhausted("walk: instructions ran out at step " + std::to_string(t) +
                                  " of " + std::to_string(config.max_steps) + " with no hit");
        }
        position = step(position, instructions[t], config.p, rng);
        if (position == config.home) {
            return {t + 1, position, t + 1};
        }
    }
    return {std::nullopt, position, config.max_steps};
}

TrialResult simulate(InstructionStream& instructions, const WalkConfig& config) {
    check(config);
    // A hit can end the trial early, but materializing the whole budget keeps
    // the step loop free of virtual calls; budgets are bounded by max_steps.
    std::vector<Direction> buffer = instructions.take(config.max_steps);
    return simulate(std::span<const Direction>(buffer), config);
}

}  // namespace homewalk
