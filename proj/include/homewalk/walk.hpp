// The guided random walk: each step follows the current instruction with
// probability 1-p and moves uniformly at random with probability p (the
// random move may coincide with the instruction, so the instructed
// neighbor is reached with probability 1-3p/4 overall).
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "homewalk/errors.hpp"
#include "homewalk/lattice.hpp"
#include "homewalk/rng.hpp"

namespace homewalk {

struct WalkConfig {
    double p = 0.0;         // error probability in [0,1]
    GridPoint home{0, 0};   // target cell
    std::uint64_t max_steps = 1;
    std::uint64_t seed = 0;
};

struct TrialResult {
    std::optional<std::uint64_t> hit_time;  // first t with X_t == home
    GridPoint final_position{0, 0};
    std::uint64_t steps_executed = 0;
};

using WalkRng = std::mt19937_64;

// Per-step moments of the kernel, split along / across the instructed axis.
// Along: displacement is +1 w.p. 1-3p/4, -1 w.p. p/4, 0 w.p. p/2, so the
// mean is 1-p and the variance (p/2)(3-2p). Across: +-1 w.p. p/4 each.
inline double step_sigma_along(double p) { return std::sqrt(0.5 * p * (3.0 - 2.0 * p)); }
inline double step_sigma_across(double p) { return std::sqrt(0.5 * p); }

// One transition. Draws a uniform real in [0,1); on a mistake (< p) draws
// one of the four unit moves uniformly, otherwise follows the instruction.
inline GridPoint step(GridPoint position, Direction instruction, double p, WalkRng& rng) {
    Direction d = instruction;
    if (to_canonical(rng()) < p) {
        d = static_cast<Direction>(rng() & 3);
    }
    return position + displacement(d);
}

// Lazily extensible instruction sequence.
class InstructionStream {
  public:
    virtual ~InstructionStream() = default;

    // Next instruction, or nullopt once the stream is exhausted.
    virtual std::optional<Direction> next() = 0;

    // First n instructions (fewer if the stream ends early).
    std::vector<Direction> take(std::size_t n) {
        std::vector<Direction> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto d = next();
            if (!d) break;
            out.push_back(*d);
        }
        return out;
    }
};

class FiniteStream final : public InstructionStream {
  public:
    explicit FiniteStream(std::vector<Direction> instructions)
        : owned_(std::move(instructions)), view_(owned_) {}
    explicit FiniteStream(std::span<const Direction> instructions) : view_(instructions) {}

    std::optional<Direction> next() override {
        if (pos_ >= view_.size()) return std::nullopt;
        return view_[pos_++];
    }

  private:
    std::vector<Direction> owned_;
    std::span<const Direction> view_;
    std::size_t pos_ = 0;
};

// Runs the chain from the origin, one instruction per step, stopping at the
// first t with X_t == home (t=0 included) or after max_steps. Fully
// determined by config.seed. Throws StreamExhausted if the instructions run
// out before max_steps without a hit.
TrialResult simulate(std::span<const Direction> instructions, const WalkConfig& config);
TrialResult simulate(InstructionStream& instructions, const WalkConfig& config);

}  // namespace homewalk
