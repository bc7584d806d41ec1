// Phased sweeping instruction stream. Each phase starting at time t walks to
// the lower-left corner of a box of half-width W and half-height H, rises a
// random offset Z, sweeps N horizontal lines spaced G apart, tops out, and
// returns to the origin, so that the instructed position is (0,0) again at
// the start of the next phase.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "homewalk/lattice.hpp"
#include "homewalk/walk.hpp"

namespace homewalk {

// How the box half-sides scale with the per-step spread: Deviation uses the
// standard deviations sigma1, sigma2 of the step kernel (default; matches
// the containment box the sweep has to cover), Variance uses sigma1^2,
// sigma2^2 (the literal constants quoted alongside the parameter choices,
// dimensionally odd but kept selectable for comparison).
enum class BoxScaling { Deviation, Variance };

struct BoxConstants {
    double width_scale = 0.0;   // multiplies sqrt(t)/(1-p0) to give W
    double height_scale = 0.0;  // multiplies sqrt(t)/(1-p0) to give H
};

BoxConstants derive_box_constants(double p0, double a,
                                  BoxScaling scaling = BoxScaling::Deviation);

struct StrategyConfig {
    double p0 = 0.01139;  // design error bound the sweep is sized for
    double a = 4.566;     // box-scale constant
    double alpha = 1.0;   // target tail exponent (used by the feasibility bound)
    std::uint64_t t0 = 256;
    std::uint64_t instruction_seed = 0;
    BoxScaling scaling = BoxScaling::Deviation;
    GridPoint home{0, 0};        // only checked to lie inside the first box
    bool center_on_home = false; // translate every sweep toward home instead

    void validate() const;  // throws std::invalid_argument
};

struct PhasePlan {
    std::uint64_t t = 0;  // phase start time
    std::uint64_t W = 0;  // half-width in instructed steps
    std::uint64_t H = 0;  // half-height
    std::uint64_t G = 0;  // vertical gap between sweep lines
    std::uint64_t N = 0;  // number of sweep lines, ceil(2H/G)
    std::uint64_t Z = 0;  // random initial rise, in 1..offset_range; 0 = not drawn
    std::uint64_t length = 0;  // emitted instruction count; independent of Z

    // Number of admissible offsets, G + ceil(t^(1/3)); strictly exceeds the
    // line gap so that shifted sweeps jointly cover every row.
    std::uint64_t offset_range() const;
};

// W, H, G, N and the closed-form length for a phase starting at time t.
// Z is left undrawn. Throws std::invalid_argument for t < 16 (the gap
// formula needs ln t comfortably positive).
PhasePlan phase_parameters(std::uint64_t t, double p0, const BoxConstants& box);

// Z for phase `index` of a stream seeded with `instruction_seed`, uniform
// on {1, ..., plan.offset_range()}.
std::uint64_t draw_offset(const PhasePlan& plan, std::uint64_t instruction_seed,
                          std::uint64_t index);

// The phase's instruction block; requires Z to be set. Net displacement is
// exactly (0,0) and the size equals plan.length.
std::vector<Direction> phase_instructions(const PhasePlan& plan);

struct Schedule {
    std::vector<PhasePlan> phases;  // start times strictly increasing
};

// Phases from t0 until the start time exceeds `horizon`; each start time is
// the previous one plus the previous block's length. Z is drawn per phase.
Schedule build_schedule(const StrategyConfig& config, std::uint64_t horizon);

// Unbounded stream that lazily concatenates phase blocks. Deterministic in
// the config; optionally translated so sweeps center on config.home.
std::unique_ptr<InstructionStream> instruction_stream(const StrategyConfig& config);

}  // namespace homewalk
