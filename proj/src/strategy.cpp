#include "homewalk/strategy.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "homewalk/rng.hpp"

namespace homewalk {

namespace {

// Exact ceil(t^(1/3)); std::cbrt alone can land on either side of an exact
// cube, so settle the boundary with integer checks.
std::uint64_t ceil_cbrt(std::uint64_t t) {
    auto cubed = [](std::uint64_t v) { return v * v * v; };
    std::uint64_t c = std::uint64_t(std::ceil(std::cbrt(double(t))));
    while (c > 1 && cubed(c - 1) >= t) --c;
    while (cubed(c) < t) ++c;
    return c;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void append_run(std::vector<Direction>& out, Direction d, std::uint64_t n) {
    out.insert(out.end(), std::size_t(n), d);
}

// Horizontal-then-vertical walk from `from` to `to`.
void append_leg(std::vector<Direction>& out, GridPoint from, GridPoint to) {
    const GridPoint d = to - from;
    append_run(out, d.x >= 0 ? Direction::East : Direction::West, std::uint64_t(std::abs(d.x)));
    append_run(out, d.y >= 0 ? Direction::North : Direction::South, std::uint64_t(std::abs(d.y)));
}

// The block emitted for one phase, swept around `center` (origin by default).
std::vector<Direction> emit_phase(const PhasePlan& plan, GridPoint center) {
    if (plan.Z < 1 || plan.Z > plan.offset_range()) {
        throw std::invalid_argument("phase_instructions: Z=" + std::to_string(plan.Z) +
                                    " outside 1.." + std::to_string(plan.offset_range()));
    }
    const std::int64_t W = std::int64_t(plan.W), H = std::int64_t(plan.H);
    const std::int64_t G = std::int64_t(plan.G), N = std::int64_t(plan.N);
    const std::int64_t Z = std::int64_t(plan.Z);
    const std::int64_t C = std::int64_t(ceil_cbrt(plan.t));

    std::vector<Direction> out;
    out.reserve(std::size_t(2 * (W * (N + 1) + N * G + C) + 2 * l1_norm(center)));

    // Approach, translated sweep pattern, return. The pattern itself closes
    // on the sweep center, so the block size is the closed-form phase length
    // plus one approach and one return leg, with no cancellation between the
    // legs and the pattern.
    append_leg(out, {0, 0}, center);
    append_run(out, Direction::West, std::uint64_t(W));
    append_run(out, Direction::South, std::uint64_t(H));
    append_run(out, Direction::North, std::uint64_t(Z));
    for (std::int64_t line = 0; line < N; ++line) {
        append_run(out, line % 2 == 0 ? Direction::East : Direction::West, std::uint64_t(2 * W));
        if (line + 1 < N) append_run(out, Direction::North, std::uint64_t(G));
    }
    append_run(out, Direction::North, std::uint64_t(G + C - Z));
    // Sweep ends at (+-W, N*G + C - H) relative to center; N*G >= 2H keeps the
    // vertical part positive, so the L-shaped return is West/East then South.
    append_leg(out, {N % 2 == 1 ? W : -W, N * G + C - H}, {0, 0});
    append_leg(out, center, {0, 0});
    return out;
}

GridPoint sweep_center(const StrategyConfig& config) {
    if (!config.center_on_home) return {0, 0};
    const double inv = 1.0 / (1.0 - config.p0);
    return {std::int64_t(std::ceil(double(config.home.x) * inv)),
            std::int64_t(std::ceil(double(config.home.y) * inv))};
}

}  // namespace

BoxConstants derive_box_constants(double p0, double a, BoxScaling scaling) {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("derive_box_constants: p0 must lie in (0,1)");
    }
    if (!(a > 0.0)) {
        throw std::invalid_argument("derive_box_constants: a must be positive");
    }
    double s1 = step_sigma_along(p0);
    double s2 = step_sigma_across(p0);
    if (scaling == BoxScaling::Variance) {
        s1 *= s1;
        s2 *= s2;
    }
    return {a * s1, a * s2};
}

void StrategyConfig::validate() const {
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("strategy: p0 must lie in (0,1)");
    if (!(a > 0.0)) throw std::invalid_argument("strategy: a must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("strategy: alpha must be positive");
    if (t0 < 16) throw std::invalid_argument("strategy: t0 must be at least 16");
    if (!center_on_home) {
        // The default stream sweeps around the origin, so home must sit inside
        // the first phase's box or no sweep line can ever cross it.
        const BoxConstants box = derive_box_constants(p0, a, scaling);
        const double reach = std::sqrt(double(t0)) / (1.0 - p0);
        if (!(std::abs(double(home.x)) < box.width_scale * reach &&
              std::abs(double(home.y)) < box.height_scale * reach)) {
            throw std::invalid_argument("strategy: home " + to_string(home) +
                                        " lies outside the first phase box; raise t0 or "
                                        "enable center_on_home");
        }
    }
}

std::uint64_t PhasePlan::offset_range() const { return G + ceil_cbrt(t); }

PhasePlan phase_parameters(std::uint64_t t, double p0, const BoxConstants& box) {
    if (t < 16) {
        throw std::invalid_argument("phase_parameters: t must be at least 16, got " +
                                    std::to_string(t));
    }
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("phase_parameters: p0 must lie in (0,1)");
    }
    const double scaled_sqrt = std::sqrt(double(t)) / (1.0 - p0);
    PhasePlan plan;
    plan.t = t;
    plan.W = std::uint64_t(std::ceil(box.width_scale * scaled_sqrt));
    plan.H = std::uint64_t(std::ceil(box.height_scale * scaled_sqrt));
    plan.G = std::uint64_t(std::ceil(scaled_sqrt / std::log(double(t))));
    plan.N = ceil_div(2 * plan.H, plan.G);
    plan.Z = 0;
    plan.length = 2 * (plan.W * (plan.N + 1) + plan.N * plan.G + ceil_cbrt(t));
    return plan;
}

std::uint64_t draw_offset(const PhasePlan& plan, std::uint64_t instruction_seed,
                          std::uint64_t index) {
    SplitMix64 rng(trial_seed(instruction_seed, index));
    return uniform_one_to_n(rng, plan.offset_range());
}

std::vector<Direction> phase_instructions(const PhasePlan& plan) {
    std::vector<Direction> out = emit_phase(plan, {0, 0});
    assert(out.size() == plan.length);
    return out;
}

Schedule build_schedule(const StrategyConfig& config, std::uint64_t horizon) {
    config.validate();
    const BoxConstants box = derive_box_constants(config.p0, config.a, config.scaling);
    const GridPoint center = sweep_center(config);
    const std::uint64_t detour = 2 * std::uint64_t(l1_norm(center));

    Schedule schedule;
    std::uint64_t t = config.t0;
    for (std::uint64_t index = 0; t <= horizon; ++index) {
        PhasePlan plan = phase_parameters(t, config.p0, box);
        plan.Z = draw_offset(plan, config.instruction_seed, index);
        plan.length += detour;  // approach and return legs of an off-origin sweep
        schedule.phases.push_back(plan);
        t += plan.length;
    }
    return schedule;
}

namespace {

class SweepStream final : public InstructionStream {
  public:
    explicit SweepStream(const StrategyConfig& config)
        : config_(config),
          box_(derive_box_constants(config.p0, config.a, config.scaling)),
          center_(sweep_center(config)),
          t_(config.t0) {}

    std::optional<Direction> next() override {
        if (pos_ >= block_.size()) refill();
        return block_[pos_++];
    }

  private:
    void refill() {
        PhasePlan plan = phase_parameters(t_, config_.p0, box_);
        plan.Z = draw_offset(plan, config_.instruction_seed, index_);
        block_ = emit_phase(plan, center_);
        pos_ = 0;
        t_ += std::uint64_t(block_.size());
        ++index_;
    }

    StrategyConfig config_;
    BoxConstants box_;
    GridPoint center_;
    std::uint64_t t_ = 0;
    std::uint64_t index_ = 0;
    std::vector<Direction> block_;
    std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<InstructionStream> instruction_stream(const StrategyConfig& config) {
    config.validate();
    return std::make_unique<SweepStream>(config);
}

}  // namespace homewalk
