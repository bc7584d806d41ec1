// Exact law of the walk position by step-wise convolution with the 4-point
// step kernel (instructed cell 1-3p/4, each other cell p/4), plus the
// absorbing variant that yields the first-passage time distribution.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "homewalk/lattice.hpp"

namespace homewalk {

struct DpOptions {
    std::uint64_t memory_cap_bytes = 2ULL << 30;  // both DP buffers together
    // Window half-side for first_passage_distribution; 0 means the full
    // reachable radius. A smaller radius drops far-tail mass, reported in
    // FirstPassageResult::truncated_mass.
    std::int64_t window_radius = 0;
};

// Probability mass of X_t over a bounded window. Mass outside the window is
// zero by construction; cells with (x+y+t) odd carry exactly zero.
struct DistributionGrid {
    std::uint64_t t = 0;
    std::int64_t x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    std::vector<double> mass;  // row-major, index (y-y_min)*width + (x-x_min)

    std::int64_t width() const { return x_max - x_min + 1; }
    std::int64_t height() const { return y_max - y_min + 1; }
    bool contains(GridPoint p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    double at(GridPoint p) const {
        return contains(p) ? mass[std::size_t((p.y - y_min) * width() + (p.x - x_min))] : 0.0;
    }

    double total_mass() const;
    std::array<double, 2> mean() const;
    // Variance per axis about the distribution mean.
    std::array<double, 2> variance() const;
};

// Law of X_t from the origin after following `instructions` with error
// probability p. Throws ResourceError if the (2t+3)^2 double window would
// exceed options.memory_cap_bytes.
DistributionGrid exact_distribution(std::span<const Direction> instructions, double p,
                                    const DpOptions& options = {});

struct FirstPassageResult {
    GridPoint home{0, 0};
    std::vector<double> p_hit;     // p_hit[t] = P(T == t), t = 0..instructions.size()
    double truncated_mass = 0.0;   // mass dropped at the window boundary
    double cumulative(std::uint64_t t) const;  // P(T <= t)
};

// Absorbing convolution DP: mass arriving at `home` at step t is recorded as
// P(T=t) and removed before the next step. Sum over t is at most 1.
FirstPassageResult first_passage_distribution(std::span<const Direction> instructions, double p,
                                              GridPoint home, const DpOptions& options = {});

// Argmax cell and its mass; ties broken toward lexicographically smallest (x,y).
std::pair<GridPoint, double> max_point_probability(const DistributionGrid& dist);

// Single-cell upper bound 2 / (pi * t * p * sqrt(3-2p)) on max_x P(X_t = x).
double anticoncentration_bound(std::uint64_t t, double p);

}  // namespace homewalk
