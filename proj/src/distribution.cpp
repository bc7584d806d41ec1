#include "homewalk/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "homewalk/errors.hpp"

namespace homewalk {

namespace {

// Both DP buffers cover [-radius-1 .. radius+1]^2; the extra ring stays zero
// and lets the convolution read the neighbors of frontier cells unguarded.
struct Layout {
    std::int64_t radius = 0;
    std::int64_t side = 0;

    explicit Layout(std::int64_t r) : radius(r), side(2 * (r + 1) + 1) {}
    std::size_t index(std::int64_t x, std::int64_t y) const {
        return std::size_t(y + radius + 1) * std::size_t(side) + std::size_t(x + radius + 1);
    }
    std::uint64_t buffer_bytes() const {
        return 2 * std::uint64_t(side) * std::uint64_t(side) * sizeof(double);
    }
};

void check_memory(const Layout& layout, const DpOptions& options) {
    if (layout.buffer_bytes() > options.memory_cap_bytes) {
        throw ResourceError("distribution: DP window needs " +
                            std::to_string(layout.buffer_bytes()) + " bytes, cap is " +
                            std::to_string(options.memory_cap_bytes));
    }
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("distribution: p must lie in [0,1], got " + std::to_string(p));
    }
}

// Transition mass toward each of the four directions given the instruction.
std::array<double, 4> step_weights(Direction instruction, double p) {
    std::array<double, 4> w;
    w.fill(p / 4.0);
    w[static_cast<std::size_t>(instruction)] += 1.0 - p;
    return w;
}

// One convolution step: writes every cell of parity (s+1) within max-norm
// radius r, reading the parity-s cells of `cur`. Cells of the other parity
// are stale leftovers from two steps ago and are neither read nor written.
void convolve(const Layout& layout, const std::vector<double>& cur, std::vector<double>& next,
              const std::array<double, 4>& w, std::int64_t r, std::uint64_t parity) {
    const std::int64_t side = layout.side;
    const double wn = w[0], we = w[1], ws = w[2], ww = w[3];
    for (std::int64_t y = -r; y <= r; ++y) {
        std::int64_t x = -r;
        if (((x + y + std::int64_t(parity)) & 1) != 0) ++x;
        const double* row = cur.data();
        double* out = next.data();
        for (; x <= r; x += 2) {
            const std::size_t c = layout.index(x, y);
            out[c] = wn * row[c - std::size_t(side)] + ws * row[c + std::size_t(side)] +
                     we * row[c - 1] + ww * row[c + 1];
        }
    }
}

}  // namespace

double DistributionGrid::total_mass() const {
    double sum = 0.0;
    for (double m : mass) sum += m;
    return sum;
}

std::array<double, 2> DistributionGrid::mean() const {
    double mx = 0.0, my = 0.0;
    std::size_t i = 0;
    for (std::int64_t y = y_min; y <= y_max; ++y) {
        for (std::int64_t x = x_min; x <= x_max; ++x, ++i) {
            mx += mass[i] * double(x);
            my += mass[i] * double(y);
        }
    }
    return {mx, my};
}

std::array<double, 2> DistributionGrid::variance() const {
    const auto mu = mean();
    double vx = 0.0, vy = 0.0;
    std::size_t i = 0;
    for (std::int64_t y = y_min; y <= y_max; ++y) {
        for (std::int64_t x = x_min; x <= x_max; ++x, ++i) {
            const double dx = double(x) - mu[0];
            const double dy = double(y) - mu[1];
            vx += mass[i] * dx * dx;
            vy += mass[i] * dy * dy;
        }
    }
    return {vx, vy};
}

DistributionGrid exact_distribution(std::span<const Direction> instructions, double p,
                                    const DpOptions& options) {
    check_p(p);
    const std::int64_t t = std::int64_t(instructions.size());
    const Layout layout(t);
    check_memory(layout, options);

    std::vector<double> cur(std::size_t(layout.side) * std::size_t(layout.side), 0.0);
    std::vector<double> next(cur.size(), 0.0);
    cur[layout.index(0, 0)] = 1.0;

    for (std::int64_t s = 0; s < t; ++s) {
        const auto w = step_weights(instructions[std::size_t(s)], p);
        convolve(layout, cur, next, w, s + 1, std::uint64_t(s + 1) & 1);
        std::swap(cur, next);
    }

    DistributionGrid grid;
    grid.t = std::uint64_t(t);
    grid.x_min = grid.y_min = -t;
    grid.x_max = grid.y_max = t;
    grid.mass.assign(std::size_t(grid.width()) * std::size_t(grid.height()), 0.0);
    std::size_t i = 0;
    for (std::int64_t y = -t; y <= t; ++y) {
        for (std::int64_t x = -t; x <= t; ++x, ++i) {
            if (((x + y + t) & 1) == 0) {
                grid.mass[i] = cur[layout.index(x, y)];
            }
        }
    }
    return grid;
}

double FirstPassageResult::cumulative(std::uint64_t t) const {
    double sum = 0.0;
    for (std::uint64_t i = 0; i <= t && i < p_hit.size(); ++i) sum += p_hit[i];
    return sum;
}

FirstPassageResult first_passage_distribution(std::span<const Direction> instructions, double p,
                                              GridPoint home, const DpOptions& options) {
    check_p(p);
    const std::int64_t t = std::int64_t(instructions.size());

    FirstPassageResult result;
    result.home = home;
    result.p_hit.assign(std::size_t(t) + 1, 0.0);
    if (home == GridPoint{0, 0}) {
        result.p_hit[0] = 1.0;
        return result;
    }

    const std::int64_t R =
        options.window_radius > 0 ? std::min<std::int64_t>(options.window_radius, t) : t;
    if (max_norm(home) > R) {
        throw std::invalid_argument("first_passage: window radius " + std::to_string(R) +
                                    " excludes home " + to_string(home));
    }
    const Layout layout(R);
    check_memory(layout, options);

    std::vector<double> cur(std::size_t(layout.side) * std::size_t(layout.side), 0.0);
    std::vector<double> next(cur.size(), 0.0);
    cur[layout.index(0, 0)] = 1.0;
    const std::size_t home_cell = layout.index(home.x, home.y);

    for (std::int64_t s = 0; s < t; ++s) {
        const auto w = step_weights(instructions[std::size_t(s)], p);
        // Mass on the window's rim can escape; it is dropped by the clamped
        // convolution below, so tally it first.
        if (s >= R) {
            for (std::int64_t v = -R; v <= R; ++v) {
                result.truncated_mass += w[1] * cur[layout.index(R, v)];    // east off +x rim
                result.truncated_mass += w[3] * cur[layout.index(-R, v)];   // west off -x rim
                result.truncated_mass += w[0] * cur[layout.index(v, R)];    // north off +y rim
                result.truncated_mass += w[2] * cur[layout.index(v, -R)];   // south off -y rim
            }
        }
        convolve(layout, cur, next, w, std::min(s + 1, R), std::uint64_t(s + 1) & 1);
        result.p_hit[std::size_t(s) + 1] = next[home_cell];
        next[home_cell] = 0.0;
        std::swap(cur, next);
    }
    return result;
}

std::pair<GridPoint, double> max_point_probability(const DistributionGrid& dist) {
    GridPoint best{dist.x_min, dist.y_min};
    double best_mass = -1.0;
    std::size_t i = 0;
    for (std::int64_t y = dist.y_min; y <= dist.y_max; ++y) {
        for (std::int64_t x = dist.x_min; x <= dist.x_max; ++x, ++i) {
            const double m = dist.mass[i];
            if (m > best_mass ||
                (m == best_mass && (x < best.x || (x == best.x && y < best.y)))) {
                best = {x, y};
                best_mass = m;
            }
        }
    }
    return {best, best_mass};
}

double anticoncentration_bound(std::uint64_t t, double p) {
    if (t == 0 || !(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("anticoncentration_bound: need t >= 1 and p in (0,1]");
    }
    return 2.0 / (std::numbers::pi * double(t) * p * std::sqrt(3.0 - 2.0 * p));
}

}  // namespace homewalk
