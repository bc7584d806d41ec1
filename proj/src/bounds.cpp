#include "homewalk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "homewalk/errors.hpp"

namespace homewalk {

namespace {

void check_tau(std::uint64_t tau) {
    if (tau < 2 || tau % 2 != 0 || tau > kWalkCountCap) {
        throw std::invalid_argument("bounds: tau must be even and within [2, " +
                                    std::to_string(kWalkCountCap) + "], got " +
                                    std::to_string(tau));
    }
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("bounds: p must lie in [0,1], got " + std::to_string(p));
    }
}

// Pascal's triangle up to the cap; C(r+s, r) with r+s <= tau <= 64 stays
// far below the 128-bit limit.
const std::vector<std::vector<WalkCount>>& binomials() {
    static const std::vector<std::vector<WalkCount>> table = [] {
        std::vector<std::vector<WalkCount>> rows(kWalkCountCap + 1);
        for (std::size_t n = 0; n <= kWalkCountCap; ++n) {
            rows[n].assign(n + 1, 1);
            for (std::size_t k = 1; k < n; ++k) {
                rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
        }
        return rows;
    }();
    return table;
}

// w_min for every (r, s) pair up to the cap, built once; threshold searches
// evaluate R_tau at many p and only this float-free part is expensive.
const std::vector<std::vector<WalkCount>>& min_count_table() {
    static const std::vector<std::vector<WalkCount>> table = [] {
        std::vector<std::vector<WalkCount>> mins(kWalkCountCap + 1);
        WalkCountTable counts = walk_counts(0);
        for (std::uint64_t r = 0; r <= kWalkCountCap; ++r) {
            if (r > 0) counts = walk_counts_next(counts);
            mins[r].resize(kWalkCountCap + 1);
            for (std::uint64_t s = 0; s <= kWalkCountCap; ++s) {
                mins[r][s] = w_min(counts, s);
            }
        }
        return mins;
    }();
    return table;
}

}  // namespace

WalkCount WalkCountTable::count(std::int64_t a, std::int64_t b) const {
    const std::int64_t rr = std::int64_t(r);
    if (a < -rr || a > rr || b < -rr || b > rr) return 0;
    return counts[std::size_t(b + rr) * std::size_t(2 * rr + 1) + std::size_t(a + rr)];
}

WalkCount WalkCountTable::total() const {
    WalkCount sum = 0;
    for (WalkCount c : counts) sum += c;
    return sum;
}

WalkCountTable walk_counts(std::uint64_t r) {
    if (r > kWalkCountCap) {
        throw ResourceError("walk_counts: r=" + std::to_string(r) + " exceeds cap " +
                            std::to_string(kWalkCountCap));
    }
    WalkCountTable table;
    table.r = 0;
    table.counts.assign(1, 1);
    for (std::uint64_t i = 0; i < r; ++i) table = walk_counts_next(table);
    return table;
}

WalkCountTable walk_counts_next(const WalkCountTable& table) {
    if (table.r + 1 > kWalkCountCap) {
        throw ResourceError("walk_counts_next: cap " + std::to_string(kWalkCountCap) +
                            " exceeded");
    }
    WalkCountTable next;
    next.r = table.r + 1;
    const std::int64_t rr = std::int64_t(next.r);
    next.counts.assign(std::size_t(2 * rr + 1) * std::size_t(2 * rr + 1), 0);
    for (std::int64_t b = -rr; b <= rr; ++b) {
        for (std::int64_t a = -rr; a <= rr; ++a) {
            next.counts[std::size_t(b + rr) * std::size_t(2 * rr + 1) + std::size_t(a + rr)] =
                table.count(a - 1, b) + table.count(a + 1, b) + table.count(a, b - 1) +
                table.count(a, b + 1);
        }
    }
    return next;
}

WalkCount w_min(const WalkCountTable& table, std::uint64_t s) {
    const std::int64_t ss = std::int64_t(s);
    bool first = true;
    WalkCount best = 0;
    for (std::int64_t a = -ss; a <= ss; ++a) {
        for (std::int64_t b = -(ss - std::abs(a)); b <= ss - std::abs(a); ++b) {
            if (((a + b - ss) & 1) != 0) continue;
            const WalkCount c = table.count(a, b);
            if (first || c < best) {
                best = c;
                first = false;
            }
        }
    }
    return best;
}

WalkCount w_min(std::uint64_t r, std::uint64_t s) { return w_min(walk_counts(r), s); }

RTauReport r_tau_lower_bound(std::uint64_t tau, double p) {
    check_tau(tau);
    check_probability(p);
    const auto& mins = min_count_table();
    const auto& binom = binomials();

    RTauReport report;
    report.tau = tau;
    report.p = p;
    report.per_k_terms.assign(tau / 2 + 1, 0.0);
    for (std::uint64_t k = 0; k <= tau / 2; ++k) {
        double term = 0.0;
        for (std::uint64_t r = 0; r <= 2 * k; ++r) {
            const std::uint64_t s = 2 * k - r;
            term += double(binom[2 * k][r]) * std::pow(1.0 - p, double(s)) *
                    std::pow(p / 4.0, double(r)) * double(mins[r][s]);
        }
        report.per_k_terms[k] = term;
        report.value += term;
    }
    return report;
}

ConditionMargin impossibility_margin(double p, std::uint64_t tau) {
    check_tau(tau);
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("impossibility_margin: p must lie in (0,1], got " +
                                    std::to_string(p));
    }
    const double r_tau = r_tau_lower_bound(tau, p).value;
    const double rhs = 4.0 / (std::numbers::pi * p * std::sqrt(3.0 - 2.0 * p) * r_tau);
    return {rhs, rhs >= 1.0};
}

namespace {

// Dense sampling guard: bisection is only meaningful against a condition
// that flips once, so refuse to run when sampling sees the wrong shape.
template <class F>
void assert_monotone(F&& value, double lo, double hi, int points, bool increasing,
                     const char* what) {
    double prev = value(lo);
    for (int i = 1; i <= points; ++i) {
        const double x = lo + (hi - lo) * double(i) / double(points);
        const double cur = value(x);
        const bool ok = increasing ? cur >= prev : cur <= prev;
        if (!ok) {
            throw std::runtime_error(std::string(what) + ": not monotone near x=" +
                                     std::to_string(x) + " (" + std::to_string(prev) + " -> " +
                                     std::to_string(cur) + ")");
        }
        prev = cur;
    }
}

template <class Holds>
ThresholdReport bisect_condition(Holds&& holds, double lo, double hi, double tol) {
    ThresholdReport report;
    report.tolerance = tol;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // float resolution floor
        if (holds(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++report.iterations;
    }
    report.bracket_low = lo;
    report.bracket_high = hi;
    report.threshold = 0.5 * (lo + hi);
    return report;
}

}  // namespace

ThresholdReport impossibility_threshold(std::uint64_t tau, double tol) {
    check_tau(tau);
    if (!(tol >= 1e-9)) {
        throw std::invalid_argument("impossibility_threshold: tol must be at least 1e-9");
    }
    const auto rhs = [tau](double p) { return impossibility_margin(p, tau).rhs; };
    assert_monotone(rhs, 1e-4, 1.0, 1000, /*increasing=*/false, "impossibility_threshold");

    // Initial bracket from a coarse grid; rhs blows up as p -> 0 and stays
    // below 1 at p = 1, so a sign change must appear.
    double lo = 0.0, hi = 0.0;
    double prev_p = 1e-4;
    bool prev_holds = rhs(prev_p) >= 1.0;
    if (!prev_holds) {
        throw std::runtime_error("impossibility_threshold: condition already fails at p=1e-4");
    }
    for (int i = 1; i <= 1000; ++i) {
        const double p = double(i) / 1000.0;
        const bool h = rhs(p) >= 1.0;
        if (prev_holds && !h) {
            lo = prev_p;
            hi = p;
            break;
        }
        prev_p = p;
        prev_holds = h;
    }
    if (hi == 0.0) {
        throw std::runtime_error("impossibility_threshold: no sign change in (0,1) at tau=" +
                                 std::to_string(tau));
    }

    ThresholdReport report =
        bisect_condition([&](double p) { return rhs(p) >= 1.0; }, lo, hi, tol);
    report.tau = tau;
    return report;
}

double feasibility_objective(double a, double alpha) {
    if (!(a > 0.0) || !(alpha > 0.0)) {
        throw std::invalid_argument("feasibility_objective: a and alpha must be positive");
    }
    return (1.0 - 4.0 * std::exp(-a * a / 4.0 + 2.0 * alpha)) / (2.0 * a * a);
}

OptimumA optimize_a(double alpha) {
    constexpr double kLo = 0.1, kHi = 100.0;
    constexpr int kSamples = 2000;

    // Unimodality guard: the sampled values must rise to a single peak and
    // fall after it (either side may be empty when the peak sits on an edge).
    int peak = 0;
    std::vector<double> values(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
        const double a = kLo + (kHi - kLo) * double(i) / double(kSamples);
        values[std::size_t(i)] = feasibility_objective(a, alpha);
        if (values[std::size_t(i)] > values[std::size_t(peak)]) peak = i;
    }
    if (std::isinf(values[std::size_t(peak)])) {
        // exp(2 alpha) overflowed at every sample; there is no representable
        // maximum to report.
        throw std::runtime_error("optimize_a: objective overflows double everywhere (alpha=" +
                                 std::to_string(alpha) + ")");
    }
    for (int i = 1; i <= kSamples; ++i) {
        if (std::isinf(values[std::size_t(i)]) && std::isinf(values[std::size_t(i - 1)])) {
            continue;  // -inf plateau from exponent overflow at large alpha
        }
        const bool rising = values[std::size_t(i)] >= values[std::size_t(i - 1)];
        if ((i <= peak) != rising) {
            throw std::runtime_error(
                "optimize_a: objective not unimodal on [0.1,100] at sample " + std::to_string(i) +
                " (alpha=" + std::to_string(alpha) + ")");
        }
    }

    const double step = (kHi - kLo) / double(kSamples);
    double lo = std::max(kLo, kLo + step * double(peak - 1));
    double hi = std::min(kHi, kLo + step * double(peak + 1));

    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = feasibility_objective(x1, alpha);
    double f2 = feasibility_objective(x2, alpha);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = feasibility_objective(x2, alpha);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = feasibility_objective(x1, alpha);
        }
    }
    const double a_star = 0.5 * (lo + hi);
    return {a_star, feasibility_objective(a_star, alpha)};
}

ThresholdReport feasibility_threshold(double alpha, double tol) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("feasibility_threshold: alpha must be positive");
    }
    if (!(tol >= 1e-9)) {
        throw std::invalid_argument("feasibility_threshold: tol must be at least 1e-9");
    }
    const OptimumA best = optimize_a(alpha);
    if (!(best.objective > 0.0)) {
        throw std::runtime_error(
            "feasibility_threshold: optimized objective is nonpositive at alpha=" +
            std::to_string(alpha) + "; no error probability is feasible");
    }

    // Condition: objective / alpha must exceed p0 sqrt(3-2p0) / (1-p0)^2,
    // whose strict growth on (0,1) the sampling below confirms.
    const auto demand = [](double p0) {
        return p0 * std::sqrt(3.0 - 2.0 * p0) / ((1.0 - p0) * (1.0 - p0));
    };
    assert_monotone(demand, 0.0, 0.999, 1000, /*increasing=*/true, "feasibility_threshold");

    const double target = best.objective / alpha;
    double lo = 0.0, hi = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double p0 = double(i) / 1001.0;
        if (demand(p0) >= target) {
            hi = p0;
            lo = double(i - 1) / 1001.0;
            break;
        }
    }
    if (hi == 0.0) {
        // Tiny alpha pushes the crossing into the last grid cell; close in
        // geometrically from the p0 = 1 side (demand diverges there, so a
        // crossing exists for any finite target).
        lo = 1000.0 / 1001.0;
        for (int j = 1; j <= 60 && hi == 0.0; ++j) {
            const double p0 = 1.0 - std::ldexp(1.0 / 1001.0, -j);
            if (demand(p0) >= target) {
                hi = p0;
            } else {
                lo = p0;
            }
        }
        if (hi == 0.0) {
            throw std::runtime_error(
                "feasibility_threshold: condition holds everywhere on (0,1)");
        }
    }

    ThresholdReport report =
        bisect_condition([&](double p0) { return demand(p0) < target; }, lo, hi, tol);
    report.alpha = alpha;
    return report;
}

}  // namespace homewalk
