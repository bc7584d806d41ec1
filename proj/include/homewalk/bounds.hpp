// Analytic certification: exact lattice walk counts feed a lower bound on
// the expected number of returns, which drives the impossibility condition;
// the feasibility side optimizes a box-scale objective and compares it with
// a monotone function of the error probability. Both thresholds come out of
// sign-checked bisections.
#pragma once

#include <cstdint>
#include <vector>

namespace homewalk {

// Counts overflow 128 bits only far beyond any tau of interest; the cap also
// guards the quadratic minimum scan.
inline constexpr std::uint64_t kWalkCountCap = 64;

using WalkCount = unsigned __int128;

// W_r(a,b): number of r-step nearest-neighbor walks from (0,0) to (a,b),
// tabulated exactly over the reachable square |a|,|b| <= r.
struct WalkCountTable {
    std::uint64_t r = 0;
    std::vector<WalkCount> counts;  // dense (2r+1)^2, row-major by (b, a)

    WalkCount count(std::int64_t a, std::int64_t b) const;
    WalkCount total() const;  // 4^r
};

// Exact integer DP over the 4-neighbor recurrence. Throws for r beyond the cap.
WalkCountTable walk_counts(std::uint64_t r);

// One extra DP step, so callers can grow tables incrementally.
WalkCountTable walk_counts_next(const WalkCountTable& table);

// min W_r(a,b) over |a|+|b| <= s with a+b = s (mod 2); zero whenever some
// such cell is unreachable in r steps.
WalkCount w_min(const WalkCountTable& table, std::uint64_t s);
WalkCount w_min(std::uint64_t r, std::uint64_t s);

struct RTauReport {
    std::uint64_t tau = 0;
    double p = 0.0;
    double value = 0.0;               // lower bound on the expected returns by tau
    std::vector<double> per_k_terms;  // tau/2 + 1 summands; per_k_terms[0] == 1
};

// R_tau(p) >= sum_{k<=tau/2} sum_{r+s=2k} C(r+s,r) (1-p)^s (p/4)^r W_{r,s},
// with exact binomials and walk counts; floats enter only in the final
// combination. tau must be even, 2 <= tau <= cap.
RTauReport r_tau_lower_bound(std::uint64_t tau, double p);

struct ConditionMargin {
    double rhs = 0.0;  // value the condition compares against 1
    bool holds = false;
};

// Impossibility condition at error probability p: the walk visits any fixed
// cell at most ~ t * max-point-mass times in expectation, so reaching home
// in finite expected time forces 4 / (pi p sqrt(3-2p) R_tau(p)) >= 1.
// holds=false certifies infinite expected hitting time for every
// instruction sequence at this p. Rejects p outside (0,1].
ConditionMargin impossibility_margin(double p, std::uint64_t tau);

struct ThresholdReport {
    double threshold = 0.0;
    double bracket_low = 0.0;   // condition holds here
    double bracket_high = 0.0;  // condition fails here
    double tolerance = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t tau = 0;  // impossibility input; 0 for feasibility reports
    double alpha = 0.0;     // feasibility input; 0 for impossibility reports
};

// Bisection for the unique sign change of impossibility_margin(., tau) on
// (0,1). Monotonicity of the margin is checked by dense sampling first and
// a violation aborts rather than bisecting a non-monotone curve.
ThresholdReport impossibility_threshold(std::uint64_t tau, double tol);

// p0-free factor of the feasibility condition: (1/(2a^2))(1 - 4 e^(-a^2/4 + 2 alpha)).
double feasibility_objective(double a, double alpha);

struct OptimumA {
    double a_star = 0.0;
    double objective = 0.0;
};

// Golden-section maximum of the objective over a in [0.1, 100] to 1e-6;
// unimodality on the range is asserted by sampling.
OptimumA optimize_a(double alpha);

// Largest p0 with optimize_a(alpha).objective / alpha > p0 sqrt(3-2p0) / (1-p0)^2,
// by bisection; the right-hand side is sampled for strict monotonicity
// first. Fails explicitly when the optimized objective is nonpositive.
ThresholdReport feasibility_threshold(double alpha, double tol);

}  // namespace homewalk
