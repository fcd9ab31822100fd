#pragma once

// Rate-region assembly: solve the profile problem across a grid of profile
// splits to trace the Pareto boundary, for proper-only and improper
// signaling, plus small geometric utilities on rate pairs.

#include <optional>
#include <string>
#include <vector>

#include "igs/core.hpp"
#include "igs/improper_opt.hpp"
#include "igs/proper_opt.hpp"

namespace igs {

enum class Scheme {
    proper_optimal,     // covariance-only profile optimum
    improper_proposed,  // covariances plus optimized pseudo-covariances
    oracle,             // brute-force grid reference
};

struct BoundaryPoint {
    double alpha = 0.0;
    double r_total = 0.0;   // solved profile rate R
    RatePair rates;         // rates achieved by `signaling`
    Signaling signaling;
    Scheme scheme = Scheme::proper_optimal;
};

// One boundary point of the proper-signaling region at profile alpha.
BoundaryPoint proper_boundary_point(const Channel& ch,
                                    const PowerConstraint& pc, double alpha,
                                    const SolverConfig& cfg = {});

// One boundary point of the proposed improper-signaling region: solves the
// proper problem, then optimizes pseudo-covariances on its covariances.
BoundaryPoint boundary_point(const Channel& ch, const PowerConstraint& pc,
                             double alpha, const SolverConfig& cfg = {});

struct SweepEntry {
    double alpha = 0.0;
    std::optional<BoundaryPoint> point;  // empty on solver failure
    std::string error;                   // failure description when empty
};

// Boundary points for every profile in `alphas`. Solver non-convergence is
// recorded per entry and does not abort the sweep; argument errors still
// throw. `scheme` selects proper_optimal or improper_proposed.
std::vector<SweepEntry> sweep(const Channel& ch, const PowerConstraint& pc,
                              const std::vector<double>& alphas,
                              const SolverConfig& cfg, Scheme scheme);

// count >= 2 evenly spaced profile splits covering 0 and 1.
std::vector<double> uniform_alphas(int count);

// Pareto-undominated subset, exact duplicates collapsed, sorted by R1
// ascending (hence R2 descending).
std::vector<RatePair> pareto_filter(std::vector<RatePair> points);

// Vertices of the upper-right concave envelope, augmented with the axis
// projections (0, max R2) and (max R1, 0), sorted by R1 ascending.
// Collinear interior points are dropped.
std::vector<RatePair> convex_hull(std::vector<RatePair> points);

}  // namespace igs
