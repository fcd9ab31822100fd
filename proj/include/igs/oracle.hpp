#pragma once

// Brute-force references used to cross-check the analytic solvers: a dense
// grid search over full signaling space for the achievable rate region, and
// a direct scan of the planar feasibility problem. Slow by design; intended
// for tests and offline comparison, not for the main solve path.

#include <optional>
#include <vector>

#include "igs/core.hpp"
#include "igs/improper_opt.hpp"

namespace igs {

// Grid resolution per axis. Covariances and pseudo-covariance magnitudes
// include both endpoints of their ranges when include_boundary is set;
// the phase axis always covers [0, 2 pi) without the duplicate seam point.
struct GridSpec {
    int n_cov = 9;    // points per covariance axis, >= 2
    int n_pcov = 9;   // points per pseudo-covariance magnitude axis, >= 1
    int n_theta = 24; // points on the phase axis, >= 4
    bool include_boundary = true;
};

struct OraclePoint {
    RatePair rates;
    Signaling signaling;
};

// Enumerates signalings on the grid (gauge-fixed: ct1 real >= 0, phase on
// ct2 only), evaluates both user rates, and returns the Pareto-undominated
// subset sorted by R1 ascending. Deterministic for a fixed grid.
std::vector<OraclePoint> oracle_region(const Channel& ch,
                                       const PowerConstraint& pc,
                                       const GridSpec& grid);

struct ScanWitness {
    double x = 0.0;
    double t = 0.0;
    double theta = 0.0;
};

// Direct scan of the planar constraints over (x, t, theta) with
// resolution + 1 points per magnitude axis and resolution phase points.
// Returns the first feasible grid point (theta outermost, then x, then t)
// or nullopt. Cross-checks p1b_feasible and the theta candidate sets.
std::optional<ScanWitness> oracle_pb_scan(const PbCoefficients& co,
                                          const Channel& ch, double c1s,
                                          double c2s, int resolution);

}  // namespace igs
