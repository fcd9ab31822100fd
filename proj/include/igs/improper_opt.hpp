#pragma once

// Pseudo-covariance optimization on top of a solved proper-signaling point:
// keep the covariances (C1*, C2*) fixed and search over pseudo-covariances
// for the largest profile rate R >= r*. In the gauge where ct1 is real and
// nonnegative (rates are invariant under a common phase rotation of both
// pseudo-covariances), feasibility of a target R reduces, for each phase
// theta of ct2, to two quadratic constraints in (x, t) = (ct1, |ct2|):
//
//   g1 = a1 |h11^2 x + h12^2 t e^{j eta}|^2-ish quadratic + b1 - t^2 <= 0
//   g2 = a2 (...) + b2 - x^2 <= 0
//
// and only finitely many theta need checking: the two phases that anti-align
// the direct and cross contributions at each receiver, plus the theta values
// where the two constraint curves meet on the box edges x = C1* or t = C2*
// (sets A and B). Feasibility at fixed theta is decided in closed form on
// the two box-edge slices (any feasible point scales outward onto an edge).

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "igs/core.hpp"
#include "igs/proper_opt.hpp"

namespace igs {

// Thrown when a cross gain is exactly zero: the pseudo-covariance search
// is vacuous on a decoupled link (no interference to shape).
class CrossGainZero : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficients of the two planar feasibility constraints at a given target
// rate. b1 = b2 = 0 exactly at target = r*; both grow with the target.
// cy/cs cache the received and interference covariances of the underlying
// proper point (zero pseudo-covariances), per receiver.
struct PbCoefficients {
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    double beta1 = 1.0;  // rate-gap factors e^{2 alpha (R - r*)}, ...
    double beta2 = 1.0;
    double cy1 = 0.0;
    double cs1 = 0.0;
    double cy2 = 0.0;
    double cs2 = 0.0;
};

enum class ThetaSource {
    anti_align_rx1,  // minimizes the received pseudo-covariance at rx 1
    anti_align_rx2,
    set_a,           // constraint curves meet on the edge x = C1*
    set_b,           // constraint curves meet on the edge t = C2*
};

// One candidate phase for ct2. For set A/B candidates, `companion` is the
// remaining coordinate of the curve intersection (t for set A, x for set B);
// the intersection point itself is the natural feasibility witness when the
// feasible region degenerates to that single tangency point.
struct ThetaCandidate {
    double theta = 0.0;  // in [0, 2 pi)
    ThetaSource source = ThetaSource::anti_align_rx1;
    std::optional<double> companion;
};

struct PlanarWitness {
    double x = 0.0;  // ct1 (real, nonnegative)
    double t = 0.0;  // |ct2|
};

// Improper profile solution on fixed covariances; signaling carries the
// proper covariances together with the optimized pseudo-covariances.
struct ImproperSolution {
    double r_star = 0.0;  // maximal profile rate with improper signaling
    Signaling signaling;
};

// Constraint coefficients for target rate `target_rate` >= r_star, derived
// from the second-order stats of the proper solution (c1s, c2s).
// Throws CrossGainZero if either cross gain is exactly zero and
// ValidationError for out-of-domain arguments (including target < r_star).
PbCoefficients pb_coeffs(const Channel& ch, const PowerConstraint& pc,
                         double c1s, double c2s, double r_star, double alpha,
                         double target_rate);

// Phase bookkeeping: the constraint quadratics depend on theta only through
// eta = theta + 2 (phi12 - phi11); the second constraint uses eta + omega
// with omega = 2 (phi22 + phi11 - phi12 - phi21). Angles are reduced mod 2 pi.
double planar_eta(const Channel& ch, double theta);
double planar_omega(const Channel& ch);

// Residuals of the two planar constraints at (x, t) for phase theta;
// the point is feasible iff both are <= 0.
double planar_g1(const PbCoefficients& co, const Channel& ch, double theta,
                 double x, double t);
double planar_g2(const PbCoefficients& co, const Channel& ch, double theta,
                 double x, double t);

// The two anti-alignment phases (independent of the target rate).
std::vector<ThetaCandidate> fixed_theta_candidates(const Channel& ch);

// Phases where both constraint curves pass through a common point on the
// edge x = c1s (set A) or t = c2s (set B). Eliminating the phase turns the
// intersection condition into a quadratic in t^2 (resp. x^2); each root
// yields up to two phases, filtered by the residual of the second curve.
std::vector<ThetaCandidate> solve_theta_set_a(const PbCoefficients& co,
                                              const Channel& ch, double c1s,
                                              double c2s);
std::vector<ThetaCandidate> solve_theta_set_b(const PbCoefficients& co,
                                              const Channel& ch, double c1s,
                                              double c2s);

// Full candidate list: fixed phases, then set A, then set B (each set sorted
// by theta), deduplicated within 1e-9 of circular distance.
std::vector<ThetaCandidate> p1b_candidates(const PbCoefficients& co,
                                           const Channel& ch, double c1s,
                                           double c2s);

// Feasibility at fixed theta over the box [0, c1s] x [0, c2s]: the origin,
// then closed-form interval intersection on the two box-edge slices.
// Requires b1, b2 >= 0 (targets >= r*). Returns a witness or nullopt.
std::optional<PlanarWitness> planar_feasible(const PbCoefficients& co,
                                             const Channel& ch, double theta,
                                             double c1s, double c2s);

// Feasibility across the finite theta candidate set. For set A/B candidates
// the companion intersection point is tested directly first: when the
// feasible region is a single tangency point, interval intersection on the
// slices can miss it by rounding, but the candidate already names the point.
// Returns gauge-fixed pseudo-covariances (ct1 real >= 0) or nullopt.
std::optional<std::pair<Complex, Complex>> p1b_feasible(
    const PbCoefficients& co, const Channel& ch, double c1s, double c2s);

// Maximizes the profile rate over pseudo-covariances by bisection on
// [r*, profile_upper_bound]. Degenerate profiles and decoupled channels
// return the proper solution unchanged (ct = 0). Throws NonConvergence
// like the proper solver.
ImproperSolution solve_p1b(const Channel& ch, const PowerConstraint& pc,
                           double c1s, double c2s, double r_star, double alpha,
                           const SolverConfig& cfg = {});

}  // namespace igs
