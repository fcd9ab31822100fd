#pragma once

// Rate-profile optimization restricted to proper signaling: for a profile
// split alpha, find the largest total rate r* such that R1 >= alpha r* and
// R2 >= (1-alpha) r* are simultaneously achievable within the power caps.
// Feasibility of a fixed target is decided in closed form, so the outer
// bisection is the only iteration.

#include <optional>
#include <stdexcept>
#include <utility>

#include "igs/core.hpp"

namespace igs {

// Iterative solver knobs shared by the proper and improper optimizers.
struct SolverConfig {
    double rate_tol = 1e-9;  // bisection stops when the bracket is this wide
    int max_iter = 200;      // bisection step budget
    double alpha_eps = 1e-6; // profiles within this of 0 or 1 are degenerate
};

// Thrown when an iterative solve exhausts its step budget.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProperSolution {
    double r_star = 0.0;  // maximal profile-feasible total rate, nats
    double c1 = 0.0;      // witness covariances achieving it
    double c2 = 0.0;
};

// Largest total rate consistent with the single-user capacities:
// min(cap1/alpha, cap2/(1-alpha)) with cap_r = log(1 + |h_rr|^2 P_r / noise_var).
// Upper-bounds the profile rate for improper signaling as well.
double profile_upper_bound(const Channel& ch, const PowerConstraint& pc,
                           double alpha);

// Decides whether total rate r is achievable with proper signaling under
// profile alpha. The two rate constraints are half-planes in (c1, c2) with
// a monotone coupling, so feasibility reduces to whether their boundary
// fixpoint lands inside the power box. Returns the fixpoint witness
// (both constraints tight) or nullopt.
std::optional<std::pair<double, double>> p1a_feasible(const Channel& ch,
                                                      const PowerConstraint& pc,
                                                      double alpha, double r);

// Maximizes the profile rate by bisection on [0, profile_upper_bound].
// Degenerate profiles (alpha within alpha_eps of 0 or 1) are solved in
// closed form as single-user problems. Throws NonConvergence if the
// bracket does not shrink to rate_tol within max_iter steps.
ProperSolution solve_p1a(const Channel& ch, const PowerConstraint& pc,
                         double alpha, const SolverConfig& cfg = {});

}  // namespace igs
