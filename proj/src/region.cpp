#include "igs/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace igs {

namespace {

BoundaryPoint finish_point(const Channel& ch, const PowerConstraint& pc,
                           double alpha, double r_total, const Signaling& sig,
                           Scheme scheme) {
    return {alpha,
            r_total,
            {user_rate(ch, sig, pc.noise_var, 0),
             user_rate(ch, sig, pc.noise_var, 1)},
            sig,
            scheme};
}

}  // namespace

BoundaryPoint proper_boundary_point(const Channel& ch,
                                    const PowerConstraint& pc, double alpha,
                                    const SolverConfig& cfg) {
    const ProperSolution sol = solve_p1a(ch, pc, alpha, cfg);
    const Signaling sig{sol.c1, sol.c2, {0.0, 0.0}, {0.0, 0.0}};
    return finish_point(ch, pc, alpha, sol.r_star, sig, Scheme::proper_optimal);
}

BoundaryPoint boundary_point(const Channel& ch, const PowerConstraint& pc,
                             double alpha, const SolverConfig& cfg) {
    const ProperSolution base = solve_p1a(ch, pc, alpha, cfg);
    const ImproperSolution sol =
        solve_p1b(ch, pc, base.c1, base.c2, base.r_star, alpha, cfg);
    return finish_point(ch, pc, alpha, sol.r_star, sol.signaling,
                        Scheme::improper_proposed);
}

std::vector<SweepEntry> sweep(const Channel& ch, const PowerConstraint& pc,
                              const std::vector<double>& alphas,
                              const SolverConfig& cfg, Scheme scheme) {
    if (scheme == Scheme::oracle)
        throw ValidationError("sweep solves proper or improper schemes only");
    std::vector<SweepEntry> out;
    out.reserve(alphas.size());
    for (const double alpha : alphas) {
        SweepEntry entry;
        entry.alpha = alpha;
        try {
            entry.point = scheme == Scheme::proper_optimal
                              ? proper_boundary_point(ch, pc, alpha, cfg)
                              : boundary_point(ch, pc, alpha, cfg);
        } catch (const NonConvergence& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<double> uniform_alphas(int count) {
    if (count < 2)
        throw ValidationError("alpha grid needs at least 2 points");
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back(static_cast<double>(i) / (count - 1));
    return out;
}

std::vector<RatePair> pareto_filter(std::vector<RatePair> points) {
    std::stable_sort(points.begin(), points.end(),
                     [](const RatePair& a, const RatePair& b) {
                         if (a.r1 != b.r1)
                             return a.r1 < b.r1;
                         return a.r2 < b.r2;
                     });
    std::vector<RatePair> front;
    double best_r2 = -std::numeric_limits<double>::infinity();
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
        if (it->r2 > best_r2) {
            best_r2 = it->r2;
            front.push_back(*it);
        }
    }
    std::reverse(front.begin(), front.end());
    return front;
}

std::vector<RatePair> convex_hull(std::vector<RatePair> points) {
    if (points.empty())
        return {};
    double max_r1 = 0.0;
    double max_r2 = 0.0;
    for (const auto& p : points) {
        max_r1 = std::max(max_r1, p.r1);
        max_r2 = std::max(max_r2, p.r2);
    }
    points.push_back({0.0, max_r2});
    points.push_back({max_r1, 0.0});
    std::sort(points.begin(), points.end(),
              [](const RatePair& a, const RatePair& b) {
                  if (a.r1 != b.r1)
                      return a.r1 < b.r1;
                  return a.r2 > b.r2;  // ties: keep the higher point first
              });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const RatePair& a, const RatePair& b) {
                                 return a.r1 == b.r1 && a.r2 == b.r2;
                             }),
                 points.end());
    // Monotone chain for the upper envelope; pop turns that are not strictly
    // convex-from-above, which removes collinear interior points and any
    // point strictly below the envelope. With ties sorted top-first, points
    // stacked vertically inside the range pop themselves the same way.
    std::vector<RatePair> hull;
    for (const auto& p : points) {
        while (hull.size() >= 2) {
            const RatePair& a = hull[hull.size() - 2];
            const RatePair& b = hull[hull.size() - 1];
            const double cross = (b.r1 - a.r1) * (p.r2 - a.r2) -
                                 (b.r2 - a.r2) * (p.r1 - a.r1);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace igs
