#include "igs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace igs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(const GridSpec& grid) {
    if (grid.n_cov < 2)
        throw ValidationError("n_cov must be >= 2");
    if (grid.n_pcov < 1)
        throw ValidationError("n_pcov must be >= 1");
    if (grid.n_theta < 4)
        throw ValidationError("n_theta must be >= 4");
}

// n points on [0, hi]; with include_boundary both endpoints are present,
// otherwise the n interior points of an (n + 2)-point subdivision.
std::vector<double> axis(int n, double hi, bool include_boundary) {
    if (hi <= 0.0)
        return {0.0};
    std::vector<double> out;
    out.reserve(n);
    if (include_boundary) {
        if (n == 1)
            return {0.0};
        for (int i = 0; i < n; ++i)
            out.push_back(hi * i / (n - 1));
    } else {
        for (int i = 0; i < n; ++i)
            out.push_back(hi * (i + 1) / (n + 1));
    }
    return out;
}

}  // namespace

std::vector<OraclePoint> oracle_region(const Channel& ch,
                                       const PowerConstraint& pc,
                                       const GridSpec& grid) {
    require_valid(pc);
    check_grid(grid);
    std::vector<OraclePoint> pts;
    const auto c1_axis = axis(grid.n_cov, pc.p1, grid.include_boundary);
    const auto c2_axis = axis(grid.n_cov, pc.p2, grid.include_boundary);
    for (const double c1 : c1_axis) {
        for (const double c2 : c2_axis) {
            for (const double p1 : axis(grid.n_pcov, c1, grid.include_boundary)) {
                for (const double t :
                     axis(grid.n_pcov, c2, grid.include_boundary)) {
                    const int n_th = t > 0.0 ? grid.n_theta : 1;
                    for (int k = 0; k < n_th; ++k) {
                        const double theta = kTwoPi * k / grid.n_theta;
                        const Signaling sig{c1, c2, Complex(p1, 0.0),
                                            std::polar(t, theta)};
                        pts.push_back(
                            {{user_rate(ch, sig, pc.noise_var, 0),
                              user_rate(ch, sig, pc.noise_var, 1)},
                             sig});
                    }
                }
            }
        }
    }
    // Deterministic Pareto reduction: order by (R1, R2), then keep, scanning
    // from high R1 down, each point that strictly improves the best R2 seen.
    std::stable_sort(pts.begin(), pts.end(),
                     [](const OraclePoint& a, const OraclePoint& b) {
                         if (a.rates.r1 != b.rates.r1)
                             return a.rates.r1 < b.rates.r1;
                         return a.rates.r2 < b.rates.r2;
                     });
    std::vector<OraclePoint> front;
    double best_r2 = -1.0;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        if (it->rates.r2 > best_r2) {
            best_r2 = it->rates.r2;
            front.push_back(*it);
        }
    }
    std::reverse(front.begin(), front.end());
    return front;
}

std::optional<ScanWitness> oracle_pb_scan(const PbCoefficients& co,
                                          const Channel& ch, double c1s,
                                          double c2s, int resolution) {
    if (resolution < 2)
        throw ValidationError("scan resolution must be >= 2");
    for (int k = 0; k < resolution; ++k) {
        const double theta = kTwoPi * k / resolution;
        for (int i = 0; i <= resolution; ++i) {
            const double x = c1s * i / resolution;
            for (int j = 0; j <= resolution; ++j) {
                const double t = c2s * j / resolution;
                if (planar_g1(co, ch, theta, x, t) <= 0.0 &&
                    planar_g2(co, ch, theta, x, t) <= 0.0)
                    return ScanWitness{x, t, theta};
            }
        }
    }
    return std::nullopt;
}

}  // namespace igs
