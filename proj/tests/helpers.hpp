#pragma once

// Shared test fixtures: the reference channel, seeded random generators for
// channels / powers / signalings / planar-feasibility instances, and small
// numeric helpers used across suites.

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include <igs/core.hpp>
#include <igs/improper_opt.hpp>
#include <igs/proper_opt.hpp>

namespace testers {

using Rng = std::mt19937_64;

// 2x2 matrix used by the reference experiments in the docs.
inline igs::Channel reference_channel() {
    return igs::Channel({1.5718, -1.2863}, {-1.2984, 0.7032},
                        {-0.2847, 0.6700}, {0.7802, -0.6151});
}

// Channel with standard-normal real and imaginary parts, redrawn until every
// entry magnitude clears a small conditioning floor.
inline igs::Channel random_channel(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const igs::Complex h[4] = {{n(rng), n(rng)},
                                   {n(rng), n(rng)},
                                   {n(rng), n(rng)},
                                   {n(rng), n(rng)}};
        bool ok = true;
        for (const auto& v : h)
            ok = ok && std::abs(v) >= 0.05;
        if (ok)
            return igs::Channel(h[0], h[1], h[2], h[3]);
    }
}

inline igs::PowerConstraint random_powers(Rng& rng) {
    std::uniform_real_distribution<double> u(0.5, 10.0);
    return {u(rng), u(rng), 1.0};
}

// Random valid signaling under pc: covariances within the caps and
// pseudo-covariance magnitudes within the covariances, free phases.
inline igs::Signaling random_signaling(Rng& rng,
                                       const igs::PowerConstraint& pc) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    igs::Signaling s;
    s.c1 = u(rng) * pc.p1;
    s.c2 = u(rng) * pc.p2;
    s.ct1 = std::polar(u(rng) * s.c1, ang(rng));
    s.ct2 = std::polar(u(rng) * s.c2, ang(rng));
    return s;
}

inline double profile_value(const igs::RatePair& r, double alpha) {
    if (alpha <= 0.0)
        return r.r2;
    if (alpha >= 1.0)
        return r.r1;
    return std::min(r.r1 / alpha, r.r2 / (1.0 - alpha));
}

// A planar-feasibility instance induced by an actual profile solve: channel,
// powers, a solved proper point, and a rate target slightly above it.
struct PlanarInstance {
    igs::Channel ch;
    igs::PowerConstraint pc;
    double alpha = 0.5;
    double r_star = 0.0;
    double c1s = 0.0;
    double c2s = 0.0;
    double target = 0.0;
    igs::PbCoefficients co;
};

inline std::optional<PlanarInstance> draw_planar_instance(Rng& rng) {
    std::uniform_real_distribution<double> ua(0.05, 0.95);
    std::uniform_real_distribution<double> ur(0.0, 0.5);
    const igs::Channel ch = random_channel(rng);
    const igs::PowerConstraint pc = random_powers(rng);
    const double alpha = ua(rng);
    const igs::ProperSolution sol = igs::solve_p1a(ch, pc, alpha);
    if (sol.c1 < 1e-6 || sol.c2 < 1e-6)
        return std::nullopt;
    const double target = sol.r_star + ur(rng);
    PlanarInstance inst{ch,     pc,     alpha,  sol.r_star,
                        sol.c1, sol.c2, target, {}};
    inst.co = igs::pb_coeffs(ch, pc, sol.c1, sol.c2, sol.r_star, alpha, target);
    return inst;
}

// Best feasibility margin min(-g1, -g2) over a dense sweep of the two
// boundary slices plus the origin, at fixed theta. Positive margins certify
// feasibility; magnitudes near zero flag tangency cases.
inline double slice_margin(const igs::PbCoefficients& co,
                           const igs::Channel& ch, double theta, double c1s,
                           double c2s, int samples = 64) {
    double best = -1e300;
    const auto probe = [&](double x, double t) {
        const double m = std::min(-igs::planar_g1(co, ch, theta, x, t),
                                  -igs::planar_g2(co, ch, theta, x, t));
        if (m > best)
            best = m;
    };
    for (int i = 0; i < samples; ++i) {
        const double f = static_cast<double>(i) / (samples - 1);
        probe(c1s, f * c2s);
        probe(f * c1s, c2s);
    }
    probe(0.0, 0.0);
    return best;
}

// Dense (x, t) grid verdict for the planar constraints at fixed theta, with
// the achieved margin: max over grid points of min(-g1, -g2).
struct GridVerdict {
    bool feasible = false;
    double margin = 0.0;
};

inline GridVerdict grid_verdict(const igs::PbCoefficients& co,
                                const igs::Channel& ch, double theta,
                                double c1s, double c2s, int n = 400) {
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double ce = std::cos(igs::planar_eta(ch, theta));
    const double cew =
        std::cos(igs::planar_eta(ch, theta) + igs::planar_omega(ch));
    double best = -1e300;
    for (int i = 0; i < n; ++i) {
        const double x = c1s * i / (n - 1);
        const double u1 = co.a1 * m1 * m1 * x * x + co.b1;
        const double v1 = 2.0 * co.a1 * m1 * m2 * x * ce;
        const double u2 = (co.a2 * n1 * n1 - 1.0) * x * x + co.b2;
        const double v2 = 2.0 * co.a2 * n1 * n2 * x * cew;
        for (int k = 0; k < n; ++k) {
            const double t = c2s * k / (n - 1);
            const double g1 = u1 + v1 * t + (co.a1 * m2 * m2 - 1.0) * t * t;
            const double g2 = u2 + v2 * t + co.a2 * n2 * n2 * t * t;
            const double m = std::min(-g1, -g2);
            if (m > best)
                best = m;
        }
    }
    return {best >= 0.0, best};
}

// Coefficients making both planar constraints exactly tight at a chosen
// point and phase: g1 = g2 = 0 at (x, t, theta) by construction.
inline igs::PbCoefficients planted_coeffs(const igs::Channel& ch, double theta,
                                          double x, double t) {
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double eta = igs::planar_eta(ch, theta);
    const double om = igs::planar_omega(ch);
    const double q1 = m1 * m1 * x * x + m2 * m2 * t * t +
                      2.0 * m1 * m2 * x * t * std::cos(eta);
    const double q2 = n1 * n1 * x * x + n2 * n2 * t * t +
                      2.0 * n1 * n2 * x * t * std::cos(eta + om);
    igs::PbCoefficients co;
    co.a1 = 0.5 * t * t / q1;
    co.b1 = 0.5 * t * t;
    co.a2 = 0.5 * x * x / q2;
    co.b2 = 0.5 * x * x;
    co.beta1 = 2.0;
    co.beta2 = 2.0;
    return co;
}

}  // namespace testers
