#include "igs/improper_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace igs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)  // guard against fmod rounding at the seam
        r = 0.0;
    return r;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must be in [0, 1]");
}

// Real roots of a z^2 + b z + c = 0 in ascending order. Uses the stable
// q-form; a discriminant within `neg_disc_window` below zero is treated as
// a double root (tangency within rounding).
int quad_roots(double a, double b, double c, double neg_disc_window,
               double out[2]) {
    if (a == 0.0) {
        if (b == 0.0)
            return 0;
        out[0] = -c / b;
        return 1;
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        if (disc < -neg_disc_window)
            return 0;
        disc = 0.0;
    }
    const double sd = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sd, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : 0.0;
    if (r1 > r2)
        std::swap(r1, r2);
    out[0] = r1;
    out[1] = r2;
    return 2;
}

struct Interval {
    double lo;
    double hi;
};

// {v in [lo, hi] : a v^2 + b v + c <= 0}, as up to two sorted intervals.
std::vector<Interval> quad_sublevel(double a, double b, double c, double lo,
                                    double hi) {
    std::vector<Interval> out;
    auto push = [&](double l, double h) {
        l = std::max(l, lo);
        h = std::min(h, hi);
        if (l <= h)
            out.push_back({l, h});
    };
    if (std::abs(a) < 1e-14) {
        if (std::abs(b) < 1e-14) {
            if (c <= 0.0)
                push(lo, hi);
        } else if (b > 0.0) {
            push(lo, -c / b);
        } else {
            push(-c / b, hi);
        }
        return out;
    }
    const double window =
        1e-12 * std::max({b * b, std::abs(4.0 * a * c), 1.0});
    double r[2];
    const int n = quad_roots(a, b, c, window, r);
    if (a > 0.0) {
        if (n == 2)
            push(r[0], r[1]);
        // no real roots: positive everywhere, empty sublevel set
    } else {
        if (n == 2) {
            push(lo, r[0]);
            push(r[1], hi);
        } else {
            push(lo, hi);  // negative everywhere
        }
    }
    return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& xs,
                                const std::vector<Interval>& ys) {
    std::vector<Interval> out;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            const double l = std::max(x.lo, y.lo);
            const double h = std::min(x.hi, y.hi);
            if (l <= h)
                out.push_back({l, h});
        }
    return out;  // inputs sorted and disjoint, so output stays sorted
}

// cos eta = -(d1 z + d2)/v and cos(eta + omega) = -(d3 z + d4)/v with
// z = v^2, the normal form of "both constraint curves pass through a point
// at coordinate v on a box edge".
struct SliceCoeffs {
    double d1;
    double d2;
    double d3;
    double d4;
};

// Eliminating eta from the normal form yields e1 z^2 + e2 z + e3 = 0.
// Roots are kept only inside [0, ulim^2] (the edge coordinate must fit the
// box) and away from zero (a vanishing pseudo-covariance is already covered
// by the fixed phases). Each surviving root gives v = sqrt(z) and up to two
// phases; squaring introduced a sign ambiguity, so branches are kept only
// when they satisfy the second curve's relation.
void emit_candidates(const SliceCoeffs& d, double omega, double phase_off,
                     double ulim, ThetaSource src,
                     std::vector<ThetaCandidate>& out) {
    const double cw = std::cos(omega);
    const double s2 = std::sin(omega) * std::sin(omega);
    const double e1 = d.d1 * d.d1 + d.d3 * d.d3 - 2.0 * d.d1 * d.d3 * cw;
    const double e2 = 2.0 * (d.d1 * d.d2 + d.d3 * d.d4) -
                      2.0 * (d.d1 * d.d4 + d.d2 * d.d3) * cw - s2;
    const double e3 = d.d2 * d.d2 + d.d4 * d.d4 - 2.0 * d.d2 * d.d4 * cw;
    double z[2];
    int n = 0;
    if (std::abs(e1) < 1e-14) {
        // near-degenerate leading coefficient: solve the linear remainder
        if (std::abs(e2) >= 1e-14) {
            z[0] = -e3 / e2;
            n = 1;
        }
    } else {
        n = quad_roots(e1, e2, e3, 1e-12, z);
    }
    for (int i = 0; i < n; ++i) {
        if (!(z[i] >= 0.0 && z[i] <= ulim * ulim * (1.0 + 1e-12)))
            continue;
        const double v = std::sqrt(z[i]);
        if (v <= 1e-12 * std::max(1.0, ulim))
            continue;
        double ceta = -(d.d1 * z[i] + d.d2) / v;
        if (std::abs(ceta) > 1.0 + 1e-12)
            continue;
        ceta = std::clamp(ceta, -1.0, 1.0);
        const double eta0 = std::acos(ceta);
        for (const double eta : {eta0, -eta0}) {
            const double res = v * std::cos(eta + omega) + d.d3 * z[i] + d.d4;
            const double tol = 1e-8 * std::max({1.0, std::abs(d.d3) * z[i],
                                                std::abs(d.d4), v});
            if (std::abs(res) > tol)
                continue;
            out.push_back(
                {normalize_angle(eta - phase_off), src, std::min(v, ulim)});
            if (eta0 == 0.0)
                break;  // both branches coincide
        }
    }
}

}  // namespace

double planar_eta(const Channel& ch, double theta) {
    return normalize_angle(theta + 2.0 * (ch.phase(0, 1) - ch.phase(0, 0)));
}

double planar_omega(const Channel& ch) {
    return normalize_angle(2.0 * (ch.phase(1, 1) + ch.phase(0, 0) -
                                  ch.phase(0, 1) - ch.phase(1, 0)));
}

PbCoefficients pb_coeffs(const Channel& ch, const PowerConstraint& pc,
                         double c1s, double c2s, double r_star, double alpha,
                         double target_rate) {
    require_valid(pc);
    check_alpha(alpha);
    if (!(r_star >= 0.0))
        throw ValidationError("r_star must be >= 0");
    if (!(target_rate >= r_star))
        throw ValidationError("target_rate must be >= r_star");
    if (!(c1s >= 0.0 && c2s >= 0.0))
        throw ValidationError("covariances must be >= 0");
    if (ch.mag(0, 1) == 0.0 || ch.mag(1, 0) == 0.0)
        throw CrossGainZero(
            "pseudo-covariance constraints need nonzero cross gains");
    const Signaling proper{c1s, c2s, {0.0, 0.0}, {0.0, 0.0}};
    const double cy1 = received_stats(ch, proper, pc.noise_var, 0).cov;
    const double cs1 = interference_stats(ch, proper, pc.noise_var, 0).cov;
    const double cy2 = received_stats(ch, proper, pc.noise_var, 1).cov;
    const double cs2 = interference_stats(ch, proper, pc.noise_var, 1).cov;
    const double m12_4 = ch.mag2(0, 1) * ch.mag2(0, 1);
    const double m21_4 = ch.mag2(1, 0) * ch.mag2(1, 0);
    PbCoefficients co;
    co.beta1 = std::exp(2.0 * alpha * (target_rate - r_star));
    co.beta2 = std::exp(2.0 * (1.0 - alpha) * (target_rate - r_star));
    co.a1 = cs1 * cs1 / (co.beta1 * cy1 * cy1 * m12_4);
    co.b1 = (1.0 - 1.0 / co.beta1) * cs1 * cs1 / m12_4;
    co.a2 = cs2 * cs2 / (co.beta2 * cy2 * cy2 * m21_4);
    co.b2 = (1.0 - 1.0 / co.beta2) * cs2 * cs2 / m21_4;
    co.cy1 = cy1;
    co.cs1 = cs1;
    co.cy2 = cy2;
    co.cs2 = cs2;
    return co;
}

double planar_g1(const PbCoefficients& co, const Channel& ch, double theta,
                 double x, double t) {
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double ce = std::cos(planar_eta(ch, theta));
    return co.a1 * (m1 * m1 * x * x + m2 * m2 * t * t +
                    2.0 * m1 * m2 * x * t * ce) +
           co.b1 - t * t;
}

double planar_g2(const PbCoefficients& co, const Channel& ch, double theta,
                 double x, double t) {
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double ce = std::cos(planar_eta(ch, theta) + planar_omega(ch));
    return co.a2 * (n1 * n1 * x * x + n2 * n2 * t * t +
                    2.0 * n1 * n2 * x * t * ce) +
           co.b2 - x * x;
}

std::vector<ThetaCandidate> fixed_theta_candidates(const Channel& ch) {
    const double pi = std::numbers::pi;
    std::vector<ThetaCandidate> out{
        {normalize_angle(pi + 2.0 * (ch.phase(0, 0) - ch.phase(0, 1))),
         ThetaSource::anti_align_rx1, std::nullopt},
        {normalize_angle(pi + 2.0 * (ch.phase(1, 0) - ch.phase(1, 1))),
         ThetaSource::anti_align_rx2, std::nullopt},
    };
    double dist = std::abs(out[0].theta - out[1].theta);
    dist = std::min(dist, kTwoPi - dist);
    if (dist <= 1e-9)
        out.pop_back();
    return out;
}

std::vector<ThetaCandidate> solve_theta_set_a(const PbCoefficients& co,
                                              const Channel& ch, double c1s,
                                              double c2s) {
    std::vector<ThetaCandidate> out;
    if (!(c1s > 0.0))
        return out;
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double den1 = 2.0 * co.a1 * m1 * m2 * c1s;
    const double den2 = 2.0 * co.a2 * n1 * n2 * c1s;
    const SliceCoeffs d{
        (co.a1 * m2 * m2 - 1.0) / den1,
        (co.a1 * m1 * m1 * c1s * c1s + co.b1) / den1,
        (co.a2 * n2 * n2) / den2,
        ((co.a2 * n1 * n1 - 1.0) * c1s * c1s + co.b2) / den2,
    };
    emit_candidates(d, planar_omega(ch),
                    2.0 * (ch.phase(0, 1) - ch.phase(0, 0)), c2s,
                    ThetaSource::set_a, out);
    return out;
}

std::vector<ThetaCandidate> solve_theta_set_b(const PbCoefficients& co,
                                              const Channel& ch, double c1s,
                                              double c2s) {
    std::vector<ThetaCandidate> out;
    if (!(c2s > 0.0))
        return out;
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double den1 = 2.0 * co.a1 * m1 * m2 * c2s;
    const double den2 = 2.0 * co.a2 * n1 * n2 * c2s;
    const SliceCoeffs d{
        (co.a1 * m1 * m1) / den1,
        ((co.a1 * m2 * m2 - 1.0) * c2s * c2s + co.b1) / den1,
        (co.a2 * n1 * n1 - 1.0) / den2,
        (co.a2 * n2 * n2 * c2s * c2s + co.b2) / den2,
    };
    emit_candidates(d, planar_omega(ch),
                    2.0 * (ch.phase(0, 1) - ch.phase(0, 0)), c1s,
                    ThetaSource::set_b, out);
    return out;
}

std::vector<ThetaCandidate> p1b_candidates(const PbCoefficients& co,
                                           const Channel& ch, double c1s,
                                           double c2s) {
    auto all = fixed_theta_candidates(ch);
    auto a = solve_theta_set_a(co, ch, c1s, c2s);
    auto b = solve_theta_set_b(co, ch, c1s, c2s);
    const auto by_theta = [](const ThetaCandidate& u, const ThetaCandidate& v) {
        return u.theta < v.theta;
    };
    std::sort(a.begin(), a.end(), by_theta);
    std::sort(b.begin(), b.end(), by_theta);
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::vector<ThetaCandidate> kept;
    for (const auto& c : all) {
        bool dup = false;
        for (auto& k : kept) {
            double dist = std::abs(c.theta - k.theta);
            dist = std::min(dist, kTwoPi - dist);
            if (dist <= 1e-9) {
                // keep the earlier candidate, but do not lose the
                // intersection-point information of the later one
                if (c.companion && !k.companion)
                    k.companion = c.companion;
                dup = true;
                break;
            }
        }
        if (!dup)
            kept.push_back(c);
    }
    return kept;
}

std::optional<PlanarWitness> planar_feasible(const PbCoefficients& co,
                                             const Channel& ch, double theta,
                                             double c1s, double c2s) {
    // Origin: g1(0,0) = b1, g2(0,0) = b2. This is the only feasible point
    // that outward scaling cannot move onto a box edge.
    if (co.b1 <= 1e-15 && co.b2 <= 1e-15)
        return PlanarWitness{0.0, 0.0};
    const double m1 = ch.mag2(0, 0);
    const double m2 = ch.mag2(0, 1);
    const double n1 = ch.mag2(1, 0);
    const double n2 = ch.mag2(1, 1);
    const double ce = std::cos(planar_eta(ch, theta));
    const double cew = std::cos(planar_eta(ch, theta) + planar_omega(ch));
    // edge x = c1s, variable t
    {
        const auto i1 = quad_sublevel(co.a1 * m2 * m2 - 1.0,
                                      2.0 * co.a1 * m1 * m2 * c1s * ce,
                                      co.a1 * m1 * m1 * c1s * c1s + co.b1,
                                      0.0, c2s);
        const auto i2 = quad_sublevel(co.a2 * n2 * n2,
                                      2.0 * co.a2 * n1 * n2 * c1s * cew,
                                      (co.a2 * n1 * n1 - 1.0) * c1s * c1s + co.b2,
                                      0.0, c2s);
        const auto both = intersect(i1, i2);
        if (!both.empty())
            return PlanarWitness{c1s, both.front().lo};
    }
    // edge t = c2s, variable x
    {
        const auto i1 = quad_sublevel(co.a1 * m1 * m1,
                                      2.0 * co.a1 * m1 * m2 * c2s * ce,
                                      (co.a1 * m2 * m2 - 1.0) * c2s * c2s + co.b1,
                                      0.0, c1s);
        const auto i2 = quad_sublevel(co.a2 * n1 * n1 - 1.0,
                                      2.0 * co.a2 * n1 * n2 * c2s * cew,
                                      co.a2 * n2 * n2 * c2s * c2s + co.b2,
                                      0.0, c1s);
        const auto both = intersect(i1, i2);
        if (!both.empty())
            return PlanarWitness{both.front().lo, c2s};
    }
    return std::nullopt;
}

std::optional<std::pair<Complex, Complex>> p1b_feasible(
    const PbCoefficients& co, const Channel& ch, double c1s, double c2s) {
    const double atol = 1e-9 * std::max({1.0, c1s * c1s, c2s * c2s});
    for (const auto& cand : p1b_candidates(co, ch, c1s, c2s)) {
        if (cand.companion) {
            // When the feasible region at this phase degenerates to the
            // curve intersection itself, interval arithmetic on the edges
            // can lose it to rounding; the candidate already names the
            // point, so test it directly under both edge interpretations.
            const double u = *cand.companion;
            const double pts[2][2] = {{c1s, std::min(u, c2s)},
                                      {std::min(u, c1s), c2s}};
            const bool inside[2] = {u <= c2s * (1.0 + 1e-12),
                                    u <= c1s * (1.0 + 1e-12)};
            for (int i = 0; i < 2; ++i) {
                if (!inside[i])
                    continue;
                const double x = pts[i][0];
                const double t = pts[i][1];
                if (planar_g1(co, ch, cand.theta, x, t) <= atol &&
                    planar_g2(co, ch, cand.theta, x, t) <= atol)
                    return std::make_pair(Complex(x, 0.0),
                                          std::polar(t, cand.theta));
            }
        }
        if (auto w = planar_feasible(co, ch, cand.theta, c1s, c2s))
            return std::make_pair(Complex(w->x, 0.0),
                                  std::polar(w->t, cand.theta));
    }
    return std::nullopt;
}

ImproperSolution solve_p1b(const Channel& ch, const PowerConstraint& pc,
                           double c1s, double c2s, double r_star, double alpha,
                           const SolverConfig& cfg) {
    require_valid(pc);
    check_alpha(alpha);
    if (!(r_star >= 0.0))
        throw ValidationError("r_star must be >= 0");
    if (!(c1s >= 0.0 && c2s >= 0.0))
        throw ValidationError("covariances must be >= 0");
    const Signaling proper{c1s, c2s, {0.0, 0.0}, {0.0, 0.0}};
    // Single-user profiles leave nothing to trade, and decoupled links have
    // no interference to shape: the proper solution is already optimal.
    if (alpha <= cfg.alpha_eps || alpha >= 1.0 - cfg.alpha_eps)
        return {r_star, proper};
    if (ch.mag(0, 1) == 0.0 || ch.mag(1, 0) == 0.0)
        return {r_star, proper};

    double lo = r_star;  // always feasible: ct = 0 reproduces the proper point
    double hi = std::max(profile_upper_bound(ch, pc, alpha), r_star);
    Signaling best = proper;
    if (hi - lo <= cfg.rate_tol)
        return {lo, best};
    const auto probe = [&](double target) {
        const PbCoefficients co =
            pb_coeffs(ch, pc, c1s, c2s, r_star, alpha, target);
        if (auto w = p1b_feasible(co, ch, c1s, c2s)) {
            best = Signaling{c1s, c2s, w->first, w->second};
            return true;
        }
        return false;
    };
    if (probe(hi))
        return {hi, best};
    for (int i = 0; i < cfg.max_iter && hi - lo > cfg.rate_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo > cfg.rate_tol)
        throw NonConvergence(
            "improper-signaling bisection did not reach rate_tol");
    return {lo, best};
}

}  // namespace igs
