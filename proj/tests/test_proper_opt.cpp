#include <doctest.h>

#include <cmath>
#include <limits>

#include <igs/proper_opt.hpp>

#include "helpers.hpp"

using namespace igs;

namespace {

const Channel kUnit({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0});
const Channel kDecoupled({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0});
const PowerConstraint kUnitPower{1.0, 1.0, 1.0};

}  // namespace

TEST_SUITE("proper-opt") {

TEST_CASE("profile upper bound from single-user capacities") {
    const double cap = std::log(2.0);
    CHECK(profile_upper_bound(kDecoupled, kUnitPower, 0.5) ==
          doctest::Approx(2.0 * cap).epsilon(1e-15));
    CHECK(profile_upper_bound(kDecoupled, kUnitPower, 1.0) ==
          doctest::Approx(cap).epsilon(1e-15));
    CHECK(profile_upper_bound(kDecoupled, kUnitPower, 0.0) ==
          doctest::Approx(cap).epsilon(1e-15));
    // the tighter user binds
    CHECK(profile_upper_bound(kDecoupled, {1.0, 3.0, 1.0}, 0.5) ==
          doctest::Approx(2.0 * cap).epsilon(1e-15));
}

TEST_CASE("feasibility fixpoint on the decoupled channel") {
    // both users at capacity: feasible exactly at the box corner
    const double r = 2.0 * std::log(2.0);
    const auto w = p1a_feasible(kDecoupled, kUnitPower, 0.5, r);
    REQUIRE(w.has_value());
    CHECK(w->first == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w->second == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w->first <= 1.0);
    CHECK(w->second <= 1.0);
    // anything strictly above capacity is infeasible
    CHECK_FALSE(p1a_feasible(kDecoupled, kUnitPower, 0.5, r + 1e-6).has_value());
    // rate zero needs no power
    const auto z = p1a_feasible(kDecoupled, kUnitPower, 0.5, 0.0);
    REQUIRE(z.has_value());
    CHECK(z->first == 0.0);
    CHECK(z->second == 0.0);
}

TEST_CASE("feasibility on the symmetric coupled channel") {
    // k (1 + c_other) = c_own with k = e^{r/2} - 1; at r = 2 log 1.5 the
    // fixpoint sits exactly at (1, 1)
    const double r = 2.0 * std::log(1.5);
    const auto w = p1a_feasible(kUnit, kUnitPower, 0.5, r);
    REQUIRE(w.has_value());
    CHECK(w->first == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w->second == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(p1a_feasible(kUnit, kUnitPower, 0.5, r + 1e-6).has_value());
    // loop gain B*E >= 1: infeasible regardless of the power box
    CHECK_FALSE(
        p1a_feasible(kUnit, {100.0, 100.0, 1.0}, 0.5, 2.0 * std::log(3.0))
            .has_value());
}

TEST_CASE("feasible witnesses make both profile constraints tight") {
    testers::Rng rng(411);
    std::uniform_real_distribution<double> ua(0.1, 0.9);
    int checked = 0;
    while (checked < 200) {
        const Channel ch = testers::random_channel(rng);
        const PowerConstraint pc = testers::random_powers(rng);
        const double alpha = ua(rng);
        const ProperSolution sol = solve_p1a(ch, pc, alpha);
        if (sol.r_star <= 0.0)
            continue;
        const auto w = p1a_feasible(ch, pc, alpha, sol.r_star);
        REQUIRE(w.has_value());
        const double r1 =
            proper_rate(ch, w->first, w->second, pc.noise_var, 0);
        const double r2 =
            proper_rate(ch, w->first, w->second, pc.noise_var, 1);
        CHECK(std::abs(r1 - alpha * sol.r_star) <= 1e-8);
        CHECK(std::abs(r2 - (1.0 - alpha) * sol.r_star) <= 1e-8);
        ++checked;
    }
}

TEST_CASE("solver reproduces closed-form optima") {
    SUBCASE("decoupled channel reaches both capacities") {
        const ProperSolution sol = solve_p1a(kDecoupled, kUnitPower, 0.5);
        CHECK(sol.r_star == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
        CHECK(sol.c1 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sol.c2 == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("symmetric channel balances at full power") {
        const ProperSolution sol = solve_p1a(kUnit, kUnitPower, 0.5);
        CHECK(sol.r_star ==
              doctest::Approx(2.0 * std::log(1.5)).epsilon(1e-9));
        CHECK(sol.c1 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(sol.c2 == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("reference channel at 10 dB") {
        const Channel ch = testers::reference_channel();
        const ProperSolution sol = solve_p1a(ch, {10.0, 10.0, 1.0}, 0.5);
        CHECK(sol.r_star == doctest::Approx(1.9662659322303209).epsilon(1e-6));
        CHECK(sol.c1 == doctest::Approx(9.24718969).epsilon(1e-4));
        CHECK(sol.c2 == doctest::Approx(10.0).epsilon(1e-6));
    }
}

TEST_CASE("degenerate profiles collapse to single-user capacities") {
    testers::Rng rng(412);
    for (int i = 0; i < 50; ++i) {
        const Channel ch = testers::random_channel(rng);
        const PowerConstraint pc = testers::random_powers(rng);
        const double cap1 = std::log1p(ch.mag2(0, 0) * pc.p1 / pc.noise_var);
        const double cap2 = std::log1p(ch.mag2(1, 1) * pc.p2 / pc.noise_var);
        const ProperSolution at1 = solve_p1a(ch, pc, 1.0);
        CHECK(at1.r_star == doctest::Approx(cap1).epsilon(1e-12));
        CHECK(at1.c1 == pc.p1);
        CHECK(at1.c2 == 0.0);
        const ProperSolution at0 = solve_p1a(ch, pc, 0.0);
        CHECK(at0.r_star == doctest::Approx(cap2).epsilon(1e-12));
        CHECK(at0.c1 == 0.0);
        CHECK(at0.c2 == pc.p2);
    }
}

TEST_CASE("solver matches a coarse covariance grid search") {
    testers::Rng rng(413);
    std::uniform_real_distribution<double> ua(0.1, 0.9);
    const int n = 200;  // grid resolution per axis; slack measured empirically
    for (int trial = 0; trial < 5; ++trial) {
        const Channel ch = testers::random_channel(rng);
        const PowerConstraint pc = testers::random_powers(rng);
        const double alpha = ua(rng);
        const ProperSolution sol = solve_p1a(ch, pc, alpha);
        double best = 0.0;
        int bi = 0, bk = 0;
        for (int i = 0; i <= n; ++i)
            for (int k = 0; k <= n; ++k) {
                const double c1 = pc.p1 * i / n;
                const double c2 = pc.p2 * k / n;
                const RatePair r{proper_rate(ch, c1, c2, pc.noise_var, 0),
                                 proper_rate(ch, c1, c2, pc.noise_var, 1)};
                const double v = testers::profile_value(r, alpha);
                if (v > best) {
                    best = v;
                    bi = i;
                    bk = k;
                }
            }
        // slack: profile change across one grid step around the argmax
        double slack = 1e-9;
        for (int di = -1; di <= 1; ++di)
            for (int dk = -1; dk <= 1; ++dk) {
                const int i = bi + di, k = bk + dk;
                if (i < 0 || i > n || k < 0 || k > n)
                    continue;
                const double c1 = pc.p1 * i / n;
                const double c2 = pc.p2 * k / n;
                const RatePair r{proper_rate(ch, c1, c2, pc.noise_var, 0),
                                 proper_rate(ch, c1, c2, pc.noise_var, 1)};
                slack = std::max(
                    slack, std::abs(best - testers::profile_value(r, alpha)));
            }
        CHECK(sol.r_star >= best - 1e-9);
        CHECK(sol.r_star <= best + slack + 1e-9);
    }
}

TEST_CASE("non-convergence is reported") {
    SolverConfig cfg;
    cfg.max_iter = 1;
    CHECK_THROWS_AS(solve_p1a(kUnit, kUnitPower, 0.5, cfg), NonConvergence);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(p1a_feasible(kUnit, kUnitPower, -0.1, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(p1a_feasible(kUnit, kUnitPower, 0.5, -1.0),
                    ValidationError);
    CHECK_THROWS_AS(solve_p1a(kUnit, {0.0, 1.0, 1.0}, 0.5), ValidationError);
    CHECK_THROWS_AS(profile_upper_bound(kUnit, kUnitPower, 1.5),
                    ValidationError);
}

}  // TEST_SUITE
