#include <doctest.h>

#include <cmath>
#include <random>

#include "owg/equilibria.hpp"

using namespace owg;

namespace {
ModelParams fig1_params() { return {0.2, 1.0, 1.0, 3, {1.0, 0.0, -1.0}}; }
ModelParams skew_params() { return {0.2, 1.0, 1.0, 3, {1.5, 0.3, -0.6}}; }  // xbar = 0.4
double good_theta0(const ModelParams& p) { return p.lambda * (p.n_traders - 1) / 2.0; }
double good_thetaT(const ModelParams& p) { return p.lambda / 2.0; }
}

TEST_CASE("game A starts at the initial inventories and ends at the closed-form X_T") {
    const ModelParams p = skew_params();
    auto s = solve_A(p, 0.05, 5.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.inventory_at0(i) == doctest::Approx(p.inventories[i]).epsilon(1e-12));
        CHECK(s.inventory(i, 0.0) == doctest::Approx(p.inventories[i]).epsilon(1e-12));
        CHECK(s.inventory_atT(i) == doctest::Approx(s.terminal_inventory[i]).epsilon(1e-12));
    }
}

TEST_CASE("game A with zero mean keeps only the deviation part") {
    const ModelParams p = fig1_params();
    auto s = solve_A(p, 0.05, 2.0);
    CHECK(s.mean_x == 0.0);
    for (double t : {0.0, 0.3, 0.7, 1.0})
        CHECK(s.inventory(1, t) == 0.0);  // the x = 0 trader never moves
}

TEST_CASE("game A with constant inventories moves every trader along the mean curve") {
    ModelParams p{0.2, 1.0, 1.0, 3, {0.7, 0.7, 0.7}};
    auto s = solve_A(p, 0.05, 2.0);
    for (double t : {0.1, 0.5, 0.9})
        for (int i = 0; i < 3; ++i)
            CHECK(s.inventory(i, t) == doctest::Approx(0.7 * s.mean(t)).epsilon(1e-14));
}

TEST_CASE("game A strategies approach the liquidation-constraint ones as phi grows") {
    const ModelParams p = fig1_params();
    auto limit = solve_Aprime(p, 0.05);
    double prev = 1e300;
    for (double phi : {1.0, 2.0, 5.0, 50.0, 500.0}) {
        auto s = solve_A(p, 0.05, phi);
        double sup = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double t = k / 200.0;
            for (int i = 0; i < 3; ++i)
                sup = std::max(sup, std::abs(s.inventory(i, t) - limit.inventory(i, t)));
        }
        CHECK(sup < prev);
        prev = sup;
    }
}

TEST_CASE("phi gap halves when phi doubles, within 20 percent") {
    const ModelParams p = skew_params();
    auto limit = solve_Aprime(p, 0.05);
    auto sup_gap = [&](double phi) {
        auto s = solve_A(p, 0.05, phi);
        double sup = 0.0;
        for (int k = 0; k <= 400; ++k) {
            const double t = k / 400.0;
            for (int i = 0; i < 3; ++i)
                sup = std::max(sup, std::abs(s.inventory(i, t) - limit.inventory(i, t)));
        }
        return sup;
    };
    for (double phi : {200.0, 400.0, 800.0}) {
        const double ratio = sup_gap(2.0 * phi) / sup_gap(phi);
        CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
    }
}

TEST_CASE("game A' liquidates exactly and starts at 1") {
    const ModelParams p = skew_params();
    auto s = solve_Aprime(p, 0.05);
    CHECK(s.dev_sides.at0 == 1.0);
    CHECK(s.mean_sides.at0 == 1.0);
    CHECK(s.dev_sides.atT == 0.0);
    CHECK(s.mean_sides.atT == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(s.inventory_atT(i) == 0.0);
    // the interior formulas actually reach zero at T
    CHECK(s.dev(p.horizon) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.mean(p.horizon) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("game A' coefficients are monotone nonincreasing") {
    for (double eps : {0.5, 0.05, 0.005}) {
        auto s = solve_Aprime(fig1_params(), eps);
        double prev_dev = 1e300, prev_mean = 1e300;
        for (int k = 0; k <= 500; ++k) {
            const double t = k / 500.0;
            CHECK(s.dev(t) <= prev_dev + 1e-14);
            CHECK(s.mean(t) <= prev_mean + 1e-14);
            prev_dev = s.dev(t);
            prev_mean = s.mean(t);
        }
    }
}

TEST_CASE("solve_B at the good thetas: hand-evaluated values") {
    ModelParams p{0.2, 1.0, 1.0, 3, {1.0, 0.5, 0.0}};  // deviation of trader 1: 0.5... pick trader 0
    auto r = solve_B(p, good_theta0(p), good_thetaT(p));
    auto& s = std::get<EquilibriumSolution>(r);
    // f_{0.5} = 1 - 0.5/2 = 0.75 for beta = T = 1
    CHECK(s.dev(0.5) == doctest::Approx(0.75).epsilon(1e-14));
    // b^i = -(x^i - xbar)/(1 + beta T), deviation 0.5 -> -0.25
    CHECK(s.jumpT[0] == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(s.dev_sides.pre0 == 1.0);
    CHECK(s.mean_sides.pre0 == 1.0);
    CHECK(s.dev_sides.atT == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(s.inventory_atT(i) == 0.0);
}

TEST_CASE("solve_B jumps match the coefficient functions") {
    const ModelParams p = skew_params();
    auto s = std::get<EquilibriumSolution>(solve_B(p, good_theta0(p), good_thetaT(p)));
    // a^i = (g(0) - 1) xbar, identical across traders
    for (int i = 0; i < 3; ++i)
        CHECK(s.jump0[i] == doctest::Approx((s.mean_sides.at0 - 1.0) * s.mean_x).epsilon(1e-13));
    double bsum = 0.0;
    for (double b : s.jumpT) bsum += b;
    CHECK(bsum == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("solve_B jump consistency equations") {
    const ModelParams p = skew_params();
    const double t0 = good_theta0(p), tT = good_thetaT(p);
    auto s = std::get<EquilibriumSolution>(solve_B(p, t0, tT));
    double asum = 0.0, bsum = 0.0;
    for (int i = 0; i < 3; ++i) { asum += s.jump0[i]; bsum += s.jumpT[i]; }
    for (int i = 0; i < 3; ++i) {
        CHECK(t0 * s.jump0[i] == doctest::Approx(0.5 * p.lambda * (asum - s.jump0[i])).epsilon(1e-12));
        CHECK(tT * s.jumpT[i] == doctest::Approx(-0.5 * p.lambda * (bsum - s.jumpT[i])).epsilon(1e-12));
    }
}

TEST_CASE("existence trichotomy") {
    const ModelParams p = fig1_params();  // xbar = 0, unequal
    const ModelParams skew = skew_params();  // xbar != 0, unequal
    ModelParams flat{0.2, 1.0, 1.0, 3, {0.4, 0.4, 0.4}};  // equal, xbar != 0
    ModelParams zero{0.2, 1.0, 1.0, 3, {0.0, 0.0, 0.0}};
    const double g0 = good_theta0(p), gT = good_thetaT(p);

    SUBCASE("good thetas, any inventories") {
        CHECK(std::holds_alternative<EquilibriumSolution>(solve_B(skew, g0, gT)));
    }
    SUBCASE("wrong theta0, nonzero mean: no equilibrium") {
        auto r = solve_B(skew, 2 * p.lambda, gT);
        REQUIRE(std::holds_alternative<NoEquilibrium>(r));
        CHECK(std::get<NoEquilibrium>(r).reason == NoEquilibrium::Reason::WrongTheta0);
    }
    SUBCASE("wrong theta0, zero mean: solution with no initial blocks") {
        auto r = solve_B(p, 2 * p.lambda, gT);
        REQUIRE(std::holds_alternative<EquilibriumSolution>(r));
        for (double a : std::get<EquilibriumSolution>(r).jump0) CHECK(a == 0.0);
    }
    SUBCASE("wrong thetaT, unequal inventories: no equilibrium") {
        auto r = solve_B(skew, g0, p.lambda);
        REQUIRE(std::holds_alternative<NoEquilibrium>(r));
        CHECK(std::get<NoEquilibrium>(r).reason == NoEquilibrium::Reason::WrongThetaT);
    }
    SUBCASE("wrong thetaT, equal inventories: solution with no terminal blocks") {
        auto r = solve_B(flat, g0, p.lambda);
        REQUIRE(std::holds_alternative<EquilibriumSolution>(r));
        for (double b : std::get<EquilibriumSolution>(r).jumpT) CHECK(b == 0.0);
    }
    SUBCASE("both wrong, zero inventories: the zero strategy") {
        auto r = solve_B(zero, 2 * p.lambda, 2 * p.lambda);
        REQUIRE(std::holds_alternative<EquilibriumSolution>(r));
        auto& s = std::get<EquilibriumSolution>(r);
        for (double t : {0.0, 0.5, 1.0})
            for (int i = 0; i < 3; ++i) CHECK(s.inventory(i, t) == 0.0);
    }
    SUBCASE("both wrong, general inventories: reason names both") {
        auto r = solve_B(skew, 2 * p.lambda, 2 * p.lambda);
        REQUIRE(std::holds_alternative<NoEquilibrium>(r));
        CHECK(std::get<NoEquilibrium>(r).reason == NoEquilibrium::Reason::WrongBoth);
    }
}

TEST_CASE("impact path vanishes identically when the mean inventory is zero") {
    const ModelParams p = fig1_params();
    auto sA = solve_A(p, 0.05, 5.0);
    auto path = impact_path(p, sA.spec, sA);
    for (double t : {0.0, 0.4, 1.0}) CHECK(path(t) == 0.0);
}

TEST_CASE("impact path starts at zero for A and A'") {
    const ModelParams p = skew_params();
    auto sA = solve_A(p, 0.05, 5.0);
    auto pA = impact_path(p, sA.spec, sA);
    CHECK(pA(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    auto sP = solve_Aprime(p, 0.05);
    auto pP = impact_path(p, sP.spec, sP);
    CHECK(pP(0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("impact path for B: jump at 0, none at T, nonzero terminal blocks") {
    const ModelParams p = skew_params();
    auto s = std::get<EquilibriumSolution>(solve_B(p, good_theta0(p), good_thetaT(p)));
    auto path = impact_path(p, s.spec, s);
    CHECK(path.pre0 == 0.0);
    double asum = 0.0;
    for (double a : s.jump0) asum += a;
    CHECK(path.jump_at_0 == doctest::Approx(p.lambda * asum).epsilon(1e-13));
    CHECK(path(0.0) == doctest::Approx(path.jump_at_0).epsilon(1e-12));
    CHECK(path.jump_at_T == 0.0);
    // terminal inventory jumps are nonzero while the impact does not jump
    bool some_jump = false;
    for (double b : s.jumpT) some_jump = some_jump || std::abs(b) > 1e-6;
    CHECK(some_jump);
}

TEST_CASE("linearity of the solution map in the inventories") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        ModelParams pa{0.2, 1.0, 1.0, 3, {u(rng), u(rng), u(rng)}};
        ModelParams pb = pa;
        pb.inventories = {u(rng), u(rng), u(rng)};
        const double alpha = u(rng);
        ModelParams pc = pa;
        for (int i = 0; i < 3; ++i)
            pc.inventories[i] = alpha * pa.inventories[i] + pb.inventories[i];
        auto sa = solve_Aprime(pa, 0.05);
        auto sb = solve_Aprime(pb, 0.05);
        auto sc = solve_Aprime(pc, 0.05);
        for (double t : {0.1, 0.5, 0.9})
            for (int i = 0; i < 3; ++i) {
                const double want = alpha * sa.inventory(i, t) + sb.inventory(i, t);
                CHECK(sc.inventory(i, t) == doctest::Approx(want).epsilon(1e-10));
            }
    }
}

TEST_CASE("permutation equivariance") {
    const ModelParams p = skew_params();
    ModelParams q = p;
    q.inventories = {p.inventories[2], p.inventories[0], p.inventories[1]};
    auto sp = solve_A(p, 0.05, 3.0);
    auto sq = solve_A(q, 0.05, 3.0);
    for (double t : {0.2, 0.8}) {
        CHECK(sq.inventory(0, t) == doctest::Approx(sp.inventory(2, t)).epsilon(1e-13));
        CHECK(sq.inventory(1, t) == doctest::Approx(sp.inventory(0, t)).epsilon(1e-13));
        CHECK(sq.inventory(2, t) == doctest::Approx(sp.inventory(1, t)).epsilon(1e-13));
    }
}

TEST_CASE("sampling: B exposes pre-limits, zero inventories stay zero") {
    const ModelParams p = skew_params();
    auto s = std::get<EquilibriumSolution>(solve_B(p, good_theta0(p), good_thetaT(p)));
    TimeGrid g = make_grid(p.horizon, 10);
    auto paths = sample(s, g);
    for (int i = 0; i < 3; ++i) {
        CHECK(paths.pre0[i] == doctest::Approx(p.inventories[i]).epsilon(1e-13));
        CHECK(paths.inventories[i][0]
              == doctest::Approx(p.inventories[i] + s.jump0[i]).epsilon(1e-12));
        CHECK(paths.inventories[i][10] == 0.0);
        CHECK(paths.preT[i] == doctest::Approx(-s.jumpT[i]).epsilon(1e-13));
    }

    ModelParams zero{0.2, 1.0, 1.0, 3, {0.0, 0.0, 0.0}};
    auto sz = solve_Aprime(zero, 0.05);
    auto zpaths = sample(sz, g);
    for (auto& row : zpaths.inventories)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("sampled row sums at t=0 recover the total inventory (A')") {
    const ModelParams p = skew_params();
    auto s = solve_Aprime(p, 0.05);
    auto paths = sample(s, make_grid(p.horizon, 8));
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += paths.inventories[i][0];
    CHECK(sum == doctest::Approx(1.2).epsilon(1e-12));
}
