#include <doctest.h>

#include <cmath>

#include "owg/costs.hpp"

using namespace owg;

namespace {
ModelParams fig1_params() { return {0.2, 1.0, 1.0, 3, {1.0, 0.0, -1.0}}; }
ModelParams skew_params() { return {0.2, 1.0, 1.0, 3, {1.5, 0.3, -0.6}}; }

EquilibriumSolution solve_for(const ModelParams& p, const CostSpec& spec) {
    switch (spec.variant) {
    case CostSpec::Variant::A: return solve_A(p, spec.eps, spec.phi);
    case CostSpec::Variant::APrime: return solve_Aprime(p, spec.eps);
    default: return std::get<EquilibriumSolution>(solve_B(p, spec.theta0, spec.thetaT));
    }
}

double rel_gap(double a, double b, double scale) {
    return std::abs(a - b) / std::max(scale, 1e-300);
}
}

TEST_CASE("breakdown totals are the component sums") {
    auto b = cost_closed_form(skew_params(), CostSpec::make_A(0.05, 5.0));
    for (int i = 0; i < 3; ++i)
        CHECK(b.total[i] == b.impact[i] + b.smoothing[i] + b.terminal[i]);
}

TEST_CASE("zero-mean A': impact vanishes, smoothing is the pure deviation term") {
    const ModelParams p = fig1_params();
    auto b = cost_closed_form(p, CostSpec::make_APrime(0.05));
    auto c = eval_constants(p, 0.05, std::nullopt);
    for (int i = 0; i < 3; ++i) {
        CHECK(b.impact[i] == 0.0);
        const double dev = p.inventories[i];  // xbar = 0
        CHECK(b.smoothing[i]
              == doctest::Approx(0.05 * c.h4 / (2.0 * c.Xi * c.Xi) * dev * dev).epsilon(1e-13));
    }
}

TEST_CASE("constant inventories in B have no terminal blocks and a mean-only impact cost") {
    ModelParams p{0.2, 1.0, 1.0, 3, {0.4, 0.4, 0.4}};
    auto b = cost_closed_form(p, CostSpec::make_B(0.2, 0.1));
    for (int i = 0; i < 3; ++i) {
        CHECK(b.terminal[i] == 0.0);
        CHECK(b.impact[i] == b.impact[0]);  // symmetric traders
        // block cost carries only the initial jump
        auto s = std::get<EquilibriumSolution>(solve_B(p, 0.2, 0.1));
        CHECK(b.smoothing[i] == doctest::Approx(0.5 * 0.2 * s.jump0[i] * s.jump0[i]).epsilon(1e-13));
    }
}

TEST_CASE("cost_closed_form forwards the non-existence verdict for B") {
    // for N = 3 the good theta0 is lambda; 2 lambda is off the knife edge
    CHECK_THROWS_AS(cost_closed_form(skew_params(), CostSpec::make_B(0.4, 0.1)),
                    no_equilibrium);
}

TEST_CASE("quadrature matches closed form for every variant") {
    const ModelParams p = skew_params();
    const TimeGrid g = make_grid(p.horizon, 2000);
    for (CostSpec spec : {CostSpec::make_A(0.05, 5.0), CostSpec::make_APrime(0.05),
                          CostSpec::make_B(0.2, 0.1)}) {
        auto sol = solve_for(p, spec);
        auto closed = cost_closed_form(p, spec);
        auto quad = cost_by_quadrature(p, spec, sol, g);
        double scale = 0.0;
        for (double t : closed.total) scale = std::max(scale, std::abs(t));
        for (int i = 0; i < 3; ++i) {
            CHECK(rel_gap(closed.impact[i], quad.impact[i], scale) < 1e-5);
            CHECK(rel_gap(closed.smoothing[i], quad.smoothing[i], scale) < 1e-5);
            CHECK(rel_gap(closed.terminal[i], quad.terminal[i], scale) < 1e-5);
        }
    }
}

TEST_CASE("block terms in B quadrature are algebraic, not quadrature") {
    const ModelParams p = skew_params();
    const CostSpec spec = CostSpec::make_B(0.2, 0.1);
    auto sol = solve_for(p, spec);
    auto coarse = cost_by_quadrature(p, spec, sol, make_grid(p.horizon, 16));
    for (int i = 0; i < 3; ++i)
        CHECK(coarse.smoothing[i]
              == 0.5 * (0.2 * sol.jump0[i] * sol.jump0[i] + 0.1 * sol.jumpT[i] * sol.jumpT[i]));
}

TEST_CASE("quadrature refuses too-coarse grids") {
    const ModelParams p = fig1_params();
    auto sol = solve_Aprime(p, 0.05);
    CHECK_THROWS_AS(cost_by_quadrature(p, CostSpec::make_APrime(0.05), sol, TimeGrid{4, 1.0}),
                    grid_too_coarse);
}

TEST_CASE("quadrature converges at order >= 1.9") {
    const ModelParams p = skew_params();
    const CostSpec spec = CostSpec::make_APrime(0.05);
    auto sol = solve_for(p, spec);
    auto closed = cost_closed_form(p, spec);
    double scale = 0.0;
    for (double t : closed.total) scale = std::max(scale, std::abs(t));
    std::vector<double> gaps;
    for (int m : {250, 500, 1000, 2000}) {
        auto quad = cost_by_quadrature(p, spec, sol, make_grid(p.horizon, m));
        double g = 0.0;
        for (int i = 0; i < 3; ++i) g = std::max(g, std::abs(quad.total[i] - closed.total[i]));
        gaps.push_back(g / scale);
    }
    // fitted order across the refinement ladder
    const double order = std::log2(gaps.front() / gaps.back()) / 3.0;
    CHECK(order >= 1.9);
}

TEST_CASE("costs are homogeneous of degree 2 in the inventories") {
    const ModelParams p = skew_params();
    for (double alpha : {2.0, -1.0}) {
        ModelParams q = p;
        for (double& x : q.inventories) x *= alpha;
        for (CostSpec spec : {CostSpec::make_A(0.05, 5.0), CostSpec::make_APrime(0.05),
                              CostSpec::make_B(0.2, 0.1)}) {
            auto base = cost_closed_form(p, spec);
            auto scaled = cost_closed_form(q, spec);
            for (int i = 0; i < 3; ++i) {
                CHECK(scaled.impact[i] == doctest::Approx(alpha * alpha * base.impact[i]).epsilon(1e-12));
                CHECK(scaled.smoothing[i] == doctest::Approx(alpha * alpha * base.smoothing[i]).epsilon(1e-12));
                CHECK(scaled.terminal[i] == doctest::Approx(alpha * alpha * base.terminal[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("traders with equal inventories have equal cost vectors") {
    ModelParams p{0.2, 1.0, 1.0, 4, {0.9, -0.3, 0.9, 0.1}};
    for (CostSpec spec : {CostSpec::make_A(0.05, 5.0), CostSpec::make_APrime(0.05)}) {
        auto b = cost_closed_form(p, spec);
        CHECK(b.impact[0] == b.impact[2]);
        CHECK(b.smoothing[0] == b.smoothing[2]);
        CHECK(b.terminal[0] == b.terminal[2]);
    }
}

TEST_CASE("A costs approach A' costs as phi grows, with vanishing penalty") {
    const ModelParams p = skew_params();
    auto limit = cost_closed_form(p, CostSpec::make_APrime(0.05));
    double prev = 1e300;
    for (double phi : {10.0, 100.0, 1000.0}) {
        auto b = cost_closed_form(p, CostSpec::make_A(0.05, phi));
        double gap = 0.0;
        for (int i = 0; i < 3; ++i)
            gap = std::max(gap, std::abs(b.total[i] - limit.total[i]));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("all-zero inventories cost nothing") {
    ModelParams p{0.2, 1.0, 1.0, 3, {0.0, 0.0, 0.0}};
    for (CostSpec spec : {CostSpec::make_A(0.05, 5.0), CostSpec::make_APrime(0.05),
                          CostSpec::make_B(0.2, 0.1)}) {
        auto b = cost_closed_form(p, spec);
        for (int i = 0; i < 3; ++i) CHECK(b.total[i] == 0.0);
    }
}
