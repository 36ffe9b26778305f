#pragma once

#include <Eigen/Dense>
#include <map>

#include "owg/costs.hpp"
#include "owg/equilibria.hpp"

namespace owg {

// Discretized game used as the independent check of the closed forms: each
// player trades at a piecewise-constant rate on the grid cells (plus endpoint
// block trades for variant B) and pays the exact double integral of the
// decay kernel over cells. Cell-exact integration keeps the kernel positive
// definite and the cost accurate to second order; point sampling would not.
struct DiscreteGame {
    ModelParams params;
    CostSpec spec;
    TimeGrid grid;
    Eigen::MatrixXd K;   // lambda int int_{cells} e^{-beta|t-s|}, M x M
    Eigen::MatrixXd L;   // strict-past half: L + L^T = K, diag(L) = diag(K)/2
    Eigen::VectorXd w;   // lambda int_{cell} e^{-beta t} dt
    Eigen::VectorXd wT;  // lambda int_{cell} e^{-beta (T-t)} dt
};

DiscreteGame build_discrete_game(const ModelParams& params, const CostSpec& spec,
                                 const TimeGrid& grid);

// Serial reference for the kernel fill; the parallel build must match it
// entry for entry.
Eigen::MatrixXd assemble_kernel_serial(const ModelParams& params, const TimeGrid& grid);
Eigen::MatrixXd assemble_kernel(const ModelParams& params, const TimeGrid& grid);

// One strategy profile of the discrete game. Jumps are zero for A and A'.
struct DiscreteStrategies {
    Eigen::MatrixXd rates;  // N x M
    Eigen::VectorXd a;      // initial blocks (B)
    Eigen::VectorXd b;      // terminal blocks (B)
};

DiscreteStrategies zero_strategies(const DiscreteGame& game);

// Exact discrete objective of player i against the profile.
double player_cost(const DiscreteGame& game, const DiscreteStrategies& strategies, int i);

// Exact minimizer of player i's quadratic cost with everyone else frozen:
// one SPD solve (bordered by the liquidation multiplier for A').
struct BestResponse {
    Eigen::VectorXd rates;
    double a = 0.0;
    double b = 0.0;
    double cost = 0.0;
};
BestResponse best_response(const DiscreteGame& game, const DiscreteStrategies& strategies, int i);

enum class EquilibriumMethod { StackedLinear, DampedBestResponse };

struct SolveOptions {
    EquilibriumMethod method = EquilibriumMethod::StackedLinear;
    double damping = 0.5;
    double tol = 1e-10;
    int max_iter = 2000;
};

struct DiscreteEquilibrium {
    DiscreteStrategies strategies;
    double br_gap = 0.0;  // max over players of achievable one-shot improvement
    int iterations = 0;
};

DiscreteEquilibrium solve_discrete_equilibrium(const DiscreteGame& game,
                                               const SolveOptions& options = {});

// Node values of the inventory paths implied by the discrete strategies
// (post-jump at 0, final value at T).
std::vector<std::vector<double>> discrete_inventories(const DiscreteGame& game,
                                                      const DiscreteStrategies& strategies);

// Max over players and nodes of |discrete - closed-form| inventories.
double strategy_sup_distance(const DiscreteGame& game, const DiscreteStrategies& strategies,
                             const EquilibriumSolution& solution);

// Injects the closed-form solution into the discrete game as cell-average
// rates (so node inventories match exactly); used for best-response-gap
// checks of the continuous equilibrium.
DiscreteStrategies inject_closed_form(const DiscreteGame& game, const EquilibriumSolution& solution);

// Residuals of the equilibrium ODE system for the game with terminal
// penalty, evaluated on the grid from the closed forms: the impact line, the
// auxiliary-process lines, the stationarity lines, and the boundary values.
// Everything is normalized by max(|I|_inf, lambda |v|_inf, 1).
struct ResidualReport {
    double max_residual = 0.0;
    std::map<std::string, double> boundary;
    int grid_m = 0;
    bool normalized = true;
    double scale = 1.0;
};

ResidualReport ode_residual_A(const ModelParams& params, double eps, double phi,
                              const EquilibriumSolution& solution, const TimeGrid& grid);

ResidualReport ode_residual_B(const ModelParams& params, double theta0, double thetaT,
                              const EquilibriumSolution& solution, const TimeGrid& grid);

} // namespace owg
