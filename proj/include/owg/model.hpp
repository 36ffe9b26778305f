#pragma once

#include <vector>

#include "owg/errors.hpp"

namespace owg {

// Market and population parameters shared by every game variant.
// lambda: impact push per share (price/share), beta: resilience rate (1/time),
// horizon: trading horizon T, inventories: initial holdings x^1..x^N.
// All quantities are dimensionful reals in double precision; no unit system
// is enforced beyond this comment. Immutable after construction.
struct ModelParams {
    double lambda = 0.0;
    double beta = 0.0;
    double horizon = 0.0;
    int n_traders = 0;
    std::vector<double> inventories;
};

// Additional-cost variant. A charges an instantaneous cost (eps/2)*v^2 on the
// trading rate plus a terminal penalty (phi/2)*X_T^2; APrime keeps the
// instantaneous cost and enforces full liquidation X_T = 0; B drops the rate
// cost and instead prices block trades at 0 and T with weights theta0, thetaT.
struct CostSpec {
    enum class Variant { A, APrime, B };
    Variant variant = Variant::A;
    double eps = 0.0;     // A, APrime
    double phi = 0.0;     // A
    double theta0 = 0.0;  // B
    double thetaT = 0.0;  // B

    static CostSpec make_A(double eps, double phi) { return {Variant::A, eps, phi, 0.0, 0.0}; }
    static CostSpec make_APrime(double eps) { return {Variant::APrime, eps, 0.0, 0.0, 0.0}; }
    static CostSpec make_B(double theta0, double thetaT) { return {Variant::B, 0.0, 0.0, theta0, thetaT}; }
};

// Uniform grid 0 = t_0 < t_1 < ... < t_M = T used for sampling and for the
// discrete verification game.
struct TimeGrid {
    int n_steps = 0;
    double horizon = 0.0;

    double dt() const { return horizon / n_steps; }
    double node(int k) const { return k * horizon / n_steps; }
    std::vector<double> nodes() const {
        std::vector<double> out(n_steps + 1);
        for (int k = 0; k <= n_steps; ++k) out[k] = node(k);
        return out;
    }
};

TimeGrid make_grid(double horizon, int n_steps);

// Checks every type invariant; returns the inputs unchanged on success,
// throws invalid_parameter{field, reason} otherwise. Idempotent.
struct ValidatedInputs {
    ModelParams params;
    CostSpec spec;
};
ValidatedInputs validate(const ModelParams& params, const CostSpec& spec);

double mean_inventory(const ModelParams& params);

// x^i - mean(x); entries sum to zero up to one rounding unit per element.
std::vector<double> deviations(const ModelParams& params);

} // namespace owg
