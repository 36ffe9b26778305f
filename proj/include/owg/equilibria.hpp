#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "owg/constants.hpp"
#include "owg/model.hpp"

namespace owg {

// c0 + c1*t + sum_k coeff_k e^{rate_k (t - anchor_k)} on [0, T]. Rates that
// grow like 1/eps (z3 and friends) are anchored at T so every exponent stays
// nonpositive. Closed under differentiation and under the resolvent integral
// used to rebuild the auxiliary processes, which is what lets the ODE
// residual checker run entirely in closed form.
struct ExpTerm {
    double coeff = 0.0;
    double rate = 0.0;
    double anchor = 0.0;
};

struct ExpCombo {
    double c0 = 0.0;
    double c1 = 0.0;
    std::vector<ExpTerm> terms;

    double operator()(double t) const;
    ExpCombo derivative() const;
    // int_t^T e^{-beta (s - t)} f(s) ds
    double resolvent_tail(double beta, double T, double t) const;
};

// Values straddling the endpoint jumps: f(0-), f(0), f(T-), f(T).
struct OneSided {
    double pre0 = 0.0, at0 = 0.0, preT = 0.0, atT = 0.0;
};

// A Nash equilibrium in coefficient form: X^i_t = dev(t) (x^i - xbar)
// + mean(t) xbar. The combos give the interior (absolutely continuous)
// formula; the OneSided fields carry the jump conventions at 0 and T for
// variant B. dev_x / mean_x store the deviations and mean actually used,
// which for the degenerate B cases are the projected inventories.
struct EquilibriumSolution {
    CostSpec::Variant variant = CostSpec::Variant::A;
    ModelParams params;
    CostSpec spec;

    double mean_x = 0.0;
    std::vector<double> dev_x;

    ExpCombo dev, mean;
    ExpCombo dev_rate, mean_rate;
    OneSided dev_sides, mean_sides;

    std::vector<double> jump0;               // a^i (zero for A, A')
    std::vector<double> jumpT;               // b^i (zero for A, A')
    std::vector<double> terminal_inventory;  // X_T (nonzero only for A)

    std::optional<ConstantsTable> table;     // A and A' only

    // interior value/rate; endpoint jump values live in the OneSided fields
    double inventory(int i, double t) const { return dev(t) * dev_x[i] + mean(t) * mean_x; }
    double rate(int i, double t) const { return dev_rate(t) * dev_x[i] + mean_rate(t) * mean_x; }
    double inventory_at0(int i) const { return dev_sides.at0 * dev_x[i] + mean_sides.at0 * mean_x; }
    double inventory_pre0(int i) const { return dev_sides.pre0 * dev_x[i] + mean_sides.pre0 * mean_x; }
    double inventory_preT(int i) const { return dev_sides.preT * dev_x[i] + mean_sides.preT * mean_x; }
    double inventory_atT(int i) const { return dev_sides.atT * dev_x[i] + mean_sides.atT * mean_x; }
};

struct NoEquilibrium {
    enum class Reason { WrongTheta0, WrongThetaT, WrongBoth };
    Reason reason = Reason::WrongTheta0;
    std::string witness;
};

// Thrown by operations that can only forward the non-existence verdict.
class no_equilibrium : public std::runtime_error {
public:
    explicit no_equilibrium(NoEquilibrium value)
        : std::runtime_error("no Nash equilibrium: " + value.witness), value(std::move(value)) {}
    NoEquilibrium value;
};

EquilibriumSolution solve_A(const ModelParams& params, double eps, double phi);
EquilibriumSolution solve_Aprime(const ModelParams& params, double eps);

// The block-cost existence gate is knife-edge in exact arithmetic, so the
// matches are declared with tolerances: |theta0 - lambda (N-1)/2| <=
// tol_theta * lambda etc., and inventory conditions within tol_x * max(1,
// |x|_inf). Mismatched cases that still admit an equilibrium are solved with
// the inventories projected onto the exact condition (mean zeroed, or
// deviations zeroed), so the jump-consistency equations hold exactly.
struct BGateTolerances {
    double tol_theta = 1e-9;
    double tol_x = 1e-9;
};

using SolveBResult = std::variant<EquilibriumSolution, NoEquilibrium>;
SolveBResult solve_B(const ModelParams& params, double theta0, double thetaT,
                     const BGateTolerances& tol = {});

struct ImpactPath {
    ExpCombo values;        // I_t on [0, T); at T this evaluates to I_{T-} = I_T
    double jump_at_0 = 0.0; // B only
    double jump_at_T = 0.0; // identically 0 in equilibrium, kept for the record
    double pre0 = 0.0;      // I_{0-} = 0 for B, I_0 for A/A'
    double operator()(double t) const { return values(t); }
};

ImpactPath impact_path(const ModelParams& params, const CostSpec& spec,
                       const EquilibriumSolution& solution);

// Inventories on the grid: X[i][k] at node t_k, using post-jump values at 0
// and the final (post-jump) value at T. The pre-limits at 0 and T are exposed
// separately; they differ from the node columns only for variant B.
struct SampledPaths {
    std::vector<double> t;
    std::vector<std::vector<double>> inventories;  // N rows, M+1 columns
    std::vector<double> pre0;                      // X^i_{0-} = x^i
    std::vector<double> preT;                      // X^i_{T-}
};

SampledPaths sample(const EquilibriumSolution& solution, const TimeGrid& grid);

} // namespace owg
