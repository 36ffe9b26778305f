#pragma once

#include <json.hpp>
#include <string>

#include "owg/costs.hpp"
#include "owg/limits.hpp"
#include "owg/oracle.hpp"

namespace owg {

using json = nlohmann::json;

// Config schema:
// {"lambda": f, "beta": f, "T": f, "N": int, "x": [f],
//  "cost": {"variant": "A"|"Aprime"|"B", "eps": f?, "phi": f?,
//           "theta0": f?, "thetaT": f?}}
ValidatedInputs parse_config(const json& config);
json config_to_json(const ModelParams& params, const CostSpec& spec);

// Round-trip exact decimal formatting (shortest representation that parses
// back to the same double); '.' decimal point regardless of locale.
std::string format_double(double v);

std::string csv_row(const std::vector<double>& values);
std::string csv_row(const std::vector<std::string>& cells);

// solve output: columns t, X_1..X_N, I; variant B prepends a row for t=0-.
std::string sampled_csv(const SampledPaths& paths, const ImpactPath& impact,
                        const EquilibriumSolution& solution);
json sampled_json(const SampledPaths& paths, const ImpactPath& impact,
                  const EquilibriumSolution& solution);
json jump_sidecar(const EquilibriumSolution& solution, const ImpactPath& impact);

std::string cost_csv(const CostBreakdown& breakdown);
json cost_json(const CostBreakdown& breakdown);

std::string convergence_csv(const ConvergenceReport& report);
json convergence_json(const ConvergenceReport& report);

json residual_json(const ResidualReport& report);
json constants_json(const ConstantsTable& table);

} // namespace owg
