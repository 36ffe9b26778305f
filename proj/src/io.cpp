#include "owg/io.hpp"

#include <charconv>

namespace owg {

ValidatedInputs parse_config(const json& config) {
    ModelParams p;
    try {
        p.lambda = config.at("lambda").get<double>();
        p.beta = config.at("beta").get<double>();
        p.horizon = config.at("T").get<double>();
        p.n_traders = config.at("N").get<int>();
        p.inventories = config.at("x").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw invalid_parameter("config", e.what());
    }

    CostSpec spec;
    try {
        const json& cost = config.at("cost");
        const std::string variant = cost.at("variant").get<std::string>();
        if (variant == "A")
            spec = CostSpec::make_A(cost.at("eps").get<double>(), cost.at("phi").get<double>());
        else if (variant == "Aprime")
            spec = CostSpec::make_APrime(cost.at("eps").get<double>());
        else if (variant == "B")
            spec = CostSpec::make_B(cost.at("theta0").get<double>(), cost.at("thetaT").get<double>());
        else
            throw invalid_parameter("cost.variant", "expected \"A\", \"Aprime\" or \"B\"");
    } catch (const json::exception& e) {
        throw invalid_parameter("config.cost", e.what());
    }
    return validate(p, spec);
}

json config_to_json(const ModelParams& params, const CostSpec& spec) {
    json cost;
    switch (spec.variant) {
    case CostSpec::Variant::A:
        cost = {{"variant", "A"}, {"eps", spec.eps}, {"phi", spec.phi}};
        break;
    case CostSpec::Variant::APrime:
        cost = {{"variant", "Aprime"}, {"eps", spec.eps}};
        break;
    case CostSpec::Variant::B:
        cost = {{"variant", "B"}, {"theta0", spec.theta0}, {"thetaT", spec.thetaT}};
        break;
    }
    return json{{"lambda", params.lambda}, {"beta", params.beta}, {"T", params.horizon},
                {"N", params.n_traders}, {"x", params.inventories}, {"cost", cost}};
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += '\n';
    return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
    return out;
}

std::string sampled_csv(const SampledPaths& paths, const ImpactPath& impact,
                        const EquilibriumSolution& solution) {
    const int n = static_cast<int>(paths.inventories.size());
    std::vector<std::string> header{"t"};
    for (int i = 1; i <= n; ++i) header.push_back("X_" + std::to_string(i));
    header.push_back("I");
    std::string out = csv_row(header);

    const bool is_b = solution.variant == CostSpec::Variant::B;
    if (is_b) {
        // pre-jump row: X at 0-, impact at 0- (zero)
        std::vector<std::string> row{"0-"};
        for (int i = 0; i < n; ++i) row.push_back(format_double(paths.pre0[i]));
        row.push_back(format_double(impact.pre0));
        out += csv_row(row);
    }
    for (std::size_t k = 0; k < paths.t.size(); ++k) {
        std::vector<double> row{paths.t[k]};
        for (int i = 0; i < n; ++i) row.push_back(paths.inventories[i][k]);
        row.push_back(impact(paths.t[k]));
        out += csv_row(row);
    }
    return out;
}

json sampled_json(const SampledPaths& paths, const ImpactPath& impact,
                  const EquilibriumSolution& solution) {
    json j;
    j["t"] = paths.t;
    j["X"] = paths.inventories;
    std::vector<double> impact_nodes(paths.t.size());
    for (std::size_t k = 0; k < paths.t.size(); ++k) impact_nodes[k] = impact(paths.t[k]);
    j["I"] = impact_nodes;
    j["pre0"] = paths.pre0;
    j["preT"] = paths.preT;
    if (solution.variant == CostSpec::Variant::B)
        j["jumps"] = jump_sidecar(solution, impact);
    return j;
}

json jump_sidecar(const EquilibriumSolution& solution, const ImpactPath& impact) {
    return json{{"a", solution.jump0}, {"b", solution.jumpT}, {"dI0", impact.jump_at_0}};
}

std::string cost_csv(const CostBreakdown& b) {
    std::string out = csv_row(std::vector<std::string>{"trader", "impact", "smoothing", "terminal", "total"});
    for (std::size_t i = 0; i < b.total.size(); ++i)
        out += csv_row(std::vector<double>{static_cast<double>(i + 1), b.impact[i], b.smoothing[i],
                                           b.terminal[i], b.total[i]});
    return out;
}

json cost_json(const CostBreakdown& b) {
    return json{{"impact", b.impact}, {"smoothing", b.smoothing},
                {"terminal", b.terminal}, {"total", b.total}};
}

std::string convergence_csv(const ConvergenceReport& r) {
    std::vector<std::string> header{
        "sweep_value", "sup_distance", "h1_distance",
        "cost_gap_impact", "cost_gap_smoothing", "cost_gap_terminal", "cost_gap_total"};
    const std::size_t n = r.splits.empty() ? 0 : r.splits.front().head.size();
    for (const char* tag : {"head_", "tail_", "target_head_", "target_tail_"})
        for (std::size_t i = 1; i <= n; ++i) header.push_back(tag + std::to_string(i));
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < r.parameter_values.size(); ++k) {
        const double h1 = r.h1_distances.empty() ? 0.0 : r.h1_distances[k];
        std::vector<double> row{r.parameter_values[k], r.sup_distances[k], h1,
                                r.cost_gaps[k][0], r.cost_gaps[k][1],
                                r.cost_gaps[k][2], r.cost_gaps[k][3]};
        if (n) {
            const SplitReport& s = r.splits[k];
            row.insert(row.end(), s.head.begin(), s.head.end());
            row.insert(row.end(), s.tail.begin(), s.tail.end());
            row.insert(row.end(), s.target_head.begin(), s.target_head.end());
            row.insert(row.end(), s.target_tail.begin(), s.target_tail.end());
        }
        out += csv_row(row);
    }
    return out;
}

json convergence_json(const ConvergenceReport& r) {
    json j;
    j["parameter_values"] = r.parameter_values;
    j["sup_distances"] = r.sup_distances;
    j["h1_distances"] = r.h1_distances;
    j["cost_gaps"] = r.cost_gaps;
    j["window"] = {r.window_lo, r.window_hi};
    j["monotone"] = r.monotone;
    if (!r.splits.empty()) {
        json splits = json::array();
        for (const auto& s : r.splits)
            splits.push_back({{"head", s.head}, {"tail", s.tail},
                              {"target_head", s.target_head}, {"target_tail", s.target_tail}});
        j["splits"] = splits;
    }
    return j;
}

json residual_json(const ResidualReport& r) {
    return json{{"max_residual", r.max_residual}, {"boundary_residuals", r.boundary},
                {"grid_M", r.grid_m}, {"normalized", r.normalized}, {"scale", r.scale}};
}

json constants_json(const ConstantsTable& c) {
    json j{
        {"z1", c.z1}, {"z2", c.z2}, {"z3", c.z3},
        {"gamma1", c.gamma1}, {"gamma2", c.gamma2}, {"gamma_ratio", c.gamma_ratio},
        {"frak_b1", c.b1}, {"frak_b2", c.b2}, {"frak_b3_scaled", c.b3},
        {"frak_b11", c.b11}, {"frak_b22", c.b22}, {"frak_b12", c.b12},
        {"frak_b13_scaled", c.b13}, {"frak_b23_scaled", c.b23}, {"frak_b33_scaled", c.b33},
        {"frak_q0", c.q0}, {"frak_q1", c.q1}, {"frak_q2", c.q2}, {"frak_q3_scaled", c.q3},
        {"rho0", c.rho0}, {"rho_plus", c.rho_plus}, {"rho_minus", c.rho_minus},
        {"varrho0", c.varrho0}, {"varrho1", c.varrho1},
        {"frak_m0", c.m0}, {"frak_m1", c.m1}, {"frak_r0", c.r0}, {"frak_r1", c.r1},
        {"frak_p", c.p_frak}, {"Psi", c.Psi}, {"Xi", c.Xi},
        {"frak_h1", c.h1}, {"frak_h2", c.h2}, {"frak_h3", c.h3}, {"frak_h4", c.h4}, {"frak_h5", c.h5}};
    if (c.phi) {
        j["psi"] = c.psi;
        j["xi"] = c.xi;
        j["phi"] = *c.phi;
    }
    return j;
}

} // namespace owg
