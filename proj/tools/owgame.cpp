// Command-line front end: solve / cost / verify / sweep-phi / sweep-eps /
// anarchy / predation / figures. Machine-readable output (CSV or JSON),
// deterministic for a fixed config and seed.
//
// Exit codes: 0 success, 2 config or usage error, 3 no equilibrium exists
// for the requested block-cost parameters, 4 verification failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "owg/analytics.hpp"
#include "owg/io.hpp"
#include "owg/limits.hpp"
#include "owg/oracle.hpp"

using namespace owg;

namespace {

struct RunConfig {
    std::string input;
    std::string output;  // empty = stdout
    std::string format = "csv";
    int grid_m = 1000;
    double tol_theta = 1e-9;
    double tol_resid = 1e-8;
    std::uint64_t seed = 12345;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("input", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty() || cfg.output == "-" || cfg.output == "stdout") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw invalid_parameter("output", "cannot open " + cfg.output);
    out << text;
}

void emit_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_parameter("output", "cannot open " + path);
    out << text;
}

EquilibriumSolution solve_any(const ValidatedInputs& in, const RunConfig& cfg) {
    switch (in.spec.variant) {
    case CostSpec::Variant::A:
        return solve_A(in.params, in.spec.eps, in.spec.phi);
    case CostSpec::Variant::APrime:
        return solve_Aprime(in.params, in.spec.eps);
    case CostSpec::Variant::B: {
        auto r = solve_B(in.params, in.spec.theta0, in.spec.thetaT,
                         BGateTolerances{cfg.tol_theta, 1e-9});
        if (std::holds_alternative<NoEquilibrium>(r))
            throw no_equilibrium(std::get<NoEquilibrium>(r));
        return std::get<EquilibriumSolution>(r);
    }
    }
    throw invalid_parameter("variant", "unreachable");
}

int cmd_solve(const RunConfig& cfg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    const EquilibriumSolution sol = solve_any(in, cfg);
    const TimeGrid grid = make_grid(in.params.horizon, cfg.grid_m);
    const SampledPaths paths = sample(sol, grid);
    const ImpactPath impact = impact_path(in.params, in.spec, sol);

    if (cfg.format == "json") {
        emit(cfg, sampled_json(paths, impact, sol).dump(2) + "\n");
    } else {
        emit(cfg, sampled_csv(paths, impact, sol));
        // variant B carries its endpoint blocks in a sidecar next to the CSV
        if (sol.variant == CostSpec::Variant::B && !cfg.output.empty()
            && cfg.output != "-" && cfg.output != "stdout")
            emit_file(cfg.output + ".jumps.json", jump_sidecar(sol, impact).dump(2) + "\n");
    }
    return 0;
}

int cmd_cost(const RunConfig& cfg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    const CostBreakdown breakdown = cost_closed_form(in.params, in.spec);
    emit(cfg, cfg.format == "json" ? cost_json(breakdown).dump(2) + "\n" : cost_csv(breakdown));
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    const EquilibriumSolution sol = solve_any(in, cfg);
    const TimeGrid resid_grid = make_grid(in.params.horizon, 2000);

    json report;
    bool ok = true;
    double xinf = 1.0;
    for (double x : in.params.inventories) xinf = std::max(xinf, std::abs(x));

    if (in.spec.variant == CostSpec::Variant::A) {
        const ResidualReport r = ode_residual_A(in.params, in.spec.eps, in.spec.phi, sol, resid_grid);
        report["residual"] = residual_json(r);
        report["residual_ok"] = r.max_residual <= cfg.tol_resid;
        ok = ok && r.max_residual <= cfg.tol_resid;
    } else if (in.spec.variant == CostSpec::Variant::B) {
        const ResidualReport r = ode_residual_B(in.params, in.spec.theta0, in.spec.thetaT, sol, resid_grid);
        report["residual"] = residual_json(r);
        report["residual_ok"] = r.max_residual <= cfg.tol_resid;
        ok = ok && r.max_residual <= cfg.tol_resid;
    }

    // discrete-game comparison
    const TimeGrid grid = make_grid(in.params.horizon, cfg.grid_m);
    const DiscreteGame game = build_discrete_game(in.params, in.spec, grid);
    const DiscreteEquilibrium eq = solve_discrete_equilibrium(game);
    const double sup = strategy_sup_distance(game, eq.strategies, sol);
    const double sup_tol = 2e-3 * xinf;

    const CostBreakdown closed = cost_closed_form(in.params, in.spec);
    double cost_scale = 0.0, cost_gap = 0.0;
    for (double c : closed.total) cost_scale = std::max(cost_scale, std::abs(c));
    for (int i = 0; i < in.params.n_traders; ++i)
        cost_gap = std::max(cost_gap, std::abs(player_cost(game, eq.strategies, i) - closed.total[i]));
    const double cost_gap_rel = cost_scale > 0.0 ? cost_gap / cost_scale : cost_gap;

    json oracle{{"grid_M", cfg.grid_m}, {"sup_distance", sup}, {"sup_tol", sup_tol},
                {"br_gap", eq.br_gap}, {"cost_gap_rel", cost_gap_rel}, {"cost_tol", 1e-3}};
    const bool oracle_ok = sup <= sup_tol && cost_gap_rel <= 1e-3;
    oracle["ok"] = oracle_ok;
    ok = ok && oracle_ok;

    // multi-start uniqueness probe: damped best response from random rate
    // profiles must land on one equilibrium
    {
        const TimeGrid probe_grid = make_grid(in.params.horizon, 200);
        const DiscreteGame probe = build_discrete_game(in.params, in.spec, probe_grid);
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> noise(0.0, xinf / in.params.horizon);
        SolveOptions opt;
        opt.method = EquilibriumMethod::DampedBestResponse;
        const int n = in.params.n_traders;
        std::vector<Eigen::MatrixXd> results;
        for (int s = 0; s < 5; ++s) {
            DiscreteStrategies cur = zero_strategies(probe);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < cur.rates.cols(); ++k) cur.rates(i, k) = noise(rng);
            int it = 0;
            double change = 1.0;
            for (it = 0; it < opt.max_iter && change > opt.tol; ++it) {
                change = 0.0;
                std::vector<BestResponse> brs(n);
                for (int i = 0; i < n; ++i) brs[i] = best_response(probe, cur, i);
                for (int i = 0; i < n; ++i) {
                    Eigen::VectorXd next = (1.0 - opt.damping) * cur.rates.row(i).transpose()
                                         + opt.damping * brs[i].rates;
                    change = std::max(change, (next - cur.rates.row(i).transpose()).cwiseAbs().maxCoeff());
                    cur.rates.row(i) = next.transpose();
                    if (in.spec.variant == CostSpec::Variant::B) {
                        const double na = (1.0 - opt.damping) * cur.a(i) + opt.damping * brs[i].a;
                        change = std::max(change, std::abs(na - cur.a(i)));
                        cur.a(i) = na;
                        cur.b(i) = -(in.params.inventories[i] + cur.a(i)
                                     + probe.grid.dt() * cur.rates.row(i).sum());
                    }
                }
            }
            results.push_back(cur.rates);
        }
        double max_pairwise = 0.0;
        for (std::size_t i = 0; i < results.size(); ++i)
            for (std::size_t j = i + 1; j < results.size(); ++j)
                max_pairwise = std::max(max_pairwise, (results[i] - results[j]).cwiseAbs().maxCoeff());
        const bool unique_ok = max_pairwise <= 10.0 * opt.tol * 1e3;
        report["uniqueness_probe"] = json{{"starts", 5}, {"max_pairwise", max_pairwise},
                                          {"ok", unique_ok}, {"seed", cfg.seed}};
        ok = ok && unique_ok;
    }

    report["oracle"] = oracle;
    report["ok"] = ok;
    emit(cfg, report.dump(2) + "\n");
    return ok ? 0 : 4;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

int cmd_sweep_phi(const RunConfig& cfg, const std::string& phis_arg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    if (in.spec.variant == CostSpec::Variant::B)
        throw invalid_parameter("cost.variant", "sweep-phi needs an instantaneous-cost config (A or Aprime)");
    std::vector<double> phis = phis_arg.empty()
        ? std::vector<double>{1.0, 10.0, 100.0, 1000.0, 10000.0} : parse_list(phis_arg);
    const ConvergenceReport r = phi_sweep(in.params, in.spec.eps, phis, cfg.grid_m);
    emit(cfg, cfg.format == "json" ? convergence_json(r).dump(2) + "\n" : convergence_csv(r));
    return 0;
}

int cmd_sweep_eps(const RunConfig& cfg, const std::string& eps_arg, double delta) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    std::vector<double> eps_list = eps_arg.empty()
        ? std::vector<double>{0.1, 0.03, 0.005, 1e-3, 1e-4} : parse_list(eps_arg);
    if (delta <= 0.0) delta = 0.1 * in.params.horizon;
    const ConvergenceReport r = eps_sweep(in.params, eps_list, delta, cfg.grid_m);
    emit(cfg, cfg.format == "json" ? convergence_json(r).dump(2) + "\n" : convergence_csv(r));
    return 0;
}

int cmd_anarchy(const RunConfig& cfg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    double net = 0.0;
    for (double x : in.params.inventories) net += x;
    const AnarchyReport r = anarchy_report(in.params, net);
    if (cfg.format == "json") {
        emit(cfg, json{{"pic_n", r.pic_n}, {"pic_1", r.pic_1}, {"coa", r.coa},
                       {"coa_limit_n", coa_limit_n(in.params.beta, in.params.horizon)}}.dump(2) + "\n");
    } else {
        std::string out = csv_row(std::vector<std::string>{"pic_n", "pic_1", "coa", "coa_limit_n"});
        out += csv_row(std::vector<double>{r.pic_n, r.pic_1, r.coa,
                                           coa_limit_n(in.params.beta, in.params.horizon)});
        emit(cfg, out);
    }
    return 0;
}

int cmd_predation(const RunConfig& cfg) {
    const ValidatedInputs in = parse_config(load_config(cfg.input));
    double net = 0.0;
    for (double x : in.params.inventories) net += x;
    if (net == 0.0) throw invalid_parameter("x", "cost of predation is undefined for zero net inventory");
    const PredationReport r = cop(in.params.lambda, in.params.beta, in.params.horizon,
                                  in.params.n_traders, net);
    if (cfg.format == "json") {
        emit(cfg, json{{"lic_n", r.lic_n}, {"cop", r.cop}, {"friction_term", r.friction_term},
                       {"coa_share", r.coa_share}}.dump(2) + "\n");
    } else {
        std::string out = csv_row(std::vector<std::string>{"lic_n", "cop", "friction_term", "coa_share"});
        out += csv_row(std::vector<double>{r.lic_n, r.cop, r.friction_term, r.coa_share});
        emit(cfg, out);
    }
    return 0;
}

// Datasets behind the four figure panels, for the captioned parameters:
//   1: strategies and costs across phi in {1, 2, 5, inf} (lambda=0.2,
//      eps=0.05, T=1, N=3; beta=1 for strategies, beta grid for costs)
//   2: same market across eps in {0.1, 0.03, 0.005, 0} (0 = block-cost game)
//   3: cost of anarchy vs beta for several N
//   4: cost of predation vs beta and vs N
int cmd_figures(const std::string& dir, int grid_m) {
    ModelParams base{0.2, 1.0, 1.0, 3, {1.0, 0.0, -1.0}};
    const std::vector<double> beta_grid = [] {
        std::vector<double> g;
        for (int i = 0; i <= 60; ++i) g.push_back(std::pow(10.0, -2.0 + i * 4.0 / 60.0));
        return g;
    }();

    {  // figure 1, left panel
        const TimeGrid grid = make_grid(base.horizon, grid_m);
        const std::vector<double> phis{1.0, 2.0, 5.0};
        std::vector<std::string> header{"t"};
        for (double phi : phis)
            for (int i = 1; i <= 3; ++i)
                header.push_back("X_" + std::to_string(i) + "_phi" + format_double(phi));
        for (int i = 1; i <= 3; ++i) header.push_back("X_" + std::to_string(i) + "_phi_inf");
        std::string out = csv_row(header);
        std::vector<EquilibriumSolution> sols;
        for (double phi : phis) sols.push_back(solve_A(base, 0.05, phi));
        sols.push_back(solve_Aprime(base, 0.05));
        for (int k = 0; k <= grid.n_steps; ++k) {
            std::vector<double> row{grid.node(k)};
            for (const auto& s : sols)
                for (int i = 0; i < 3; ++i) row.push_back(s.inventory(i, grid.node(k)));
            out += csv_row(row);
        }
        emit_file(dir + "/fig1_strategies.csv", out);
    }
    {  // figure 1, right panel
        std::vector<std::string> header{"beta"};
        for (const char* tag : {"phi1", "phi2", "phi5", "phi_inf"})
            for (int i = 1; i <= 3; ++i)
                header.push_back("cost_" + std::to_string(i) + "_" + tag);
        std::string out = csv_row(header);
        for (double beta : beta_grid) {
            ModelParams p = base;
            p.beta = beta;
            std::vector<double> row{beta};
            for (double phi : {1.0, 2.0, 5.0}) {
                const CostBreakdown c = cost_closed_form(p, CostSpec::make_A(0.05, phi));
                row.insert(row.end(), c.total.begin(), c.total.end());
            }
            const CostBreakdown c = cost_closed_form(p, CostSpec::make_APrime(0.05));
            row.insert(row.end(), c.total.begin(), c.total.end());
            out += csv_row(row);
        }
        emit_file(dir + "/fig1_costs.csv", out);
    }
    {  // figure 2, left panel
        const TimeGrid grid = make_grid(base.horizon, grid_m);
        const std::vector<double> eps_list{0.1, 0.03, 0.005};
        std::vector<std::string> header{"t"};
        for (double e : eps_list)
            for (int i = 1; i <= 3; ++i)
                header.push_back("X_" + std::to_string(i) + "_eps" + format_double(e));
        for (int i = 1; i <= 3; ++i) header.push_back("X_" + std::to_string(i) + "_eps0");
        std::string out = csv_row(header);
        std::vector<EquilibriumSolution> sols;
        for (double e : eps_list) sols.push_back(solve_Aprime(base, e));
        sols.push_back(std::get<EquilibriumSolution>(
            solve_B(base, base.lambda * 1.0, base.lambda / 2.0)));
        for (int k = 0; k <= grid.n_steps; ++k) {
            std::vector<double> row{grid.node(k)};
            for (const auto& s : sols)
                for (int i = 0; i < 3; ++i) row.push_back(s.inventory(i, grid.node(k)));
            out += csv_row(row);
        }
        emit_file(dir + "/fig2_strategies.csv", out);
    }
    {  // figure 2, right panel
        std::vector<std::string> header{"beta"};
        for (const char* tag : {"eps0.1", "eps0.03", "eps0.005", "eps0"})
            for (int i = 1; i <= 3; ++i)
                header.push_back("cost_" + std::to_string(i) + "_" + std::string(tag));
        std::string out = csv_row(header);
        for (double beta : beta_grid) {
            ModelParams p = base;
            p.beta = beta;
            std::vector<double> row{beta};
            for (double e : {0.1, 0.03, 0.005}) {
                const CostBreakdown c = cost_closed_form(p, CostSpec::make_APrime(e));
                row.insert(row.end(), c.total.begin(), c.total.end());
            }
            const CostBreakdown c =
                cost_closed_form(p, CostSpec::make_B(p.lambda * 1.0, p.lambda / 2.0));
            row.insert(row.end(), c.total.begin(), c.total.end());
            out += csv_row(row);
        }
        emit_file(dir + "/fig2_costs.csv", out);
    }
    {  // figure 3
        const std::vector<double> ns{2, 3, 5, 10, 50};
        std::vector<std::string> header{"beta"};
        for (double n : ns) header.push_back("coa_N" + format_double(n));
        header.push_back("coa_limit");
        std::string out = csv_row(header);
        for (double beta : beta_grid) {
            std::vector<double> row{beta};
            for (double n : ns) row.push_back(coa(beta, 1.0, n));
            row.push_back(coa_limit_n(beta, 1.0));
            out += csv_row(row);
        }
        emit_file(dir + "/fig3_coa.csv", out);
    }
    {  // figure 4
        const std::vector<double> ns{2, 3, 5, 10, 50};
        std::vector<std::string> header{"beta"};
        for (double n : ns) header.push_back("cop_N" + format_double(n));
        std::string out = csv_row(header);
        for (double beta : beta_grid) {
            std::vector<double> row{beta};
            for (double n : ns) row.push_back(cop(0.2, beta, 1.0, n).cop);
            out += csv_row(row);
        }
        emit_file(dir + "/fig4_cop_beta.csv", out);

        std::vector<std::string> header2{"N"};
        for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0})
            header2.push_back("cop_beta" + format_double(beta));
        std::string out2 = csv_row(header2);
        for (int n = 2; n <= 50; ++n) {
            std::vector<double> row{static_cast<double>(n)};
            for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0})
                row.push_back(cop(0.2, beta, 1.0, n).cop);
            out2 += csv_row(row);
        }
        emit_file(dir + "/fig4_cop_n.csv", out2);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form Nash equilibria for N-trader optimal execution with transient impact"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string phis_arg, eps_arg, figures_dir = "figures";
    double delta = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", cfg.input, "JSON config path")->required();
        cmd->add_option("--output", cfg.output, "output path (default stdout)");
        cmd->add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--grid", cfg.grid_m, "grid steps for sampling/oracle");
        cmd->add_option("--tol-theta", cfg.tol_theta, "block-cost match tolerance (relative to lambda)");
        cmd->add_option("--tol-resid", cfg.tol_resid, "residual tolerance for verify");
        cmd->add_option("--seed", cfg.seed, "seed for randomized probes");
    };

    add_common(app.add_subcommand("solve", "sample the equilibrium strategies"));
    add_common(app.add_subcommand("cost", "closed-form equilibrium cost breakdown"));
    add_common(app.add_subcommand("verify", "residual + discrete-oracle verification"));
    auto* sp = app.add_subcommand("sweep-phi", "terminal-penalty convergence sweep");
    add_common(sp);
    sp->add_option("--phis", phis_arg, "comma-separated phi values");
    auto* se = app.add_subcommand("sweep-eps", "instantaneous-cost convergence sweep");
    add_common(se);
    se->add_option("--eps-list", eps_arg, "comma-separated eps values");
    se->add_option("--delta", delta, "window margin (default 0.1 T)");
    add_common(app.add_subcommand("anarchy", "population impact cost and cost of anarchy"));
    add_common(app.add_subcommand("predation", "liquidator impact cost and cost of predation"));
    auto* fig = app.add_subcommand("figures", "emit the four figure datasets");
    fig->add_option("--output", figures_dir, "output directory");
    fig->add_option("--grid", cfg.grid_m, "grid steps for sampled strategies");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("solve")) return cmd_solve(cfg);
        if (app.got_subcommand("cost")) return cmd_cost(cfg);
        if (app.got_subcommand("verify")) return cmd_verify(cfg);
        if (app.got_subcommand("sweep-phi")) return cmd_sweep_phi(cfg, phis_arg);
        if (app.got_subcommand("sweep-eps")) return cmd_sweep_eps(cfg, eps_arg, delta);
        if (app.got_subcommand("anarchy")) return cmd_anarchy(cfg);
        if (app.got_subcommand("predation")) return cmd_predation(cfg);
        if (app.got_subcommand("figures")) return cmd_figures(figures_dir, std::min(cfg.grid_m, 2000));
    } catch (const no_equilibrium& e) {
        std::cerr << "no equilibrium: " << e.value.witness << "\n";
        return 3;
    } catch (const invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
