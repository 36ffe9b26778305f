// End-to-end checks of the command-line tool: exit codes, output shapes,
// determinism. Invoked by ctest with the binary path as the only argument.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int failures = 0;
std::string exe;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& args, const std::string& out_file = "") {
    std::string cmd = exe + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
    else cmd += " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_config(const std::string& path, const std::string& cost,
                  const std::string& x = "[1.0, 0.0, -1.0]") {
    std::ofstream out(path);
    out << "{\"lambda\": 0.2, \"beta\": 1.0, \"T\": 1.0, \"N\": 3, \"x\": " << x
        << ", \"cost\": " << cost << "}\n";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <owgame path>\n");
        return 2;
    }
    exe = argv[1];
    const std::string dir = "cli_test_tmp";
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) {
        std::fprintf(stderr, "failed to set up %s\n", dir.c_str());
        return 2;
    }

    write_config(dir + "/a.json", R"({"variant": "A", "eps": 0.05, "phi": 5.0})");
    write_config(dir + "/ap.json", R"({"variant": "Aprime", "eps": 0.05})");
    write_config(dir + "/b_good.json", R"({"variant": "B", "theta0": 0.2, "thetaT": 0.1})");
    write_config(dir + "/b_bad.json", R"({"variant": "B", "theta0": 0.2, "thetaT": 0.1})",
                 "[1.5, 0.3, -0.6]");  // wrong theta0 for this lambda? theta0=0.2 is good...
    write_config(dir + "/b_wrong.json", R"({"variant": "B", "theta0": 0.4, "thetaT": 0.1})",
                 "[1.5, 0.3, -0.6]");
    write_config(dir + "/bad_n.json", R"({"variant": "A", "eps": 0.05, "phi": 5.0})", "[1.0]");

    check(run("solve --input " + dir + "/a.json --grid 64", dir + "/solve_a.csv") == 0,
          "solve (A) exits 0");
    {
        const std::string csv = slurp(dir + "/solve_a.csv");
        check(csv.rfind("t,X_1,X_2,X_3,I\n", 0) == 0, "solve CSV has the expected header");
        check(csv.find("nan") == std::string::npos, "solve CSV has no NaNs");
    }

    check(run("solve --input " + dir + "/b_good.json --grid 32 --output " + dir + "/b.csv") == 0,
          "solve (B, good thetas) exits 0");
    check(slurp(dir + "/b.csv").find("0-,") != std::string::npos, "B CSV contains the 0- row");
    check(!slurp(dir + "/b.csv.jumps.json").empty(), "B solve writes the jump sidecar");

    check(run("solve --input " + dir + "/b_wrong.json --grid 32") == 3,
          "solve (B, wrong theta0, nonzero mean) exits 3");

    check(run("solve --input " + dir + "/bad_n.json") == 2, "config error exits 2");
    check(run("solve --input " + dir + "/missing.json") == 2, "missing input exits 2");

    check(run("cost --input " + dir + "/a.json", dir + "/cost_a.csv") == 0, "cost exits 0");
    check(slurp(dir + "/cost_a.csv").rfind("trader,impact,smoothing,terminal,total\n", 0) == 0,
          "cost CSV header");

    check(run("verify --input " + dir + "/ap.json --grid 250 --seed 7") == 0,
          "verify (A') exits 0 at default tolerances");
    check(run("verify --input " + dir + "/a.json --grid 250 --tol-resid 1e-30") == 4,
          "verify exits 4 when the residual tolerance is impossible");
    check(run("verify --input " + dir + "/b_wrong.json") == 3, "verify on bad thetas exits 3");

    check(run("sweep-phi --input " + dir + "/a.json --grid 200 --phis 1,10,100",
              dir + "/sweep_phi.csv") == 0, "sweep-phi exits 0");
    check(slurp(dir + "/sweep_phi.csv").rfind("sweep_value,", 0) == 0, "sweep CSV header");

    check(run("sweep-eps --input " + dir + "/ap.json --grid 200 --eps-list 0.1,0.01",
              dir + "/sweep_eps.csv") == 0, "sweep-eps exits 0");
    check(slurp(dir + "/sweep_eps.csv").find("head_1") != std::string::npos,
          "sweep-eps CSV carries the split columns");

    check(run("verify --input " + dir + "/b_good.json --grid 200 --seed 3") == 0,
          "verify (B, good thetas) exits 0");

    check(run("anarchy --input " + dir + "/b_bad.json --format json", dir + "/anarchy.json") == 0,
          "anarchy exits 0");
    check(slurp(dir + "/anarchy.json").find("coa") != std::string::npos, "anarchy reports coa");

    check(run("predation --input " + dir + "/b_bad.json --format json") == 0, "predation exits 0");

    check(run("figures --output " + dir + " --grid 64") == 0, "figures exits 0");
    for (const char* f : {"fig1_strategies.csv", "fig1_costs.csv", "fig2_strategies.csv",
                          "fig2_costs.csv", "fig3_coa.csv", "fig4_cop_beta.csv", "fig4_cop_n.csv"})
        check(!slurp(dir + "/" + f).empty(), std::string("figures writes ") + f);

    // determinism: identical config and seed give byte-identical output
    check(run("solve --input " + dir + "/a.json --grid 64", dir + "/det1.csv") == 0, "det run 1");
    check(run("solve --input " + dir + "/a.json --grid 64", dir + "/det2.csv") == 0, "det run 2");
    check(slurp(dir + "/det1.csv") == slurp(dir + "/det2.csv"), "solve output is byte-identical");
    check(run("verify --input " + dir + "/ap.json --grid 100 --seed 9 --format json",
              dir + "/v1.json") == 0, "verify det run 1");
    check(run("verify --input " + dir + "/ap.json --grid 100 --seed 9 --format json",
              dir + "/v2.json") == 0, "verify det run 2");
    check(slurp(dir + "/v1.json") == slurp(dir + "/v2.json"), "verify output is byte-identical");

    if (failures) std::printf("%d CLI check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
