#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "hcife/study.hpp"

using namespace hcife;

namespace {

RunConfig load(const std::string& path) {
    RunConfig cfg = load_config(path);
    if (const char* dir = std::getenv("HCIFE_OUTPUT_DIR")) cfg.output_dir = dir;
    return cfg;
}

int run_solve(const std::string& config_path) {
    RunConfig cfg = load(config_path);
    const int n = cfg.mesh_n.front();
    SolveResult res = solve_once(cfg, n);
    ErrorReport err = hcurl_error(res.mesh, res.cls, res.bases, res.dofs, res.exact,
                                  {cfg.error_degree});
    std::cout << "scheme=" << scheme_name(cfg.scheme) << " N=" << n << " h=" << err.h
              << " dofs=" << err.dofs << "\n"
              << "e0=" << err.e0 << " e1=" << err.e1 << " l2=" << err.l2_part
              << " curl=" << err.curl_part << " residual=" << res.residual << "\n";
    return 0;
}

int run_sweep(const std::string& config_path) {
    RunConfig cfg = load(config_path);
    auto rows = run_study(cfg);
    write_csv(rows, std::cout);
    return 0;
}

int run_diag(const std::string& config_path) {
    RunConfig cfg = load(config_path);
    return run_diagnostics(cfg, std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"H(curl) interface problem solver: immersed edge elements on "
                 "unfitted structured meshes"};
    app.require_subcommand(1);

    std::string config_path;
    auto add = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "path to key=value config file")->required();
        return sub;
    };
    CLI::App* cmd_solve = add("solve", "single solve on the coarsest configured mesh");
    CLI::App* cmd_study = add("study", "convergence sweep; writes errors_<scheme>.csv");
    CLI::App* cmd_diag = add("diagnose", "structural identity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_solve->parsed()) return run_solve(config_path);
        if (cmd_study->parsed()) return run_sweep(config_path);
        if (cmd_diag->parsed()) return run_diag(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const A1Violation& e) {
        std::cerr << "error: " << e.what() << " (refine mesh)\n";
        return 3;
    } catch (const SolverBreakdown& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
