#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcife/assembly.hpp"
#include "hcife/solve.hpp"

namespace hcife {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key=value run configuration with dotted section prefixes, e.g.
///     mesh.n = 8,16,32
///     coeff.mu_plus = 0.1
///     scheme = pg
/// Lines starting with '#' are comments.
struct RunConfig {
    std::vector<int> mesh_n = {8, 16, 32, 64, 128};
    Rect domain;
    double interface_cx = 0.0, interface_cy = 0.0;
    double interface_r = M_PI / 5.0;
    CoefficientPair coeff;
    Scheme scheme = Scheme::PG;
    AssemblyRules rules;
    int error_degree = 6;
    SolveMethod solver_method = SolveMethod::Direct;
    double solver_tol = 1e-10;
    int solver_max_iter = 2000;
    double k2 = 20.0;
    std::string output_dir = ".";

    LevelSetInterface interface() const {
        return LevelSetInterface::circle({interface_cx, interface_cy}, interface_r);
    }
};

std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Parse and validate a config file. Throws ConfigError on unknown keys,
/// malformed values, or invariant violations (positive coefficients,
/// increasing mesh sizes, known scheme).
RunConfig load_config(const std::string& path);
RunConfig config_from_text(const std::string& text);

}  // namespace hcife
