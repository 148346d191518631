#include "hcife/config.hpp"

#include <fstream>
#include <sstream>

namespace hcife {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    double x = to_double(key, v);
    int n = static_cast<int>(x);
    if (n != x) throw ConfigError("config: expected integer for " + key + ": '" + v + "'");
    return n;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key on line " + std::to_string(lineno));
        kv[key] = val;
    }
    return kv;
}

RunConfig config_from_text(const std::string& text) {
    auto kv = parse_key_values(text);
    RunConfig cfg;

    auto take = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) return std::string();
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto dbl = [&](const std::string& key, double& out) {
        std::string v = take(key);
        if (!v.empty()) out = to_double(key, v);
    };
    auto integer = [&](const std::string& key, int& out) {
        std::string v = take(key);
        if (!v.empty()) out = to_int(key, v);
    };

    if (std::string v = take("mesh.n"); !v.empty()) {
        cfg.mesh_n.clear();
        std::istringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.mesh_n.push_back(to_int("mesh.n", trim(item)));
    }
    dbl("domain.xmin", cfg.domain.xmin);
    dbl("domain.xmax", cfg.domain.xmax);
    dbl("domain.ymin", cfg.domain.ymin);
    dbl("domain.ymax", cfg.domain.ymax);
    if (std::string v = take("interface.type"); !v.empty() && v != "circle")
        throw ConfigError("config: unsupported interface.type '" + v + "'");
    dbl("interface.cx", cfg.interface_cx);
    dbl("interface.cy", cfg.interface_cy);
    dbl("interface.r", cfg.interface_r);
    dbl("coeff.mu_minus", cfg.coeff.mu_minus);
    dbl("coeff.mu_plus", cfg.coeff.mu_plus);
    dbl("coeff.beta_minus", cfg.coeff.beta_minus);
    dbl("coeff.beta_plus", cfg.coeff.beta_plus);
    if (std::string v = take("scheme"); !v.empty()) {
        if (v == "pg")
            cfg.scheme = Scheme::PG;
        else if (v == "pp")
            cfg.scheme = Scheme::PP;
        else if (v == "c")
            cfg.scheme = Scheme::C;
        else
            throw ConfigError("config: unknown scheme '" + v + "' (expected pg|pp|c)");
    }
    dbl("penalty.c0", cfg.rules.c0);
    dbl("penalty.r", cfg.rules.r);
    if (std::string v = take("penalty.cut_edges_only"); !v.empty())
        cfg.rules.cut_edges_only = to_int("penalty.cut_edges_only", v) != 0;
    integer("quad.volume_degree", cfg.rules.volume_degree);
    integer("quad.rhs_degree", cfg.rules.rhs_degree);
    integer("quad.n_sub", cfg.rules.n_sub);
    integer("quad.edge_degree", cfg.rules.edge_degree);
    integer("quad.error_degree", cfg.error_degree);
    if (std::string v = take("solver.method"); !v.empty()) {
        if (v == "direct")
            cfg.solver_method = SolveMethod::Direct;
        else if (v == "iterative")
            cfg.solver_method = SolveMethod::Iterative;
        else
            throw ConfigError("config: unknown solver.method '" + v + "'");
    }
    dbl("solver.tol", cfg.solver_tol);
    integer("solver.max_iter", cfg.solver_max_iter);
    dbl("manufactured.k2", cfg.k2);
    if (std::string v = take("output.dir"); !v.empty()) cfg.output_dir = v;

    if (!kv.empty()) throw ConfigError("config: unknown key '" + kv.begin()->first + "'");

    if (cfg.coeff.mu_minus <= 0 || cfg.coeff.mu_plus <= 0 || cfg.coeff.beta_minus <= 0 ||
        cfg.coeff.beta_plus <= 0)
        throw ConfigError("config: coefficients must be positive");
    if (cfg.mesh_n.empty()) throw ConfigError("config: mesh.n must be nonempty");
    for (size_t i = 0; i < cfg.mesh_n.size(); ++i) {
        if (cfg.mesh_n[i] < 1) throw ConfigError("config: mesh.n entries must be >= 1");
        if (i > 0 && cfg.mesh_n[i] <= cfg.mesh_n[i - 1])
            throw ConfigError("config: mesh.n must be strictly increasing");
    }
    if (cfg.interface_r <= 0) throw ConfigError("config: interface.r must be positive");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_text(buf.str());
}

}  // namespace hcife
