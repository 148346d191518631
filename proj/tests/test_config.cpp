#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hcife/config.hpp"
#include "hcife/study.hpp"

using namespace hcife;

TEST_CASE("defaults survive an empty config") {
    RunConfig cfg = config_from_text("");
    CHECK(cfg.mesh_n == std::vector<int>{8, 16, 32, 64, 128});
    CHECK(cfg.interface_r == doctest::Approx(M_PI / 5.0));
    CHECK(cfg.scheme == Scheme::PG);
    CHECK(cfg.coeff.matched());
    CHECK(cfg.solver_method == SolveMethod::Direct);
}

TEST_CASE("key=value parsing with comments and whitespace") {
    auto kv = parse_key_values("# comment\n  scheme = pp \n\nmesh.n=4,8\n");
    CHECK(kv.size() == 2);
    CHECK(kv["scheme"] == "pp");
    CHECK(kv["mesh.n"] == "4,8");
}

TEST_CASE("a full config round-trips into the struct") {
    RunConfig cfg = config_from_text(
        "mesh.n = 4, 8, 16\n"
        "domain.xmin = -2\ndomain.xmax = 2\ndomain.ymin = -1\ndomain.ymax = 1\n"
        "interface.type = circle\ninterface.cx = 0\ninterface.cy = 0\ninterface.r = 0.4\n"
        "coeff.mu_minus = 1\ncoeff.mu_plus = 0.01\n"
        "coeff.beta_minus = 1\ncoeff.beta_plus = 100\n"
        "scheme = pp\npenalty.c0 = 5\npenalty.r = 2\npenalty.cut_edges_only = 1\n"
        "quad.volume_degree = 6\nquad.rhs_degree = 8\nquad.n_sub = 2\nquad.edge_degree = 6\n"
        "quad.error_degree = 8\n"
        "solver.method = iterative\nsolver.tol = 1e-8\nsolver.max_iter = 500\n"
        "manufactured.k2 = 10\noutput.dir = out\n");
    CHECK(cfg.mesh_n == std::vector<int>{4, 8, 16});
    CHECK(cfg.domain.xmin == -2.0);
    CHECK(cfg.interface_r == 0.4);
    CHECK(cfg.coeff.mu_plus == 0.01);
    CHECK(cfg.coeff.beta_plus == 100.0);
    CHECK(cfg.scheme == Scheme::PP);
    CHECK(cfg.rules.c0 == 5.0);
    CHECK(cfg.rules.r == 2.0);
    CHECK(cfg.rules.cut_edges_only);
    CHECK(cfg.rules.volume_degree == 6);
    CHECK(cfg.error_degree == 8);
    CHECK(cfg.solver_method == SolveMethod::Iterative);
    CHECK(cfg.solver_tol == 1e-8);
    CHECK(cfg.solver_max_iter == 500);
    CHECK(cfg.k2 == 10.0);
    CHECK(cfg.output_dir == "out");
}

TEST_CASE("malformed configs are rejected") {
    CHECK_THROWS_AS(config_from_text("no equals sign here"), ConfigError);
    CHECK_THROWS_AS(config_from_text("unknown.key = 1"), ConfigError);
    CHECK_THROWS_AS(config_from_text("coeff.mu_plus = abc"), ConfigError);
    CHECK_THROWS_AS(config_from_text("coeff.mu_plus = -1"), ConfigError);
    CHECK_THROWS_AS(config_from_text("scheme = dg"), ConfigError);
    CHECK_THROWS_AS(config_from_text("mesh.n = 8,8"), ConfigError);
    CHECK_THROWS_AS(config_from_text("mesh.n = 16,8"), ConfigError);
    CHECK_THROWS_AS(config_from_text("mesh.n = 0"), ConfigError);
    CHECK_THROWS_AS(config_from_text("interface.type = square"), ConfigError);
    CHECK_THROWS_AS(config_from_text("interface.r = 0"), ConfigError);
    CHECK_THROWS_AS(config_from_text("solver.method = magic"), ConfigError);
    CHECK_THROWS_AS(config_from_text("quad.volume_degree = 2.5"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("off-center interface is rejected by the study driver") {
    RunConfig cfg = config_from_text("interface.cx = 0.1\nmesh.n = 4");
    CHECK_THROWS_AS(solve_once(cfg, 4), ConfigError);
}

TEST_CASE("CSV rate columns are consistent with the error columns") {
    std::vector<StudyRow> rows;
    for (int k = 0; k < 3; ++k) {
        StudyRow r;
        r.n = 8 << k;
        r.h = 0.25 / (1 << k);
        r.dofs = 100 * (k + 1);
        r.e0 = 0.5 / (1 << k);
        r.e1 = 0.3 / (1 << k);
        if (k > 0) {
            r.e0_rate = std::log(rows.back().e0 / r.e0) / std::log(rows.back().h / r.h);
            r.e1_rate = std::log(rows.back().e1 / r.e1) / std::log(rows.back().h / r.h);
        }
        rows.push_back(r);
    }
    std::ostringstream os;
    write_csv(rows, os);
    std::istringstream in(os.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "N,h,dofs,e0,e0_rate,e1,e1_rate,l2_part,curl_part,solve_residual");
    std::vector<std::vector<std::string>> cells;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        cells.push_back(row);
    }
    REQUIRE(cells.size() == 3);
    CHECK(cells[0][4].empty());  // no rate on the first row
    for (size_t i = 1; i < cells.size(); ++i) {
        double h0 = std::stod(cells[i - 1][1]), h1 = std::stod(cells[i][1]);
        double e0 = std::stod(cells[i - 1][3]), e1 = std::stod(cells[i][3]);
        double rate = std::log(e0 / e1) / std::log(h0 / h1);
        CHECK(std::stod(cells[i][4]) == doctest::Approx(rate).epsilon(1e-10));
    }
    // byte-identical re-emission
    std::ostringstream os2;
    write_csv(rows, os2);
    CHECK(os.str() == os2.str());
}
