#pragma once

#include <iosfwd>

#include "hcife/analysis.hpp"
#include "hcife/config.hpp"

namespace hcife {

struct StudyRow {
    int n = 0;
    double h = 0.0;
    int dofs = 0;
    double e0 = 0.0, e0_rate = 0.0;
    double e1 = 0.0, e1_rate = 0.0;
    double l2_part = 0.0, curl_part = 0.0;
    double solve_residual = 0.0;
};

struct SolveResult {
    MeshTopology mesh;
    Classification cls;
    std::vector<LocalEdgeBasis> bases;
    ManufacturedSolution exact;
    Eigen::VectorXd dofs;
    double residual = 0.0;
};

std::string scheme_name(Scheme scheme);

/// One full discretize-and-solve pass on an n x n mesh. The manufactured
/// solution requires the interface circle centered at the origin.
SolveResult solve_once(const RunConfig& cfg, int n);

/// Convergence sweep over cfg.mesh_n; writes errors_<scheme>.csv to
/// cfg.output_dir and returns the rows. Rate cells are blank on the first row.
std::vector<StudyRow> run_study(const RunConfig& cfg);

void write_csv(const std::vector<StudyRow>& rows, std::ostream& os);

/// Run all structural checks on the configured mesh (first entry of mesh.n)
/// and stream one pass/fail line per check. Returns true if every check
/// passed.
bool run_diagnostics(const RunConfig& cfg, std::ostream& os);

}  // namespace hcife
