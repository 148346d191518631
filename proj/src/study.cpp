#include "hcife/study.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace hcife {

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::PG: return "pg";
        case Scheme::PP: return "pp";
        case Scheme::C: return "c";
    }
    return "?";
}

SolveResult solve_once(const RunConfig& cfg, int n) {
    if (cfg.interface_cx != 0.0 || cfg.interface_cy != 0.0)
        throw ConfigError("solve_once: the manufactured solution needs the interface circle "
                          "centered at the origin");
    SolveResult res;
    res.mesh = build_uniform_triangulation(n, cfg.domain);
    LevelSetInterface iface = cfg.interface();
    res.cls = classify_elements(res.mesh, iface);
    res.bases = build_all_bases(res.cls, cfg.coeff);
    res.exact = ManufacturedSolution{cfg.coeff, cfg.interface_r, 1.0, cfg.k2};

    AssembledSystem sys = assemble(res.mesh, res.cls, res.bases, cfg.coeff, cfg.scheme,
                                   res.exact.source(), iface, cfg.rules);
    LinearSystem lin = apply_dirichlet(sys, res.mesh, res.exact.boundary());
    SolveReport rep = solve(lin, cfg.solver_tol, cfg.solver_method, cfg.solver_max_iter);
    res.dofs = rep.x;
    res.residual = rep.residual;
    return res;
}

std::vector<StudyRow> run_study(const RunConfig& cfg) {
    std::vector<StudyRow> rows;
    for (int n : cfg.mesh_n) {
        SolveResult res = solve_once(cfg, n);
        ErrorReport err = hcurl_error(res.mesh, res.cls, res.bases, res.dofs, res.exact,
                                      {cfg.error_degree});
        StudyRow row;
        row.n = n;
        row.h = err.h;
        row.dofs = err.dofs;
        row.e0 = err.e0;
        row.e1 = err.e1;
        row.l2_part = err.l2_part;
        row.curl_part = err.curl_part;
        row.solve_residual = res.residual;
        if (!rows.empty()) {
            const StudyRow& prev = rows.back();
            row.e0_rate = std::log(prev.e0 / row.e0) / std::log(prev.h / row.h);
            row.e1_rate = std::log(prev.e1 / row.e1) / std::log(prev.h / row.h);
        }
        rows.push_back(row);
    }

    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(std::filesystem::path(cfg.output_dir) /
                      ("errors_" + scheme_name(cfg.scheme) + ".csv"));
    write_csv(rows, out);
    return rows;
}

void write_csv(const std::vector<StudyRow>& rows, std::ostream& os) {
    os << "N,h,dofs,e0,e0_rate,e1,e1_rate,l2_part,curl_part,solve_residual\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12e", v);
        return std::string(buf);
    };
    for (size_t i = 0; i < rows.size(); ++i) {
        const StudyRow& r = rows[i];
        os << r.n << ',' << num(r.h) << ',' << r.dofs << ',' << num(r.e0) << ','
           << (i == 0 ? "" : num(r.e0_rate)) << ',' << num(r.e1) << ','
           << (i == 0 ? "" : num(r.e1_rate)) << ',' << num(r.l2_part) << ','
           << num(r.curl_part) << ',' << num(r.solve_residual) << '\n';
    }
}

namespace {

struct Check {
    bool ok = true;
    double worst = 0.0;

    void record(double residual, double tol) {
        worst = std::max(worst, residual);
        if (!(residual <= tol)) ok = false;
    }
};

void report(std::ostream& os, const char* name, const Check& c, bool& all_ok) {
    os << (c.ok ? "PASS " : "FAIL ") << name << " worst=" << c.worst << "\n";
    all_ok &= c.ok;
}

}  // namespace

bool run_diagnostics(const RunConfig& cfg, std::ostream& os) {
    const int n = cfg.mesh_n.front();
    MeshTopology mesh = build_uniform_triangulation(n, cfg.domain);
    LevelSetInterface iface = cfg.interface();
    Classification cls = classify_elements(mesh, iface);
    auto bases = build_all_bases(cls, cfg.coeff);
    const CoefficientPair& coeff = cfg.coeff;

    Check kron, tang, norm, curl_id, roundtrip, sequence, stiff, a3_range, a1_ineq, positivity;

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (size_t ci = 0; ci < cls.cuts.size(); ++ci) {
        const CutConfiguration& cut = cls.cuts[ci];
        const LocalEdgeBasis& basis = bases[ci];
        auto verts = mesh.element_vertices(cut.elem);
        const double hscale = std::max(1.0, 1.0 / mesh.h);

        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double dof = split_edge_dof(cut, basis.minus[i], basis.plus[i],
                                            verts[(j + 1) % 3], verts[(j + 2) % 3]);
                kron.record(std::abs(dof - (i == j ? 1.0 : 0.0)), 1e-11);
            }
            for (int k = 0; k < 10; ++k) {
                Vec2 p = cut.chord_start + (k + 0.5) / 10.0 * (cut.chord_end - cut.chord_start);
                double jump = (basis.plus[i](p) - basis.minus[i](p)).dot(cut.tangent);
                tang.record(std::abs(jump) / hscale, 1e-12);
            }
            double nm = coeff.beta_minus * basis.minus[i](cut.Xm).dot(cut.normal);
            double np = coeff.beta_plus * basis.plus[i](cut.Xm).dot(cut.normal);
            // relative to the magnitude of the weighted traces being compared
            double nscale = std::max({1.0, coeff.beta_minus * basis.minus[i](cut.Xm).norm(),
                                      coeff.beta_plus * basis.plus[i](cut.Xm).norm()});
            norm.record(std::abs(np - nm) / nscale, 1e-12);

            const int apex_side = cut.apex_is_minus ? -1 : 1;
            Mat2 bt;
            bt.col(0) = cut.A2 - cut.A1;
            bt.col(1) = cut.A3 - cut.A1;
            const double de = cut.d * cut.e;
            const double denom =
                (1.0 - de) * coeff.mu(-apex_side) + de * coeff.mu(apex_side);
            const double closed = 2.0 / (bt.determinant() * denom);
            curl_id.record(std::abs(basis.curl_over_mu(i) - closed) / std::abs(closed), 1e-12);
            curl_id.record(
                std::abs(basis.plus[i].curl() / coeff.mu_plus - closed) / std::abs(closed),
                1e-12);
        }

        for (int t = 0; t < 5; ++t) {
            NDPolynomial v{{unit(rng), unit(rng)}, unit(rng)};
            NDPolynomial ext = ct_apply(cut, v, coeff);
            NDPolynomial back = ct_inverse(cut, ext, coeff);
            double scale = std::max({1.0, v.a.norm() + std::abs(v.b),
                                     ext.a.norm() + std::abs(ext.b)});
            roundtrip.record(((back.a - v.a).norm() + std::abs(back.b - v.b)) / scale, 1e-13);
        }

        sequence.record(exact_sequence_residual(cut, coeff), 1e-10);

        // Mapped-normal inequalities for the non-obtuse cut triangle.
        Mat2 bt;
        bt.col(0) = cut.A2 - cut.A1;
        bt.col(1) = cut.A3 - cut.A1;
        Vec2 n_away = cut.apex_is_minus ? cut.normal : Vec2(-cut.normal);
        Vec2 nhat = bt.inverse() * n_away;
        const double dotp = cut.e * nhat.x() + cut.d * nhat.y();
        a1_ineq.record(dotp > 0.0 ? 0.0 : -dotp, 0.0);
        const double ratio = cut.d * cut.e * (nhat.x() + nhat.y()) / dotp;
        a1_ineq.record(std::max(-ratio, ratio - 1.0), 1e-12);

        InfSupDiagnostics diag = local_infsup_eigs(cut, coeff);
        const double contrast = std::max(coeff.beta_minus / coeff.beta_plus,
                                         coeff.beta_plus / coeff.beta_minus);
        const double threshold = 8.0 / (3.0 * std::sqrt(3.0) - 5.0) + 1.0;  // ~41.816
        if (contrast < threshold)
            positivity.record(diag.min_inner > 0.0 ? 0.0 : -diag.min_inner, 1e-10);
    }

    {
        AssembledSystem pg =
            assemble(mesh, cls, bases, coeff, Scheme::PG, nullptr, iface, cfg.rules);
        AssembledSystem cg =
            assemble(mesh, cls, bases, coeff, Scheme::C, nullptr, iface, cfg.rules);
        Eigen::SparseMatrix<double> diff = pg.K - cg.K;
        double scale = 0.0;
        for (int k = 0; k < pg.K.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(pg.K, k); it; ++it)
                scale = std::max(scale, std::abs(it.value()));
        double worst = 0.0;
        for (int k = 0; k < diff.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
                worst = std::max(worst, std::abs(it.value()));
        stiff.record(worst / std::max(scale, 1.0), 1e-12);
    }

    {
        const double lo = (5.0 - 3.0 * std::sqrt(3.0)) / 8.0;
        for (int i = 1; i <= 100; ++i) {
            for (int j = 1; j <= 100; ++j) {
                auto [l1, l2] = infsup_case1_eigs(i / 100.0, j / 100.0);
                a3_range.record(std::max({lo - l1, l1 - 0.0, 0.0 - l2, l2 - 1.0}), 1e-12);
            }
        }
    }

    bool all_ok = true;
    report(os, "kronecker_edge_dofs", kron, all_ok);
    report(os, "tangential_continuity", tang, all_ok);
    report(os, "weighted_normal_continuity", norm, all_ok);
    report(os, "constant_curl_identity", curl_id, all_ok);
    report(os, "extension_round_trip", roundtrip, all_ok);
    report(os, "exact_sequence_residual", sequence, all_ok);
    report(os, "curl_stiffness_equality", stiff, all_ok);
    report(os, "eigenvalue_ranges", a3_range, all_ok);
    report(os, "mapped_normal_inequalities", a1_ineq, all_ok);
    report(os, "interpolant_positivity", positivity, all_ok);
    return all_ok;
}

}  // namespace hcife
