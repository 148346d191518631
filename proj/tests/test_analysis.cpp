#include <doctest.h>

#include <cmath>

#include "hcife/analysis.hpp"
#include "hcife/study.hpp"

using namespace hcife;

namespace {
ManufacturedSolution example(double mu_plus, double beta_plus) {
    return ManufacturedSolution{CoefficientPair{1.0, mu_plus, 1.0, beta_plus}};
}
}  // namespace

TEST_CASE("manufactured solution satisfies all interface jump conditions") {
    for (auto [mp, bp] : {std::pair{0.1, 10.0}, {0.1, 100.0}, {0.01, 10.0}, {0.01, 100.0}}) {
        ManufacturedSolution ex = example(mp, bp);
        for (int k = 0; k < 64; ++k) {
            double th = 2.0 * M_PI * k / 64.0;
            Vec2 p(ex.r1 * std::cos(th), ex.r1 * std::sin(th));
            Vec2 n = p.normalized();
            Vec2 t(-n.y(), n.x());
            Vec2 um = ex.u(p, -1), up = ex.u(p, 1);
            CHECK(std::abs((up - um).dot(t)) < 1e-12);
            CHECK(std::abs(ex.coeff.beta_plus * up.dot(n) -
                           ex.coeff.beta_minus * um.dot(n)) < 1e-12);
            CHECK(std::abs(ex.curl_over_mu(p, 1) - ex.curl_over_mu(p, -1)) < 1e-12);
        }
    }
}

TEST_CASE("closed-form derivatives agree with finite differences") {
    ManufacturedSolution ex = example(0.1, 100.0);
    const double h = 1e-4;
    auto points = {Vec2(0.21, -0.13), Vec2(-0.3, 0.25), Vec2(0.05, 0.4),   // inside
                   Vec2(0.7, 0.2), Vec2(-0.5, -0.6), Vec2(0.1, 0.85)};     // outside
    for (const Vec2& p : points) {
        int s = ex.side(p);
        // curl u = d(u_y)/dx - d(u_x)/dy
        double fd_curl = (ex.u(p + Vec2(h, 0), s).y() - ex.u(p - Vec2(h, 0), s).y()) / (2 * h) -
                         (ex.u(p + Vec2(0, h), s).x() - ex.u(p - Vec2(0, h), s).x()) / (2 * h);
        CHECK(std::abs(fd_curl - ex.curl_u(p, s)) /
                  std::max(1.0, std::abs(ex.curl_u(p, s))) < 1e-6);
        // f = curl(1/mu curl u) + beta u with the scalar-to-vector curl
        Vec2 fd_f(
            (ex.curl_over_mu(p + Vec2(0, h), s) - ex.curl_over_mu(p - Vec2(0, h), s)) / (2 * h),
            -(ex.curl_over_mu(p + Vec2(h, 0), s) - ex.curl_over_mu(p - Vec2(h, 0), s)) / (2 * h));
        fd_f += ex.coeff.beta(s) * ex.u(p, s);
        Vec2 f = ex.f(p, s);
        CHECK((fd_f - f).norm() / std::max(1.0, f.norm()) < 1e-6);
    }
}

TEST_CASE("solution and curl vanish where the construction demands") {
    ManufacturedSolution ex = example(0.01, 10.0);
    CHECK(ex.u(Vec2(0, 0), -1).norm() == 0.0);
    Vec2 on_gamma(ex.r1, 0.0);
    CHECK(ex.u(on_gamma, -1).norm() < 1e-14);
    CHECK(ex.u(on_gamma, 1).norm() < 1e-14);
    // both one-sided forms of (1/mu) curl at (r1, 0) equal 2 k1 r1^2
    double expect = 2.0 * ex.k1() * ex.r1 * ex.r1;
    CHECK(ex.curl_over_mu(on_gamma, -1) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ex.curl_over_mu(on_gamma, 1) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("convergence_rates on synthetic sequences") {
    std::vector<std::pair<double, double>> lin, sqrt_seq;
    for (int k = 0; k < 4; ++k) {
        double h = 1.0 / (8 << k);
        lin.emplace_back(h, 3.0 * h);
        sqrt_seq.emplace_back(h, 0.7 * std::sqrt(h));
    }
    for (double r : convergence_rates(lin)) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : convergence_rates(sqrt_seq)) CHECK(r == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("edge interpolant of the exact solution converges at first order") {
    ManufacturedSolution ex = example(0.1, 10.0);
    std::vector<std::pair<double, double>> errs;
    double prev_band = 0.0;
    for (int n : {8, 16, 32}) {
        MeshTopology mesh = build_uniform_triangulation(n);
        Classification cls = classify_elements(mesh, ex.interface());
        auto bases = build_all_bases(cls, ex.coeff);
        Eigen::VectorXd dofs = ife_interpolant(mesh, cls, ex);
        ErrorReport rep = hcurl_error(mesh, cls, bases, dofs, ex);
        errs.emplace_back(rep.h, rep.e0);
        CHECK(rep.dofs == mesh.num_edges());
        // the interface band shrinks roughly like h
        if (prev_band > 0.0) {
            CHECK(rep.band_area < 0.75 * prev_band);
            CHECK(rep.band_area > 0.25 * prev_band);
        }
        prev_band = rep.band_area;
    }
    for (double r : convergence_rates(errs)) {
        CHECK(r > 0.8);
        CHECK(r < 1.3);
    }
}

TEST_CASE("interpolating an exact edge-element field gives zero error dofs") {
    // matched coefficients and a global edge-element exact field surrogate:
    // interpolation of the manufactured solution restricted to one element
    // reproduces its local edge integrals (tested via the patch identity in
    // the assembly suite); here check the interpolant DOFs split cut edges.
    ManufacturedSolution ex = example(0.1, 100.0);
    MeshTopology mesh = build_uniform_triangulation(16);
    Classification cls = classify_elements(mesh, ex.interface());
    Eigen::VectorXd dofs = ife_interpolant(mesh, cls, ex);
    auto field = ex.field();
    for (int ge = 0; ge < mesh.num_edges(); ++ge) {
        Vec2 lo = mesh.nodes[mesh.edges[ge][0]], hi = mesh.nodes[mesh.edges[ge][1]];
        // composite rule split at the interface crossing where the edge is cut
        std::vector<double> stops = {0.0, 1.0};
        if (cls.edge_is_cut[ge]) stops.insert(stops.begin() + 1, cls.edge_cut_ratio[ge]);
        double acc = 0.0;
        Vec2 t = (hi - lo).normalized();
        const int pieces = 20;
        for (size_t s = 0; s + 1 < stops.size(); ++s)
            for (int k = 0; k < pieces; ++k) {
                double ta = stops[s] + (stops[s + 1] - stops[s]) * k / pieces;
                double tb = stops[s] + (stops[s + 1] - stops[s]) * (k + 1) / pieces;
                acc += segment_rule(6, lo + ta * (hi - lo), lo + tb * (hi - lo))
                           .integrate([&](const Vec2& p) { return field(p).dot(t); });
            }
        CHECK(dofs(ge) == doctest::Approx(acc).epsilon(1e-8));
    }
}
