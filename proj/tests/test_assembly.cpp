#include <doctest.h>

#include <cmath>

#include "hcife/assembly.hpp"

using namespace hcife;

namespace {

// Circle far outside the domain: every element is plain (plus side).
LevelSetInterface far_circle() { return LevelSetInterface::circle({40.0, 0.0}, 1.0); }
LevelSetInterface mid_circle() { return LevelSetInterface::circle({0.0, 0.0}, M_PI / 5.0); }

double max_abs(const Eigen::SparseMatrix<double>& m) {
    double worst = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

}  // namespace

TEST_CASE("local matrices on a plain element match closed forms") {
    MeshTopology mesh = build_uniform_triangulation(4);
    LevelSetInterface iface = far_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff{1.0, 2.5, 1.0, 3.0};
    const int elem = 7;
    REQUIRE(!cls.is_interface(elem));
    ElementBasis basis = standard_element_basis(mesh, elem);
    Eigen::Matrix3d k_loc, m_loc;
    local_matrices(mesh, elem, cls, basis, basis, coeff, {}, k_loc, m_loc);
    const double area = mesh.element_area(elem);
    // curl of every Whitney function is 1/|T|, all elements are plus side
    Eigen::Matrix3d k_exact = Eigen::Matrix3d::Ones() / (coeff.mu_plus * area);
    CHECK((k_loc - k_exact).cwiseAbs().maxCoeff() < 1e-12);
    // mass by independent high-order quadrature
    auto verts = mesh.element_vertices(elem);
    QuadratureRule rule = triangle_rule(8, verts);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double exact = coeff.beta_plus * rule.integrate([&](const Vec2& p) {
                return basis.minus[i](p).dot(basis.minus[j](p));
            });
            CHECK(m_loc(i, j) == doctest::Approx(exact).epsilon(1e-12));
        }
    CHECK((m_loc - m_loc.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("matched coefficients: all schemes assemble the same K and M") {
    MeshTopology mesh = build_uniform_triangulation(8);
    LevelSetInterface iface = mid_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff{0.7, 0.7, 2.0, 2.0};
    auto bases = build_all_bases(cls, coeff);
    AssembledSystem pg = assemble(mesh, cls, bases, coeff, Scheme::PG, nullptr, iface);
    AssembledSystem cg = assemble(mesh, cls, bases, coeff, Scheme::C, nullptr, iface);
    double scale = std::max(max_abs(pg.K), max_abs(pg.M));
    CHECK(max_abs(pg.K - cg.K) / scale < 1e-12);
    CHECK(max_abs(pg.M - cg.M) / scale < 1e-12);
    // ... and equal the interface-free standard Nedelec system
    LevelSetInterface none = far_circle();
    Classification cls0 = classify_elements(mesh, none);
    auto bases0 = build_all_bases(cls0, coeff);
    AssembledSystem std_sys = assemble(mesh, cls0, bases0, coeff, Scheme::C, nullptr, none);
    CHECK(max_abs(pg.K - std_sys.K) / scale < 1e-12);
    CHECK(max_abs(pg.M - std_sys.M) / scale < 1e-12);
    CHECK(max_abs(pg.P) == 0.0);
}

TEST_CASE("curl stiffness is scheme independent even with jumps") {
    MeshTopology mesh = build_uniform_triangulation(8);
    LevelSetInterface iface = mid_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff{1.0, 0.1, 1.0, 100.0};
    auto bases = build_all_bases(cls, coeff);
    AssembledSystem pg = assemble(mesh, cls, bases, coeff, Scheme::PG, nullptr, iface);
    AssembledSystem cg = assemble(mesh, cls, bases, coeff, Scheme::C, nullptr, iface);
    CHECK(max_abs(pg.K - cg.K) / max_abs(pg.K) < 1e-12);
    // the Petrov-Galerkin mass block is genuinely nonsymmetric with a beta jump
    Eigen::SparseMatrix<double> mt = Eigen::SparseMatrix<double>(pg.M.transpose());
    CHECK(max_abs(pg.M - mt) / max_abs(pg.M) > 1e-6);
    // the plain immersed Galerkin one is symmetric
    Eigen::SparseMatrix<double> ct = Eigen::SparseMatrix<double>(cg.M.transpose());
    CHECK(max_abs(cg.M - ct) / max_abs(cg.M) < 1e-12);
}

TEST_CASE("penalty terms appear only for the penalized scheme") {
    MeshTopology mesh = build_uniform_triangulation(8);
    LevelSetInterface iface = mid_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff{1.0, 0.1, 1.0, 10.0};
    auto bases = build_all_bases(cls, coeff);
    AssembledSystem pp = assemble(mesh, cls, bases, coeff, Scheme::PP, nullptr, iface);
    AssembledSystem cg = assemble(mesh, cls, bases, coeff, Scheme::C, nullptr, iface);
    CHECK(max_abs(pp.P) > 0.0);
    CHECK(max_abs(cg.P) == 0.0);
    CHECK(max_abs(pp.K - cg.K) == 0.0);
    CHECK(max_abs(pp.M - cg.M) == 0.0);
}

TEST_CASE("assembly is deterministic") {
    MeshTopology mesh = build_uniform_triangulation(8);
    LevelSetInterface iface = mid_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff{1.0, 0.01, 1.0, 100.0};
    auto bases = build_all_bases(cls, coeff);
    SourceFn f = [](const Vec2& p, int) { return Vec2(p.y(), -p.x()); };
    AssembledSystem a = assemble(mesh, cls, bases, coeff, Scheme::PP, f, iface);
    AssembledSystem b = assemble(mesh, cls, bases, coeff, Scheme::PP, f, iface);
    CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);
    CHECK((a.b - b.b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Dirichlet rows carry the boundary edge integrals") {
    MeshTopology mesh = build_uniform_triangulation(4);
    LevelSetInterface iface = far_circle();
    Classification cls = classify_elements(mesh, iface);
    CoefficientPair coeff;
    auto bases = build_all_bases(cls, coeff);
    AssembledSystem sys = assemble(mesh, cls, bases, coeff, Scheme::C, nullptr, iface);
    NDPolynomial u{{0.3, -0.8}, 0.6};
    LinearSystem lin =
        apply_dirichlet(sys, mesh, [&](const Vec2& p) { return u(p); });
    Eigen::MatrixXd dense = Eigen::MatrixXd(lin.A);
    for (int ge = 0; ge < mesh.num_edges(); ++ge) {
        if (!mesh.boundary_edge[ge]) continue;
        for (int j = 0; j < lin.n(); ++j)
            CHECK(dense(ge, j) == doctest::Approx(ge == j ? 1.0 : 0.0));
        double expected =
            edge_dof(u, mesh.nodes[mesh.edges[ge][0]], mesh.nodes[mesh.edges[ge][1]]);
        CHECK(lin.b(ge) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("element_field reconstructs the local expansion with edge signs") {
    MeshTopology mesh = build_uniform_triangulation(6);
    LevelSetInterface iface = far_circle();
    Classification cls = classify_elements(mesh, iface);
    auto bases = build_all_bases(cls, CoefficientPair{});
    // DOFs of a global edge-element field: its tangential edge integrals
    NDPolynomial u{{1.1, 0.4}, -0.7};
    Eigen::VectorXd dofs(mesh.num_edges());
    for (int ge = 0; ge < mesh.num_edges(); ++ge)
        dofs(ge) = edge_dof(u, mesh.nodes[mesh.edges[ge][0]], mesh.nodes[mesh.edges[ge][1]]);
    for (int elem : {0, 5, 17}) {
        NDPolynomial v = element_field(mesh, cls, bases, dofs, elem, -1);
        CHECK((v.a - u.a).norm() < 1e-12);
        CHECK(v.b == doctest::Approx(u.b).epsilon(1e-12));
    }
}
