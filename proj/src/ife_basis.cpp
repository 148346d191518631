#include "hcife/ife_basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace hcife {

NDPolynomial ct_apply(const CutConfiguration& cut, const NDPolynomial& v,
                      const CoefficientPair& coeff) {
    const double b1 = 0.5 * (1.0 - coeff.mu_plus / coeff.mu_minus) * v.curl();
    const double b2 = (coeff.beta_minus / coeff.beta_plus - 1.0) * v(cut.Xm).dot(cut.normal) -
                      0.5 * b1 * cut.chord_length();
    const Vec2& d = cut.chord_start;
    NDPolynomial w;
    w.a = v.a + b1 * Vec2(-d.y(), d.x()) + b2 * cut.normal;
    w.b = v.b + b1;
    return w;
}

NDPolynomial ct_inverse(const CutConfiguration& cut, const NDPolynomial& w,
                        const CoefficientPair& coeff) {
    const double b1 = 0.5 * (coeff.mu_minus / coeff.mu_plus - 1.0) * w.curl();
    const double b2 = (1.0 - coeff.beta_plus / coeff.beta_minus) * w(cut.Xm).dot(cut.normal) -
                      0.5 * b1 * cut.chord_length();
    const Vec2& d = cut.chord_start;
    NDPolynomial v;
    v.a = w.a - b1 * Vec2(-d.y(), d.x()) - b2 * cut.normal;
    v.b = w.b - b1;
    return v;
}

double split_edge_dof(const CutConfiguration& cut, const NDPolynomial& vminus,
                      const NDPolynomial& vplus, const Vec2& p0, const Vec2& p1) {
    const double len2 = (p1 - p0).squaredNorm();
    double ts[4] = {0.0, 1.0};
    int nt = 2;
    for (const Vec2& pt : {cut.D, cut.E}) {
        const double t = (pt - p0).dot(p1 - p0) / len2;
        if (t <= 1e-12 || t >= 1.0 - 1e-12) continue;
        Vec2 proj = p0 + t * (p1 - p0);
        if ((pt - proj).squaredNorm() < 1e-20 * len2) ts[nt++] = t;
    }
    std::sort(ts, ts + nt);

    double dof = 0.0;
    for (int i = 0; i + 1 < nt; ++i) {
        Vec2 a = p0 + ts[i] * (p1 - p0);
        Vec2 b = p0 + ts[i + 1] * (p1 - p0);
        const NDPolynomial& piece =
            (cut.chord_side(0.5 * (a + b)) < 0) ? vminus : vplus;
        dof += edge_dof(piece, a, b);
    }
    return dof;
}

namespace {

// Local vertex coordinates in mesh-local index order, reconstructed from the
// apex frame of the cut.
std::array<Vec2, 3> local_vertices(const CutConfiguration& cut) {
    auto far_of = [&](int local_edge) {
        int va = (local_edge + 1) % 3, vb = (local_edge + 2) % 3;
        return (va == cut.apex_local) ? vb : va;
    };
    std::array<Vec2, 3> verts;
    verts[cut.apex_local] = cut.A1;
    verts[far_of(cut.cut_edge_d)] = cut.A2;
    verts[far_of(cut.cut_edge_e)] = cut.A3;
    return verts;
}

void check_conditioning(const Eigen::MatrixXd& a, const Eigen::MatrixXd& ainv,
                        const char* where) {
    const double cond = a.cwiseAbs().rowwise().sum().maxCoeff() *
                        ainv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > 1e12)
        throw SingularSystem(std::string(where) + ": DOF matrix numerically singular");
}

}  // namespace

LocalEdgeBasis build_local_basis(const CutConfiguration& cut, const CoefficientPair& coeff) {
    auto verts = local_vertices(cut);

    // Unit coefficient directions of the minus piece and their extensions.
    const NDPolynomial units[3] = {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}, {{0.0, 0.0}, 1.0}};
    NDPolynomial ext[3];
    for (int k = 0; k < 3; ++k) ext[k] = ct_apply(cut, units[k], coeff);

    Eigen::Matrix3d dofmat;
    for (int j = 0; j < 3; ++j) {
        const Vec2& p0 = verts[(j + 1) % 3];
        const Vec2& p1 = verts[(j + 2) % 3];
        for (int k = 0; k < 3; ++k)
            dofmat(j, k) = split_edge_dof(cut, units[k], ext[k], p0, p1);
    }
    Eigen::Matrix3d coeffs = dofmat.partialPivLu().solve(Eigen::Matrix3d::Identity());
    check_conditioning(dofmat, coeffs, "build_local_basis");

    LocalEdgeBasis basis;
    basis.cut = cut;
    basis.coeff = coeff;
    for (int i = 0; i < 3; ++i) {
        basis.minus[i] = {Vec2(coeffs(0, i), coeffs(1, i)), coeffs(2, i)};
        basis.plus[i] = ct_apply(cut, basis.minus[i], coeff);
    }
    return basis;
}

std::pair<double, double> unisolvence_margin(const CutConfiguration& cut,
                                             const CoefficientPair& coeff) {
    const int apex_side = cut.apex_is_minus ? -1 : 1;
    const double mu_apex = coeff.mu(apex_side), mu_far = coeff.mu(-apex_side);
    const double beta_apex = coeff.beta(apex_side), beta_far = coeff.beta(-apex_side);

    const double kappa = 1.0 - mu_apex / mu_far;
    const double lambda = 1.0 - beta_far / beta_apex;
    const double de = cut.d * cut.e;

    Mat2 bt;
    bt.col(0) = cut.A2 - cut.A1;
    bt.col(1) = cut.A3 - cut.A1;
    Vec2 n_away = cut.apex_is_minus ? cut.normal : Vec2(-cut.normal);
    Vec2 nhat = bt.inverse() * n_away;

    const double la = 1.0 - de * kappa;
    const double lb =
        1.0 - de * (nhat.x() + nhat.y()) * lambda / (cut.e * nhat.x() + cut.d * nhat.y());
    return {la, lb};
}

LocalNodalIFEBasis h1_local_basis(const CutConfiguration& cut, const CoefficientPair& coeff) {
    auto verts = local_vertices(cut);
    const int apex_side = cut.apex_is_minus ? -1 : 1;

    // Unknowns per basis function: (c-, g-, c+, g+).
    Eigen::Matrix<double, 6, 6> a = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 3> rhs = Eigen::Matrix<double, 6, 3>::Zero();
    for (int k = 0; k < 3; ++k) {
        const int side = (k == cut.apex_local) ? apex_side : -apex_side;
        const int off = (side < 0) ? 0 : 3;
        a(k, off) = 1.0;
        a(k, off + 1) = verts[k].x();
        a(k, off + 2) = verts[k].y();
        rhs(k, k) = 1.0;
    }
    for (int r = 0; r < 2; ++r) {  // continuity at D and E
        const Vec2& p = (r == 0) ? cut.D : cut.E;
        a(3 + r, 0) = 1.0;
        a(3 + r, 1) = p.x();
        a(3 + r, 2) = p.y();
        a(3 + r, 3) = -1.0;
        a(3 + r, 4) = -p.x();
        a(3 + r, 5) = -p.y();
    }
    a(5, 1) = coeff.beta_minus * cut.normal.x();  // flux continuity across the chord
    a(5, 2) = coeff.beta_minus * cut.normal.y();
    a(5, 4) = -coeff.beta_plus * cut.normal.x();
    a(5, 5) = -coeff.beta_plus * cut.normal.y();

    Eigen::Matrix<double, 6, 3> x = a.partialPivLu().solve(rhs);
    check_conditioning(a, a.partialPivLu().solve(Eigen::Matrix<double, 6, 6>::Identity()),
                       "h1_local_basis");

    LocalNodalIFEBasis basis;
    basis.cut = cut;
    basis.coeff = coeff;
    for (int i = 0; i < 3; ++i) {
        basis.minus[i] = {x(0, i), Vec2(x(1, i), x(2, i))};
        basis.plus[i] = {x(3, i), Vec2(x(4, i), x(5, i))};
    }
    return basis;
}

double exact_sequence_residual(const CutConfiguration& cut, const CoefficientPair& coeff) {
    auto edge_basis = build_local_basis(cut, coeff);
    auto nodal = h1_local_basis(cut, coeff);

    // Sample both subelements and express each nodal gradient in the edge span.
    std::vector<Vec2> pts[2];
    for (int s = 0; s < 2; ++s) {
        const int side = s == 0 ? -1 : 1;
        pts[s] = straight_subdomain_rule(3, cut, side).points;
    }
    const int nrows = 2 * static_cast<int>(pts[0].size() + pts[1].size());
    Eigen::MatrixXd a(nrows, 3);
    int row = 0;
    for (int s = 0; s < 2; ++s) {
        const int side = s == 0 ? -1 : 1;
        for (const Vec2& p : pts[s]) {
            for (int j = 0; j < 3; ++j) {
                Vec2 val = edge_basis.piece(j, side)(p);
                a(row, j) = val.x();
                a(row + 1, j) = val.y();
            }
            row += 2;
        }
    }

    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd b(nrows);
        row = 0;
        for (int s = 0; s < 2; ++s) {
            const int side = s == 0 ? -1 : 1;
            Vec2 g = nodal.grad(i, side);
            for (size_t k = 0; k < pts[s].size(); ++k) {
                b(row) = g.x();
                b(row + 1) = g.y();
                row += 2;
            }
        }
        Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
        const double nb = b.norm();
        if (nb > 0.0) worst = std::max(worst, (a * x - b).norm() / nb);
    }
    return worst;
}

std::pair<double, double> infsup_case1_eigs(double d, double e) {
    const double s2 = 2.0 * (d * d + e * e);
    const double root = std::sqrt(s2);
    return {d * e * (d + e - root) / s2, d * e * (d + e + root) / s2};
}

InfSupDiagnostics local_infsup_eigs(const CutConfiguration& cut, const CoefficientPair& coeff) {
    InfSupDiagnostics diag;
    std::tie(diag.lambda1, diag.lambda2) = infsup_case1_eigs(cut.d, cut.e);

    auto basis = build_local_basis(cut, coeff);
    auto verts = local_vertices(cut);
    const double rho = coeff.beta_minus / coeff.beta_plus;

    // Sweep unit piecewise-constant curl-free fields (tangential component
    // continuous across the chord, normal component scaled by the beta ratio)
    // and record the worst alignment of the interpolant with the minus value.
    double min_inner = std::numeric_limits<double>::infinity();
    const int nsweep = 720;
    for (int k = 0; k < nsweep; ++k) {
        const double th = 2.0 * M_PI * k / nsweep;
        NDPolynomial um{{std::cos(th), std::sin(th)}, 0.0};
        NDPolynomial up{um.a + (rho - 1.0) * um.a.dot(cut.normal) * cut.normal, 0.0};
        NDPolynomial interp_minus;
        for (int j = 0; j < 3; ++j) {
            const Vec2& p0 = verts[(j + 1) % 3];
            const Vec2& p1 = verts[(j + 2) % 3];
            interp_minus = interp_minus + split_edge_dof(cut, um, up, p0, p1) * basis.minus[j];
        }
        min_inner = std::min(min_inner, um.a.dot(interp_minus(cut.Xm)));
    }
    diag.min_inner = min_inner;
    return diag;
}

}  // namespace hcife
