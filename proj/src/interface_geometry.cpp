#include "hcife/interface_geometry.hpp"

#include <cmath>

namespace hcife {

double edge_intersection(const LevelSetInterface& iface, const Vec2& p0, const Vec2& p1,
                         double tol) {
    double fa = iface(p0), fb = iface(p1);
    if (!(fa * fb < 0.0))
        throw NoSignChange("edge_intersection: phi does not change sign along the edge");

    auto f = [&](double s) { return iface(p0 + s * (p1 - p0)); };
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 60; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fa * fm <= 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    // Secant polish inside the bracket.
    double s = 0.5 * (a + b);
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int it = 0; it < 30 && std::abs(f1) > tol; ++it) {
        if (f1 == f0) break;
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 > 0.0 && x2 < 1.0)) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
    }
    s = (std::abs(f1) <= std::abs(f0)) ? x1 : x0;
    return s;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Chord frame, orientation and subelement polygons from the apex data.
void finalize_cut(CutConfiguration& cut) {
    cut.d = (cut.D - cut.A1).norm() / (cut.A2 - cut.A1).norm();
    cut.e = (cut.E - cut.A1).norm() / (cut.A3 - cut.A1).norm();
    cut.Xm = 0.5 * (cut.D + cut.E);

    Vec2 t0 = (cut.E - cut.D).normalized();
    Vec2 n0(t0.y(), -t0.x());  // R * t0
    Vec2 n_away = ((cut.Xm - cut.A1).dot(n0) > 0.0) ? n0 : Vec2(-n0);
    cut.normal = cut.apex_is_minus ? n_away : Vec2(-n_away);
    cut.tangent = Vec2(-cut.normal.y(), cut.normal.x());
    if ((cut.E - cut.D).dot(cut.tangent) > 0.0) {
        cut.chord_start = cut.D;
        cut.chord_end = cut.E;
    } else {
        cut.chord_start = cut.E;
        cut.chord_end = cut.D;
    }

    std::vector<Vec2> apex_poly = {cut.A1, cut.D, cut.E};
    std::vector<Vec2> far_poly = {cut.D, cut.A2, cut.A3, cut.E};
    if (cut.apex_is_minus) {
        cut.poly_minus = std::move(apex_poly);
        cut.poly_plus = std::move(far_poly);
    } else {
        cut.poly_minus = std::move(far_poly);
        cut.poly_plus = std::move(apex_poly);
    }
}

CutConfiguration make_cut(const MeshTopology& mesh, const LevelSetInterface& iface, int elem,
                          int edge_a, int edge_b, const Vec2& pt_a, const Vec2& pt_b) {
    CutConfiguration cut;
    cut.elem = elem;
    cut.apex_local = 3 - edge_a - edge_b;
    auto verts = mesh.element_vertices(elem);
    cut.A1 = verts[cut.apex_local];

    // Local edge k is opposite vertex k; the far end of a cut edge is its
    // endpoint that is not the apex.
    auto far_vertex = [&](int local_edge) {
        int va = (local_edge + 1) % 3, vb = (local_edge + 2) % 3;
        return (va == cut.apex_local) ? vb : va;
    };
    int far_a = far_vertex(edge_a), far_b = far_vertex(edge_b);

    // Orient the frame (A1, A2, A3) counter-clockwise.
    if (cross2(verts[far_a] - cut.A1, verts[far_b] - cut.A1) > 0.0) {
        cut.cut_edge_d = edge_a;
        cut.cut_edge_e = edge_b;
        cut.A2 = verts[far_a];
        cut.A3 = verts[far_b];
        cut.D = pt_a;
        cut.E = pt_b;
    } else {
        cut.cut_edge_d = edge_b;
        cut.cut_edge_e = edge_a;
        cut.A2 = verts[far_b];
        cut.A3 = verts[far_a];
        cut.D = pt_b;
        cut.E = pt_a;
    }
    Vec2 apex_centroid = (cut.A1 + cut.D + cut.E) / 3.0;
    cut.apex_is_minus = iface(apex_centroid) < 0.0;
    finalize_cut(cut);
    return cut;
}

}  // namespace

Classification classify_elements(const MeshTopology& mesh, const LevelSetInterface& iface,
                                 double snap_tol) {
    Classification cls;
    cls.labels.resize(mesh.num_elements());
    cls.cut_index.assign(mesh.num_elements(), -1);
    cls.edge_is_cut.assign(mesh.num_edges(), 0);
    cls.edge_cut_ratio.assign(mesh.num_edges(), -1.0);

    std::vector<double> phi(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) phi[i] = iface(mesh.nodes[i]);

    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& tri = mesh.elements[e];
        int cut_edges[3], n_cut = 0;
        Vec2 cut_pts[3];
        for (int k = 0; k < 3; ++k) {
            int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
            if (phi[a] * phi[b] < 0.0) {
                double s = edge_intersection(iface, mesh.nodes[a], mesh.nodes[b]);
                if (s < snap_tol || s > 1.0 - snap_tol) continue;  // snap to vertex
                if (n_cut < 3) {
                    cut_edges[n_cut] = k;
                    cut_pts[n_cut] = mesh.nodes[a] + s * (mesh.nodes[b] - mesh.nodes[a]);
                }
                ++n_cut;
            }
        }
        if (n_cut >= 3)
            throw A1Violation("classify_elements: interface cuts an element on three edges; "
                              "refine the mesh");
        if (n_cut == 2) {
            cls.labels[e] = ElementLabel::Interface;
            cls.cut_index[e] = static_cast<int>(cls.cuts.size());
            cls.cuts.push_back(
                make_cut(mesh, iface, e, cut_edges[0], cut_edges[1], cut_pts[0], cut_pts[1]));
            for (int c = 0; c < 2; ++c) {
                int ge = mesh.element_edges[e][cut_edges[c]];
                if (!cls.edge_is_cut[ge]) {
                    cls.edge_is_cut[ge] = 1;
                    const Vec2& lo = mesh.nodes[mesh.edges[ge][0]];
                    const Vec2& hi = mesh.nodes[mesh.edges[ge][1]];
                    cls.edge_cut_ratio[ge] =
                        (cut_pts[c] - lo).dot(hi - lo) / (hi - lo).squaredNorm();
                }
            }
        } else {
            // 0 cuts, or a snapped single crossing: classify by the centroid.
            Vec2 c = (mesh.nodes[tri[0]] + mesh.nodes[tri[1]] + mesh.nodes[tri[2]]) / 3.0;
            cls.labels[e] =
                iface(c) < 0.0 ? ElementLabel::InteriorMinus : ElementLabel::InteriorPlus;
        }
    }
    return cls;
}

std::pair<std::vector<Vec2>, std::vector<Vec2>> subelement_polygons(const CutConfiguration& cut) {
    return {cut.poly_minus, cut.poly_plus};
}

QuadratureRule straight_subdomain_rule(int degree, const CutConfiguration& cut, int side) {
    const auto& poly = (side < 0) ? cut.poly_minus : cut.poly_plus;
    return polygon_rule(degree, poly);
}

QuadratureRule curved_subdomain_rule(int degree, const CutConfiguration& cut,
                                     const LevelSetInterface& iface, int side, int n_sub) {
    QuadratureRule rule = straight_subdomain_rule(degree, cut, side);
    rule.degree = degree;
    if (n_sub < 1) return rule;

    const double len = cut.chord_length();
    const double reach = std::max(len, 1e-12);

    // Re-intersect the interface along the normal at n_sub+1 chord stations.
    std::vector<Vec2> q(n_sub + 1), p(n_sub + 1);
    for (int j = 0; j <= n_sub; ++j) {
        q[j] = cut.chord_start + (double(j) / n_sub) * (cut.chord_end - cut.chord_start);
        if (j == 0 || j == n_sub) {
            p[j] = q[j];  // chord endpoints lie on the interface
            continue;
        }
        auto g = [&](double s) { return iface(q[j] + s * cut.normal); };
        double lo = -0.75 * reach, hi = 0.75 * reach;
        if (!(g(lo) < 0.0 && g(hi) > 0.0))
            throw A1Violation("curved_subdomain_rule: failed to bracket the interface along "
                              "the chord normal; refine the mesh");
        double s = edge_intersection(iface, q[j] + lo * cut.normal, q[j] + hi * cut.normal);
        p[j] = q[j] + (lo + s * (hi - lo)) * cut.normal;
    }

    // Signed sliver quadrilaterals between chord and interface. Oriented so
    // that regions the curve pushes past the chord are added to the minus
    // side and removed from the plus side (and vice versa).
    for (int j = 0; j < n_sub; ++j) {
        double off = std::max(std::abs((p[j] - q[j]).dot(cut.normal)),
                              std::abs((p[j + 1] - q[j + 1]).dot(cut.normal)));
        if (off < 1e-14 * reach) continue;
        std::array<Vec2, 4> quad = (side < 0)
                                       ? std::array<Vec2, 4>{p[j], p[j + 1], q[j + 1], q[j]}
                                       : std::array<Vec2, 4>{q[j], q[j + 1], p[j + 1], p[j]};
        rule.append(triangle_rule(degree, {quad[0], quad[1], quad[2]}));
        rule.append(triangle_rule(degree, {quad[0], quad[2], quad[3]}));
    }
    return rule;
}

CutConfiguration make_synthetic_cut(const std::array<Vec2, 3>& verts, int apex_local, double d,
                                    double e, bool apex_is_minus) {
    CutConfiguration cut;
    cut.apex_local = apex_local;
    cut.apex_is_minus = apex_is_minus;
    cut.A1 = verts[apex_local];
    cut.A2 = verts[(apex_local + 1) % 3];
    cut.A3 = verts[(apex_local + 2) % 3];
    cut.cut_edge_d = (apex_local + 2) % 3;  // edge A1-A2 is opposite A3
    cut.cut_edge_e = (apex_local + 1) % 3;
    cut.D = cut.A1 + d * (cut.A2 - cut.A1);
    cut.E = cut.A1 + e * (cut.A3 - cut.A1);
    finalize_cut(cut);
    return cut;
}

std::vector<int> interface_edges(const MeshTopology& mesh, const Classification& cls) {
    std::vector<int> out;
    for (int ge = 0; ge < mesh.num_edges(); ++ge) {
        if (mesh.boundary_edge[ge]) continue;
        if (cls.edge_is_cut[ge]) {
            out.push_back(ge);
            continue;
        }
        auto adj = mesh.edge_elements[ge];
        if (cls.is_interface(adj[0]) && cls.is_interface(adj[1])) out.push_back(ge);
    }
    return out;
}

}  // namespace hcife
