#include "hcife/assembly.hpp"

#include <Eigen/Sparse>
#include <cmath>

namespace hcife {

DofMap build_dof_map(const MeshTopology& mesh) {
    DofMap map;
    map.n = mesh.num_edges();
    map.boundary.assign(map.n, 0);
    for (int e = 0; e < map.n; ++e) map.boundary[e] = mesh.boundary_edge[e] ? 1 : 0;
    return map;
}

ElementBasis standard_element_basis(const MeshTopology& mesh, int elem) {
    ElementBasis basis;
    basis.minus = whitney_basis(mesh.element_vertices(elem));
    basis.plus = basis.minus;
    return basis;
}

ElementBasis ife_element_basis(const LocalEdgeBasis& local) {
    return {local.minus, local.plus};
}

std::vector<LocalEdgeBasis> build_all_bases(const Classification& cls,
                                            const CoefficientPair& coeff) {
    std::vector<LocalEdgeBasis> bases;
    bases.reserve(cls.cuts.size());
    for (const auto& cut : cls.cuts) bases.push_back(build_local_basis(cut, coeff));
    return bases;
}

namespace {

int element_side(const Classification& cls, int elem) {
    return cls.labels[elem] == ElementLabel::InteriorMinus ? -1 : 1;
}

}  // namespace

void local_matrices(const MeshTopology& mesh, int elem, const Classification& cls,
                    const ElementBasis& trial, const ElementBasis& test,
                    const CoefficientPair& coeff, const AssemblyRules& rules,
                    Eigen::Matrix3d& k_loc, Eigen::Matrix3d& m_loc) {
    k_loc.setZero();
    m_loc.setZero();
    auto accumulate = [&](int side, const QuadratureRule& rule) {
        const double area = rule.total_weight();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                k_loc(i, j) += trial.piece(j, side).curl() * test.piece(i, side).curl() * area /
                               coeff.mu(side);
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const Vec2& p = rule.points[q];
            const double w = coeff.beta(side) * rule.weights[q];
            Vec2 tr[3], te[3];
            for (int i = 0; i < 3; ++i) {
                tr[i] = trial.piece(i, side)(p);
                te[i] = test.piece(i, side)(p);
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m_loc(i, j) += w * tr[j].dot(te[i]);
        }
    };

    if (cls.is_interface(elem)) {
        const auto& cut = cls.cut(elem);
        for (int side : {-1, 1})
            accumulate(side, straight_subdomain_rule(rules.volume_degree, cut, side));
    } else {
        accumulate(element_side(cls, elem),
                   triangle_rule(rules.volume_degree, mesh.element_vertices(elem)));
    }
}

Eigen::Matrix<double, 6, 6> penalty_local(const MeshTopology& mesh, const Classification& cls,
                                          const std::vector<LocalEdgeBasis>& bases,
                                          const CoefficientPair& coeff, int edge,
                                          const AssemblyRules& rules) {
    Eigen::Matrix<double, 6, 6> p_loc = Eigen::Matrix<double, 6, 6>::Zero();
    const auto adj = mesh.edge_elements[edge];
    const Vec2 lo = mesh.nodes[mesh.edges[edge][0]];
    const Vec2 hi = mesh.nodes[mesh.edges[edge][1]];
    const Vec2 tangent = (hi - lo).normalized();
    const double eta =
        rules.c0 * std::max(coeff.beta_minus, coeff.beta_plus) / std::pow(mesh.h, rules.r);

    // Signed (global-orientation) trace and weighted-curl of local basis i of
    // the element on side s at a point on the edge.
    auto piece_of = [&](int s, int i, const Vec2& p) -> const NDPolynomial& {
        const int elem = adj[s];
        if (cls.is_interface(elem)) {
            const auto& local = bases[cls.cut_index[elem]];
            return local.piece(i, local.cut.chord_side(p));
        }
        static thread_local std::array<NDPolynomial, 3> cache;
        static thread_local int cached_elem = -1;
        if (cached_elem != elem) {
            cache = whitney_basis(mesh.element_vertices(elem));
            cached_elem = elem;
        }
        return cache[i];
    };
    auto mu_at = [&](int s, const Vec2& p) {
        const int elem = adj[s];
        if (cls.is_interface(elem))
            return coeff.mu(bases[cls.cut_index[elem]].cut.chord_side(p));
        return coeff.mu(element_side(cls, elem));
    };

    std::vector<std::pair<Vec2, Vec2>> segments;
    if (cls.edge_is_cut[edge]) {
        Vec2 mid = lo + cls.edge_cut_ratio[edge] * (hi - lo);
        segments = {{lo, mid}, {mid, hi}};
    } else {
        segments = {{lo, hi}};
    }

    for (const auto& [a, b] : segments) {
        QuadratureRule rule = segment_rule(rules.edge_degree, a, b);
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const Vec2& p = rule.points[q];
            const double w = rule.weights[q];
            double trace[2][3], curlmu[2][3];
            for (int s = 0; s < 2; ++s) {
                for (int i = 0; i < 3; ++i) {
                    const double sign = mesh.element_signs[adj[s]][i];
                    const NDPolynomial& piece = piece_of(s, i, p);
                    trace[s][i] = sign * piece(p).dot(tangent);
                    curlmu[s][i] = sign * piece.curl() / mu_at(s, p);
                }
            }
            for (int s = 0; s < 2; ++s) {
                const double eps_s = s == 0 ? 1.0 : -1.0;
                for (int i = 0; i < 3; ++i) {
                    for (int r = 0; r < 2; ++r) {
                        const double eps_r = r == 0 ? 1.0 : -1.0;
                        for (int j = 0; j < 3; ++j) {
                            double val = -0.5 * curlmu[r][j] * eps_s * trace[s][i] -
                                         0.5 * curlmu[s][i] * eps_r * trace[r][j] +
                                         eta * eps_s * trace[s][i] * eps_r * trace[r][j];
                            p_loc(3 * s + i, 3 * r + j) += w * val;
                        }
                    }
                }
            }
        }
    }
    return p_loc;
}

AssembledSystem assemble(const MeshTopology& mesh, const Classification& cls,
                         const std::vector<LocalEdgeBasis>& bases, const CoefficientPair& coeff,
                         Scheme scheme, const SourceFn& f, const LevelSetInterface& iface,
                         const AssemblyRules& rules) {
    AssembledSystem sys;
    sys.n = mesh.num_edges();
    sys.b = Eigen::VectorXd::Zero(sys.n);

    std::vector<Eigen::Triplet<double>> tk, tm, tp;
    tk.reserve(9 * mesh.num_elements());
    tm.reserve(9 * mesh.num_elements());

    Eigen::Matrix3d k_loc, m_loc;
    for (int elem = 0; elem < mesh.num_elements(); ++elem) {
        ElementBasis trial, test;
        if (cls.is_interface(elem)) {
            trial = ife_element_basis(bases[cls.cut_index[elem]]);
            test = (scheme == Scheme::PG) ? standard_element_basis(mesh, elem) : trial;
        } else {
            trial = standard_element_basis(mesh, elem);
            test = trial;
        }
        local_matrices(mesh, elem, cls, trial, test, coeff, rules, k_loc, m_loc);

        Eigen::Vector3d b_loc = Eigen::Vector3d::Zero();
        if (f) {
            if (cls.is_interface(elem)) {
                const auto& cut = cls.cut(elem);
                for (int side : {-1, 1}) {
                    QuadratureRule rule =
                        curved_subdomain_rule(rules.rhs_degree, cut, iface, side, rules.n_sub);
                    for (size_t q = 0; q < rule.points.size(); ++q) {
                        const Vec2& p = rule.points[q];
                        const Vec2 fv = f(p, side);
                        for (int i = 0; i < 3; ++i)
                            b_loc(i) += rule.weights[q] *
                                        fv.dot(test.piece(i, cut.chord_side(p))(p));
                    }
                }
            } else {
                const int side = element_side(cls, elem);
                QuadratureRule rule =
                    triangle_rule(rules.rhs_degree, mesh.element_vertices(elem));
                for (size_t q = 0; q < rule.points.size(); ++q) {
                    const Vec2& p = rule.points[q];
                    const Vec2 fv = f(p, side);
                    for (int i = 0; i < 3; ++i)
                        b_loc(i) += rule.weights[q] * fv.dot(test.piece(i, side)(p));
                }
            }
        }

        for (int i = 0; i < 3; ++i) {
            const int gi = mesh.element_edges[elem][i];
            const double si = mesh.element_signs[elem][i];
            sys.b(gi) += si * b_loc(i);
            for (int j = 0; j < 3; ++j) {
                const int gj = mesh.element_edges[elem][j];
                const double sj = mesh.element_signs[elem][j];
                tk.emplace_back(gi, gj, si * sj * k_loc(i, j));
                tm.emplace_back(gi, gj, si * sj * m_loc(i, j));
            }
        }
    }

    if (scheme == Scheme::PP) {
        for (int edge : interface_edges(mesh, cls)) {
            if (rules.cut_edges_only && !cls.edge_is_cut[edge]) continue;
            auto p_loc = penalty_local(mesh, cls, bases, coeff, edge, rules);
            const auto adj = mesh.edge_elements[edge];
            for (int s = 0; s < 2; ++s)
                for (int i = 0; i < 3; ++i)
                    for (int r = 0; r < 2; ++r)
                        for (int j = 0; j < 3; ++j)
                            tp.emplace_back(mesh.element_edges[adj[s]][i],
                                            mesh.element_edges[adj[r]][j],
                                            p_loc(3 * s + i, 3 * r + j));
        }
    }

    sys.K.resize(sys.n, sys.n);
    sys.M.resize(sys.n, sys.n);
    sys.P.resize(sys.n, sys.n);
    sys.K.setFromTriplets(tk.begin(), tk.end());
    sys.M.setFromTriplets(tm.begin(), tm.end());
    sys.P.setFromTriplets(tp.begin(), tp.end());
    return sys;
}

LinearSystem apply_dirichlet(const AssembledSystem& sys, const MeshTopology& mesh,
                             const std::function<Vec2(const Vec2&)>& boundary_field,
                             int quad_degree) {
    Eigen::SparseMatrix<double> a = sys.matrix();
    const int n = sys.n;

    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    if (boundary_field) {
        for (int e = 0; e < n; ++e) {
            if (!mesh.boundary_edge[e]) continue;
            const Vec2& lo = mesh.nodes[mesh.edges[e][0]];
            const Vec2& hi = mesh.nodes[mesh.edges[e][1]];
            Vec2 t = (hi - lo).normalized();
            g(e) = segment_rule(quad_degree, lo, hi).integrate([&](const Vec2& p) {
                return boundary_field(p).dot(t);
            });
        }
    }

    LinearSystem out;
    out.b = sys.b - a * g;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(a.nonZeros());
    for (int col = 0; col < a.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it) {
            if (mesh.boundary_edge[it.row()] || mesh.boundary_edge[it.col()]) continue;
            trip.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (int e = 0; e < n; ++e) {
        if (!mesh.boundary_edge[e]) continue;
        trip.emplace_back(e, e, 1.0);
        out.b(e) = g(e);
    }
    out.A.resize(n, n);
    out.A.setFromTriplets(trip.begin(), trip.end());
    return out;
}

NDPolynomial element_field(const MeshTopology& mesh, const Classification& cls,
                           const std::vector<LocalEdgeBasis>& bases, const Eigen::VectorXd& dofs,
                           int elem, int side) {
    NDPolynomial out;
    const bool iface_elem = cls.is_interface(elem);
    std::array<NDPolynomial, 3> whitney;
    if (!iface_elem) whitney = whitney_basis(mesh.element_vertices(elem));
    for (int i = 0; i < 3; ++i) {
        const int gi = mesh.element_edges[elem][i];
        const double si = mesh.element_signs[elem][i];
        const NDPolynomial& base =
            iface_elem ? bases[cls.cut_index[elem]].piece(i, side) : whitney[i];
        out = out + (si * dofs(gi)) * base;
    }
    return out;
}

}  // namespace hcife
