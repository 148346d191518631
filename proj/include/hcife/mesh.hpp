#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

namespace hcife {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Axis-aligned rectangle [xmin,xmax] x [ymin,ymax].
struct Rect {
    double xmin = -1.0, xmax = 1.0;
    double ymin = -1.0, ymax = 1.0;
};

/// Structured triangulation with globally oriented edges.
///
/// Element-local conventions: vertices are counter-clockwise, local edge i
/// connects vertex (i+1)%3 to vertex (i+2)%3 (so edge i is opposite vertex i)
/// and its local tangent runs counter-clockwise around the element. Global
/// edge tangents run from the lower to the higher node index; the per-element
/// sign relates the two orientations.
struct MeshTopology {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> elements;       // CCW node triples
    std::vector<std::array<int, 2>> edges;          // node pairs, low -> high
    std::vector<std::array<int, 3>> element_edges;  // local edge -> global edge
    std::vector<std::array<int, 3>> element_signs;  // +1 if global tangent == local CCW tangent
    std::vector<std::array<int, 2>> edge_elements;  // adjacent elements, -1 if boundary side
    std::vector<bool> boundary_edge;
    double h = 0.0;  // max element diameter

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    std::array<Vec2, 3> element_vertices(int elem) const {
        const auto& t = elements[elem];
        return {nodes[t[0]], nodes[t[1]], nodes[t[2]]};
    }

    /// Unit tangent of a global edge (low node index -> high node index).
    Vec2 edge_tangent(int edge) const {
        Vec2 t = nodes[edges[edge][1]] - nodes[edges[edge][0]];
        return t.normalized();
    }

    double edge_length(int edge) const {
        return (nodes[edges[edge][1]] - nodes[edges[edge][0]]).norm();
    }

    double element_area(int elem) const {
        auto v = element_vertices(elem);
        return 0.5 * ((v[1] - v[0]).x() * (v[2] - v[0]).y() -
                      (v[1] - v[0]).y() * (v[2] - v[0]).x());
    }
};

/// Build the n x n square grid on `bounds`, each square split along the
/// lower-left to upper-right diagonal. 2n^2 triangles, (n+1)^2 nodes,
/// (n+1)^2 + 2n^2 - 1 edges. All triangles are right triangles.
MeshTopology build_uniform_triangulation(int n, const Rect& bounds = {});

/// Sign s such that s * (global edge tangent) equals the local CCW tangent.
int element_edge_sign(const MeshTopology& mesh, int elem, int local_edge);

/// Plain-text listing of nodes, elements and edges.
void dump_mesh(const MeshTopology& mesh, std::ostream& os);

}  // namespace hcife
