#include "hcife/mesh.hpp"

#include <map>
#include <ostream>
#include <stdexcept>

namespace hcife {

MeshTopology build_uniform_triangulation(int n, const Rect& bounds) {
    if (n < 1) throw std::invalid_argument("build_uniform_triangulation: n must be >= 1");
    if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin))
        throw std::invalid_argument("build_uniform_triangulation: degenerate bounds");

    MeshTopology mesh;
    const double dx = (bounds.xmax - bounds.xmin) / n;
    const double dy = (bounds.ymax - bounds.ymin) / n;

    mesh.nodes.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.nodes.emplace_back(bounds.xmin + i * dx, bounds.ymin + j * dy);

    auto nid = [n](int i, int j) { return j * (n + 1) + i; };

    // Each square is split along the lower-left to upper-right diagonal.
    mesh.elements.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int v00 = nid(i, j), v10 = nid(i + 1, j);
            int v11 = nid(i + 1, j + 1), v01 = nid(i, j + 1);
            mesh.elements.push_back({v00, v10, v11});  // lower-right triangle
            mesh.elements.push_back({v00, v11, v01});  // upper-left triangle
        }
    }

    // Global edges keyed by sorted node pair.
    std::map<std::pair<int, int>, int> edge_id;
    mesh.element_edges.resize(mesh.elements.size());
    mesh.element_signs.resize(mesh.elements.size());
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& tri = mesh.elements[e];
        for (int k = 0; k < 3; ++k) {
            int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
            auto key = std::minmax(a, b);
            auto [it, inserted] = edge_id.try_emplace({key.first, key.second},
                                                      static_cast<int>(mesh.edges.size()));
            if (inserted) {
                mesh.edges.push_back({key.first, key.second});
                mesh.edge_elements.push_back({-1, -1});
            }
            int id = it->second;
            mesh.element_edges[e][k] = id;
            mesh.element_signs[e][k] = (mesh.edges[id][0] == a) ? 1 : -1;
            auto& adj = mesh.edge_elements[id];
            (adj[0] < 0 ? adj[0] : adj[1]) = static_cast<int>(e);
        }
    }

    mesh.boundary_edge.resize(mesh.edges.size());
    for (size_t i = 0; i < mesh.edges.size(); ++i)
        mesh.boundary_edge[i] = (mesh.edge_elements[i][1] < 0);

    mesh.h = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        auto v = mesh.element_vertices(e);
        for (int k = 0; k < 3; ++k)
            mesh.h = std::max(mesh.h, (v[(k + 1) % 3] - v[k]).norm());
    }
    return mesh;
}

int element_edge_sign(const MeshTopology& mesh, int elem, int local_edge) {
    if (elem < 0 || elem >= mesh.num_elements() || local_edge < 0 || local_edge > 2)
        throw std::out_of_range("element_edge_sign: index out of range");
    return mesh.element_signs[elem][local_edge];
}

void dump_mesh(const MeshTopology& mesh, std::ostream& os) {
    os << "nodes " << mesh.num_nodes() << "\n";
    for (int i = 0; i < mesh.num_nodes(); ++i)
        os << i << " " << mesh.nodes[i].x() << " " << mesh.nodes[i].y() << "\n";
    os << "elements " << mesh.num_elements() << "\n";
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& t = mesh.elements[e];
        os << e << " " << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
    os << "edges " << mesh.num_edges() << "\n";
    for (int i = 0; i < mesh.num_edges(); ++i)
        os << i << " " << mesh.edges[i][0] << " " << mesh.edges[i][1]
           << (mesh.boundary_edge[i] ? " boundary" : "") << "\n";
}

}  // namespace hcife
