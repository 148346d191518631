#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "hcife/mesh.hpp"
#include "hcife/quadrature.hpp"

namespace hcife {

/// Raised when the interface cuts an element in a way the method does not
/// support (more than two cut edges). Signals "refine the mesh".
struct A1Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signed level set: phi < 0 in the minus subdomain, phi > 0 in the plus one.
struct LevelSetInterface {
    std::function<double(const Vec2&)> phi;

    double operator()(const Vec2& p) const { return phi(p); }

    static LevelSetInterface circle(const Vec2& center, double radius) {
        return {[center, radius](const Vec2& p) {
            return (p - center).squaredNorm() - radius * radius;
        }};
    }
};

/// Geometry of one interface element cut by the chord between its two
/// edge-intersection points.
///
/// The apex is the vertex shared by the two cut edges. The local frame
/// (A1, A2, A3) has A1 at the apex and is counter-clockwise; D lies on edge
/// A1A2 at ratio d, E on edge A1A3 at ratio e. The chord tangent/normal pair
/// satisfies normal = R * tangent with R = [0,1;-1,0], and the normal points
/// from the minus to the plus side.
struct CutConfiguration {
    int elem = -1;
    int apex_local = -1;                 // local vertex index of the apex
    int cut_edge_d = -1, cut_edge_e = -1;  // local edge indices carrying D and E
    Vec2 A1, A2, A3;
    Vec2 D, E, Xm;
    double d = 0.0, e = 0.0;
    Vec2 chord_start, chord_end;  // ordered so that R*tangent points minus -> plus
    Vec2 tangent, normal;         // unit vectors
    bool apex_is_minus = false;
    std::vector<Vec2> poly_minus, poly_plus;  // CCW subelement polygons

    double chord_length() const { return (chord_end - chord_start).norm(); }

    /// +1 if p is on the plus side of the chord, -1 otherwise.
    int chord_side(const Vec2& p) const {
        return (p - Xm).dot(normal) >= 0.0 ? 1 : -1;
    }
};

enum class ElementLabel { InteriorMinus, InteriorPlus, Interface };

struct Classification {
    std::vector<ElementLabel> labels;   // per element
    std::vector<int> cut_index;         // element -> index into cuts, or -1
    std::vector<CutConfiguration> cuts;
    std::vector<char> edge_is_cut;      // per global edge
    std::vector<double> edge_cut_ratio; // root of phi along the edge (low->high), or -1

    bool is_interface(int elem) const { return labels[elem] == ElementLabel::Interface; }
    const CutConfiguration& cut(int elem) const { return cuts[cut_index[elem]]; }
};

/// Root of phi along the segment p0 -> p1; requires a strict sign change.
/// Bracketed bisection followed by secant polish.
double edge_intersection(const LevelSetInterface& iface, const Vec2& p0, const Vec2& p1,
                         double tol = 1e-14);

/// Label every element and build cut configurations for interface elements.
/// Intersections within snap_tol (relative to the edge) of a vertex are
/// snapped away and the element is classified by the sign at its centroid.
Classification classify_elements(const MeshTopology& mesh, const LevelSetInterface& iface,
                                 double snap_tol = 1e-8);

/// CCW vertex lists of the two straight-cut subelements (minus, plus).
std::pair<std::vector<Vec2>, std::vector<Vec2>> subelement_polygons(const CutConfiguration& cut);

/// Quadrature over the straight-cut subelement on the given side (+1/-1).
QuadratureRule straight_subdomain_rule(int degree, const CutConfiguration& cut, int side);

/// Quadrature over the true (curved) subdomain of an interface element:
/// the straight-cut polygon corrected by signed sliver quadrilaterals between
/// the chord and n_sub re-intersected points on the interface.
QuadratureRule curved_subdomain_rule(int degree, const CutConfiguration& cut,
                                     const LevelSetInterface& iface, int side, int n_sub);

/// Interface edge set for penalty schemes: edges cut by the interface plus
/// edges shared by two interface elements.
std::vector<int> interface_edges(const MeshTopology& mesh, const Classification& cls);

/// Cut configuration built directly from a CCW triangle, apex vertex and the
/// two edge cut ratios (no level set involved); for synthetic sweeps.
CutConfiguration make_synthetic_cut(const std::array<Vec2, 3>& verts, int apex_local, double d,
                                    double e, bool apex_is_minus);

}  // namespace hcife
