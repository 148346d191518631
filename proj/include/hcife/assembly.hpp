#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "hcife/ife_basis.hpp"

namespace hcife {

/// One degree of freedom per global edge (its mean tangential trace).
struct DofMap {
    int n = 0;
    std::vector<char> boundary;
};

DofMap build_dof_map(const MeshTopology& mesh);

enum class Scheme { PG, PP, C };

/// Piecewise element basis: minus/plus pieces split by the element's chord.
/// Non-interface elements carry the same (Whitney) piece on both sides.
struct ElementBasis {
    std::array<NDPolynomial, 3> minus, plus;

    const NDPolynomial& piece(int i, int side) const { return side < 0 ? minus[i] : plus[i]; }
};

ElementBasis standard_element_basis(const MeshTopology& mesh, int elem);
ElementBasis ife_element_basis(const LocalEdgeBasis& basis);

/// Immersed edge bases for every cut in the classification, in cut order.
std::vector<LocalEdgeBasis> build_all_bases(const Classification& cls,
                                            const CoefficientPair& coeff);

struct AssemblyRules {
    int volume_degree = 4;  // mass/stiffness quadrature
    int rhs_degree = 6;     // load vector quadrature
    int n_sub = 4;          // curved-region refinement for the load vector
    int edge_degree = 4;    // penalty edge quadrature per sub-segment
    double c0 = 10.0;       // penalty strength
    double r = 1.0;         // penalty scaling exponent: c0 max(beta) / h^r
    bool cut_edges_only = false;  // restrict the penalty edge set
};

/// Global matrices kept apart so structural identities can be checked:
/// K = curl-stiffness, M = beta-mass, P = penalty + consistency terms.
struct AssembledSystem {
    int n = 0;
    Eigen::SparseMatrix<double> K, M, P;
    Eigen::VectorXd b;

    Eigen::SparseMatrix<double> matrix() const { return K + M + P; }
};

/// Local 3x3 curl-stiffness and beta-mass for one element, integrating each
/// chord subdomain with its own coefficients (plain coefficients on uncut
/// elements).
void local_matrices(const MeshTopology& mesh, int elem, const Classification& cls,
                    const ElementBasis& trial, const ElementBasis& test,
                    const CoefficientPair& coeff, const AssemblyRules& rules,
                    Eigen::Matrix3d& k_loc, Eigen::Matrix3d& m_loc);

/// Source term, evaluated with the side of the true interface (side = -1 in
/// the minus subdomain).
using SourceFn = std::function<Vec2(const Vec2&, int side)>;

/// Assemble the scheme's global system. PG tests with the standard basis and
/// trials with the immersed one; PP adds consistency and stability terms on
/// interface edges; C is the plain immersed Galerkin scheme. The load vector
/// uses curved subdomain rules on interface elements.
AssembledSystem assemble(const MeshTopology& mesh, const Classification& cls,
                         const std::vector<LocalEdgeBasis>& bases, const CoefficientPair& coeff,
                         Scheme scheme, const SourceFn& f, const LevelSetInterface& iface,
                         const AssemblyRules& rules = {});

/// Penalty and consistency contributions of one interface edge: the 6x6 block
/// coupling the two neighbor elements' local DOFs, rows/cols ordered (elem1
/// local edges, elem2 local edges) in the global edge orientation.
Eigen::Matrix<double, 6, 6> penalty_local(const MeshTopology& mesh, const Classification& cls,
                                          const std::vector<LocalEdgeBasis>& bases,
                                          const CoefficientPair& coeff, int edge,
                                          const AssemblyRules& rules);

struct LinearSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;

    int n() const { return static_cast<int>(b.size()); }
};

/// Row replacement for tangential boundary data: boundary rows become
/// identity rows with rhs = edge integral of the boundary field, and boundary
/// columns are folded into the rhs. Null field means homogeneous data.
LinearSystem apply_dirichlet(const AssembledSystem& sys, const MeshTopology& mesh,
                             const std::function<Vec2(const Vec2&)>& boundary_field,
                             int quad_degree = 8);

/// Trial-space restriction of a DOF vector to one element (given chord side).
NDPolynomial element_field(const MeshTopology& mesh, const Classification& cls,
                           const std::vector<LocalEdgeBasis>& bases, const Eigen::VectorXd& dofs,
                           int elem, int side);

}  // namespace hcife
