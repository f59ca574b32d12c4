#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wg/basis.hpp"
#include "wg/classification.hpp"
#include "wg/fields.hpp"
#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

namespace wg {

/// Local DOF ordering of one element: interior coefficients first, then
/// k+1 trace coefficients per live interface in boundary order.
struct LocalLayout {
    std::size_t interior = 0;
    std::vector<std::pair<std::size_t, std::size_t>> traces; ///< (interface id, offset)
    std::size_t size = 0;
};

/// Discrete weak Galerkin space V_h of degree k on a mesh, for a fixed
/// velocity field. Holds the face classification and per-cell quadrature.
/// The mesh must outlive the space.
class WgSpace {
public:
    /// quad_degree <= 0 selects 2k + 3.
    WgSpace(const PolygonalMesh& mesh, VectorField beta, int degree, int quad_degree = 0);

    const PolygonalMesh& mesh() const { return *mesh_; }
    const VectorField& beta() const { return beta_; }
    int degree() const { return degree_; }
    int quad_degree() const { return quad_degree_; }
    const FaceClassification& classification() const { return classification_; }

    std::size_t interior_size() const { return ElementBasis::dimension(degree_); }
    std::size_t trace_size() const { return static_cast<std::size_t>(degree_ + 1); }

    /// L2(K)-orthonormalized scaled monomials, Gram matrix |K| I.
    const ElementBasis& element_basis(std::size_t k) const { return element_bases_[k]; }
    EdgeBasis edge_basis(std::size_t e) const;

    const QuadratureRule& element_rule(std::size_t k) const { return element_rules_[k]; }
    const QuadratureRule& edge_rule(std::size_t e) const { return edge_rules_[e]; }

    /// False for interfaces on which beta.n vanishes (no trace unknowns).
    bool is_live(std::size_t e) const { return live_[e]; }

    LocalLayout layout(std::size_t k) const;

private:
    const PolygonalMesh* mesh_;
    VectorField beta_;
    int degree_;
    int quad_degree_;
    FaceClassification classification_;
    std::vector<QuadratureRule> element_rules_;
    std::vector<ElementBasis> element_bases_;
    std::vector<QuadratureRule> edge_rules_;
    std::vector<bool> live_;
};

/// v = {v^0, v^b}: interior coefficients per element and one trace
/// coefficient vector per interface (empty on eliminated interfaces).
struct WeakFunction {
    std::vector<Eigen::VectorXd> interior;
    std::vector<Eigen::VectorXd> trace;

    static WeakFunction zero(const WgSpace& space);

    /// Interior followed by live traces, in LocalLayout order.
    Eigen::VectorXd local_vector(const WgSpace& space, std::size_t k) const;

    WeakFunction& operator+=(const WeakFunction& other);
    WeakFunction& operator-=(const WeakFunction& other);
    WeakFunction& operator*=(double s);

    friend WeakFunction operator+(WeakFunction a, const WeakFunction& b) { return a += b; }
    friend WeakFunction operator-(WeakFunction a, const WeakFunction& b) { return a -= b; }
    friend WeakFunction operator*(double s, WeakFunction a) { return a *= s; }
};

/// v^0 on element k at a point.
double evaluate_interior(const WgSpace& space, const WeakFunction& v, std::size_t k, const Point& p);

/// v^b on interface e at a point (0 on eliminated interfaces).
double evaluate_trace(const WgSpace& space, const WeakFunction& v, std::size_t e, const Point& p);

} // namespace wg
