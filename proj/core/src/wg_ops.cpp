#include "wg/wg_ops.hpp"

#include <algorithm>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "wg/errors.hpp"

namespace wg {

Eigen::MatrixXd mass_matrix(const WgSpace& space, std::size_t k)
{
    const auto& basis = space.element_basis(k);
    const auto& rule = space.element_rule(k);
    const auto phi = basis.evaluate(rule.nodes);
    const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
    return phi * w.asDiagonal() * phi.transpose();
}

Eigen::MatrixXd weighted_mass_matrix(const WgSpace& space, std::size_t k, const ScalarField& weight)
{
    const auto& basis = space.element_basis(k);
    const auto& rule = space.element_rule(k);
    const auto phi = basis.evaluate(rule.nodes);
    Eigen::VectorXd w(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q)
        w[static_cast<Eigen::Index>(q)] = rule.weights[q] * weight(rule.nodes[q]);
    return phi * w.asDiagonal() * phi.transpose();
}

Eigen::MatrixXd weak_divergence_load(const WgSpace& space, std::size_t k)
{
    const auto& mesh = space.mesh();
    const auto& basis = space.element_basis(k);
    const auto layout = space.layout(k);
    const auto m = static_cast<Eigen::Index>(layout.interior);
    Eigen::MatrixXd load = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(layout.size));

    const auto& rule = space.element_rule(k);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point& x = rule.nodes[q];
        const Eigen::VectorXd phi = basis.values(x);
        const Eigen::VectorXd bgrad = basis.gradients(x) * space.beta()(x);
        load.leftCols(m).noalias() -= rule.weights[q] * bgrad * phi.transpose();
    }

    const auto nt = static_cast<Eigen::Index>(space.trace_size());
    for (const auto& [e, off] : layout.traces) {
        const auto& f = mesh.interface(e);
        const Point n = f.outward_normal(k);
        const auto eb = space.edge_basis(e);
        const auto& er = space.edge_rule(e);
        for (std::size_t q = 0; q < er.size(); ++q) {
            const Point& x = er.nodes[q];
            const double flux = space.beta()(x).dot(n);
            load.middleCols(static_cast<Eigen::Index>(off), nt).noalias() +=
                (er.weights[q] * flux) * basis.values(x) * eb.values(x).transpose();
        }
    }
    return load;
}

Eigen::MatrixXd weak_divergence_matrix(const WgSpace& space, std::size_t k)
{
    return mass_matrix(space, k).ldlt().solve(weak_divergence_load(space, k));
}

Eigen::VectorXd weak_divergence(const WgSpace& space, std::size_t k, const Eigen::VectorXd& local)
{
    return weak_divergence_matrix(space, k) * local;
}

Eigen::VectorXd project_q0(const WgSpace& space, std::size_t k, const ScalarField& u)
{
    const auto& basis = space.element_basis(k);
    const auto& rule = space.element_rule(k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t q = 0; q < rule.size(); ++q)
        rhs += rule.weights[q] * u(rule.nodes[q]) * basis.values(rule.nodes[q]);
    return mass_matrix(space, k).ldlt().solve(rhs);
}

Eigen::VectorXd project_qb(const WgSpace& space, std::size_t e, const ScalarField& u)
{
    const auto eb = space.edge_basis(e);
    const auto& rule = space.edge_rule(e);
    const auto n = static_cast<Eigen::Index>(eb.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd psi = eb.values(rule.nodes[q]);
        gram.noalias() += rule.weights[q] * psi * psi.transpose();
        rhs += rule.weights[q] * u(rule.nodes[q]) * psi;
    }
    return gram.ldlt().solve(rhs);
}

WeakFunction project_qh(const WgSpace& space, const ScalarField& u)
{
    WeakFunction v = WeakFunction::zero(space);
    for (std::size_t k = 0; k < space.mesh().num_elements(); ++k)
        v.interior[k] = project_q0(space, k, u);
    for (std::size_t e = 0; e < space.mesh().num_interfaces(); ++e)
        if (space.is_live(e))
            v.trace[e] = project_qb(space, e, u);
    return v;
}

std::size_t select_pplus_face(const WgSpace& space, std::size_t k)
{
    const auto& faces = space.classification().element_faces(k);
    auto better = [](const FaceClass& a, const FaceClass& b) {
        if (a.flux_integral != b.flux_integral)
            return a.flux_integral > b.flux_integral;
        return a.interface < b.interface;
    };
    const FaceClass* best = nullptr;
    for (const auto& f : faces) {
        const bool candidate = (f.flow == FlowClass::outflow || f.flow == FlowClass::mixed) && !f.in_eh0;
        if (candidate && (!best || better(f, *best)))
            best = &f;
    }
    if (!best)
        for (const auto& f : faces)
            if (!best || better(f, *best))
                best = &f;
    return best->interface;
}

Eigen::VectorXd project_pplus(const WgSpace& space, std::size_t k, const ScalarField& u,
                              std::optional<std::size_t> face)
{
    const std::size_t e = face ? *face : select_pplus_face(space, k);
    if (!space.mesh().interface(e).borders(k))
        throw std::invalid_argument("project_pplus: interface does not border the element");

    const auto& basis = space.element_basis(k);
    const auto m = static_cast<Eigen::Index>(basis.size());
    const auto lower = static_cast<Eigen::Index>(ElementBasis::dimension(space.degree() - 1));
    const auto nt = static_cast<Eigen::Index>(space.trace_size());

    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);

    // Interior moments against P_{k-1}: the leading basis functions.
    const auto& rule = space.element_rule(k);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd phi = basis.values(rule.nodes[q]);
        sys.topRows(lower).noalias() += rule.weights[q] * phi.head(lower) * phi.transpose();
        rhs.head(lower) += rule.weights[q] * u(rule.nodes[q]) * phi.head(lower);
    }
    // Face moments against P_k(e).
    const auto eb = space.edge_basis(e);
    const auto& er = space.edge_rule(e);
    for (std::size_t q = 0; q < er.size(); ++q) {
        const Eigen::VectorXd psi = eb.values(er.nodes[q]);
        sys.bottomRows(nt).noalias() += er.weights[q] * psi * basis.values(er.nodes[q]).transpose();
        rhs.tail(nt) += er.weights[q] * u(er.nodes[q]) * psi;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (!lu.isInvertible())
        throw SetupError("project_pplus: singular local system on element " + std::to_string(k));
    return lu.solve(rhs);
}

WeakFunction project_qh_plus(const WgSpace& space, const ScalarField& u)
{
    WeakFunction v = project_qh(space, u);
    for (std::size_t k = 0; k < space.mesh().num_elements(); ++k)
        v.interior[k] = project_pplus(space, k, u);
    return v;
}

LocalOperator local_bilinear(const WgSpace& space, std::size_t k, const ScalarField& alpha)
{
    LocalOperator op;
    op.element = k;
    op.layout = space.layout(k);
    const auto n = static_cast<Eigen::Index>(op.layout.size);
    const auto m = static_cast<Eigen::Index>(op.layout.interior);
    const auto nt = static_cast<Eigen::Index>(space.trace_size());
    op.matrix = Eigen::MatrixXd::Zero(n, n);

    // (div_w(beta w), v^0)_K is the weak divergence load itself, since v^0 is
    // one of the test polynomials of the definition.
    op.matrix.topRows(m) = weak_divergence_load(space, k);
    op.matrix.topLeftCorner(m, m) += weighted_mass_matrix(space, k, alpha);

    const auto& mesh = space.mesh();
    const auto& basis = space.element_basis(k);
    for (auto e : mesh.element(k).interface_ids) {
        const auto& f = mesh.interface(e);
        const Point normal = f.outward_normal(k);
        const auto& er = space.edge_rule(e);
        std::optional<Eigen::Index> off;
        for (const auto& [ie, o] : op.layout.traces)
            if (ie == e)
                off = static_cast<Eigen::Index>(o);
        const auto eb = space.edge_basis(e);
        Eigen::VectorXd jump(n);
        for (std::size_t q = 0; q < er.size(); ++q) {
            const Point& x = er.nodes[q];
            const double flux = space.beta()(x).dot(normal);
            if (flux <= 0.0)
                continue;
            jump.setZero();
            jump.head(m) = basis.values(x);
            if (off)
                jump.segment(*off, nt) = -eb.values(x);
            op.matrix.noalias() += (er.weights[q] * flux) * jump * jump.transpose();
        }
    }
    return op;
}

Eigen::VectorXd local_rhs(const WgSpace& space, std::size_t k, const ScalarField& f)
{
    const auto& basis = space.element_basis(k);
    const auto& rule = space.element_rule(k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t q = 0; q < rule.size(); ++q)
        b += rule.weights[q] * f(rule.nodes[q]) * basis.values(rule.nodes[q]);
    return b;
}

} // namespace wg
