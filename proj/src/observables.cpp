// observables.cpp: Photon and collective-dipole transition tables

#include "htc/observables.hpp"

#include <cmath>
#include <vector>

#include "htc/error.hpp"

namespace htc {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::SparseMatrix<double> from_triplets(const Triplets& t, std::size_t rows, std::size_t cols)
{
    Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void require_manifolds(const BasisCatalog& excited, const BasisCatalog& ground)
{
    if (excited.manifold() != Manifold::one_excitation || ground.manifold() != Manifold::ground) {
        throw ParamError("transition operators need a one-excitation and a ground catalog");
    }
    if (excited.n_molecules() != ground.n_molecules()) {
        throw ParamError("excited and ground catalogs describe different n_molecules");
    }
}

// Contiguous runs of values whose neighbours differ by at most tol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& v, double tol)
{
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= v.size(); ++k) {
        if (k == v.size() || v(k) - v(k - 1) > tol) {
            out.emplace_back(start, k - start);
            start = k;
        }
    }
    return out;
}

// Rotates the columns of `block` by the eigenvectors of `m` (symmetric, block.cols() square)
// and returns the ascending eigenvalues of m.
Eigen::VectorXd rotate_into_eigenbasis(Eigen::Ref<Eigen::MatrixXd> block, const Eigen::MatrixXd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("canonicalize_degenerate: cluster diagonalization failed");
    }
    block = block * solver.eigenvectors();
    return solver.eigenvalues();
}

} // namespace

Eigen::SparseMatrix<double> annihilation_operator(const BasisCatalog& excited, const BasisCatalog& ground)
{
    require_manifolds(excited, ground);
    Triplets t;
    for (std::size_t c = 0; c < excited.size(); ++c) {
        if (const auto partner = leakage_partner(excited[c])) {
            if (const auto r = ground.find(*partner)) {
                t.emplace_back(static_cast<int>(*r), static_cast<int>(c), 1.0);
            }
        }
    }
    return from_triplets(t, ground.size(), excited.size());
}

Eigen::SparseMatrix<double> collective_dipole_operator(const BasisCatalog& excited, const BasisCatalog& ground)
{
    require_manifolds(excited, ground);
    const double norm = 1.0 / std::sqrt(static_cast<double>(excited.n_molecules()));
    Triplets t;
    for (std::size_t c = 0; c < excited.size(); ++c) {
        const BasisState& s = excited[c];
        if (!s.excited_site) {
            continue;
        }
        if (const auto r = ground.find(BasisState{std::nullopt, 0, s.vib})) {
            t.emplace_back(static_cast<int>(*r), static_cast<int>(c), norm);
        }
    }
    return from_triplets(t, ground.size(), excited.size());
}

Eigen::MatrixXd contract(const Eigen::SparseMatrix<double>& op, const EigenSystem& excited,
                         const EigenSystem& ground)
{
    const Eigen::MatrixXd image = op * excited.vectors;
    return ground.vectors.transpose() * image;
}

Eigen::VectorXd decay_rates(const Eigen::MatrixXd& a, const Eigen::MatrixXd& jm, const ModelParams& p)
{
    const double n_gamma0 = p.n_molecules * p.gamma0;
    return p.kappa * a.cwiseAbs2().colwise().sum().transpose()
         + n_gamma0 * jm.cwiseAbs2().colwise().sum().transpose();
}

Eigen::VectorXd photon_weights(const BasisCatalog& excited, const EigenSystem& es)
{
    Eigen::VectorXd w = Eigen::VectorXd::Zero(es.size());
    for (std::size_t r = 0; r < excited.size(); ++r) {
        if (excited[r].photon == 1) {
            w += es.vectors.row(static_cast<Eigen::Index>(r)).cwiseAbs2().transpose();
        }
    }
    return w;
}

double TransitionTable::leakage_shortfall() const
{
    if (a_elements.cols() == 0) {
        return 0.0;
    }
    const Eigen::VectorXd captured = a_elements.cwiseAbs2().colwise().sum().transpose();
    return (photon_weight - captured).maxCoeff();
}

void canonicalize_degenerate(EigenSystem& excited, const Eigen::SparseMatrix<double>& a_op,
                             const Eigen::SparseMatrix<double>& jm_op, const EigenSystem& /*ground*/,
                             const ModelParams& p, double tol)
{
    const double n_gamma0 = p.n_molecules * p.gamma0;
    for (const auto& [start, len] : clusters(excited.values, tol)) {
        if (len < 2) {
            continue;
        }
        auto block = excited.vectors.middleCols(start, len);
        // The ground eigenvectors are a complete orthonormal set on the ground catalog,
        // so Gram matrices may be formed in configuration space.
        Eigen::MatrixXd a = a_op * block;
        Eigen::MatrixXd jm = jm_op * block;
        const Eigen::MatrixXd decay = p.kappa * a.transpose() * a + n_gamma0 * jm.transpose() * jm;
        const Eigen::VectorXd rates = rotate_into_eigenbasis(block, decay);

        const double rate_tol = 1e-9 * (1.0 + rates.cwiseAbs().maxCoeff());
        for (const auto& [s2, l2] : clusters(rates, rate_tol)) {
            if (l2 < 2) {
                continue;
            }
            auto sub = block.middleCols(s2, l2);
            jm = jm_op * sub;
            rotate_into_eigenbasis(sub, jm.transpose() * jm);
        }
    }
    fix_gauge(excited.vectors);
}

TransitionTable build_transitions(const BasisCatalog& excited_catalog, EigenSystem& excited,
                                  const BasisCatalog& ground_catalog, const EigenSystem& ground,
                                  const ModelParams& p)
{
    if (excited.basis_id != 0 && excited.basis_id != excited_catalog.id()) {
        throw ParamError("build_transitions: excited eigen-system belongs to another catalog");
    }
    if (ground.basis_id != 0 && ground.basis_id != ground_catalog.id()) {
        throw ParamError("build_transitions: ground eigen-system belongs to another catalog");
    }
    const auto a_op = annihilation_operator(excited_catalog, ground_catalog);
    const auto jm_op = collective_dipole_operator(excited_catalog, ground_catalog);
    canonicalize_degenerate(excited, a_op, jm_op, ground, p);

    TransitionTable t;
    t.a_elements = contract(a_op, excited, ground);
    t.jm_elements = contract(jm_op, excited, ground);
    t.f_strength = t.jm_elements.cwiseAbs2().colwise().sum().transpose();
    t.gamma = decay_rates(t.a_elements, t.jm_elements, p);
    t.photon_weight = photon_weights(excited_catalog, excited);
    t.excited_energies = excited.values;
    t.ground_energies = ground.values;
    t.ground_quanta.resize(ground.size());
    for (Eigen::Index i = 0; i < ground.size(); ++i) {
        t.ground_quanta(i) = static_cast<int>(std::lround(ground.values(i) / p.vib_freq));
    }
    t.kappa = p.kappa;
    t.vib_freq = p.vib_freq;
    return t;
}

} // namespace htc
