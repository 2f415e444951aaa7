// eigensolver.cpp: Dense symmetric eigensolver wrapper

#include "htc/eigensolver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "htc/error.hpp"

namespace htc {

namespace {

constexpr double kGaugeTie = 1e-10;

Eigen::Index gauge_pivot(const Eigen::Ref<const Eigen::VectorXd>& v)
{
    const double top = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) >= top - kGaugeTie) {
            return k;
        }
    }
    return 0;
}

} // namespace

void fix_gauge(Eigen::MatrixXd& vectors)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        if (vectors.rows() == 0) {
            break;
        }
        if (vectors(gauge_pivot(vectors.col(j)), j) < 0.0) {
            vectors.col(j) *= -1.0;
        }
    }
}

EigenSystem eigh(const Eigen::MatrixXd& m, std::uint64_t basis_id)
{
    if (m.rows() != m.cols()) {
        throw NumericalError("eigh: matrix is not square");
    }
    if (!m.allFinite()) {
        throw NumericalError("eigh: matrix has non-finite entries");
    }
    EigenSystem es;
    es.basis_id = basis_id;
    if (m.rows() == 0) {
        return es;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eigh: QR iteration did not converge (dimension " << m.rows()
           << ", max iterations " << Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations
           << " per eigenvalue)";
        throw NumericalError(os.str());
    }
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    fix_gauge(es.vectors);
    return es;
}

EigenSystem eigh(const SymmetricMatrix& m, std::uint64_t basis_id)
{
    return eigh(m.dense(), basis_id);
}

EigenSystem diagonal_eigensystem(const Eigen::VectorXd& energies, std::uint64_t basis_id)
{
    const auto n = energies.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return energies(a) < energies(b); });
    EigenSystem es;
    es.basis_id = basis_id;
    es.values.resize(n);
    es.vectors = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        es.values(j) = energies(order[static_cast<std::size_t>(j)]);
        es.vectors(order[static_cast<std::size_t>(j)], j) = 1.0;
    }
    return es;
}

DecompositionCheck check_decomposition(const Eigen::MatrixXd& h, const EigenSystem& es)
{
    DecompositionCheck c;
    const auto n = es.values.size();
    if (n == 0) {
        return c;
    }
    c.orthonormality = (es.vectors.transpose() * es.vectors - Eigen::MatrixXd::Identity(n, n))
                           .cwiseAbs()
                           .maxCoeff();
    c.residual = (h * es.vectors - es.vectors * es.values.asDiagonal()).cwiseAbs().maxCoeff();
    c.scale = h.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 1; j < n; ++j) {
        c.sorted = c.sorted && es.values(j - 1) <= es.values(j);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        c.gauge = c.gauge && es.vectors(gauge_pivot(es.vectors.col(j)), j) > 0.0;
    }
    return c;
}

} // namespace htc
