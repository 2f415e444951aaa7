// eigensolver.hpp: Full symmetric eigendecomposition with deterministic ordering and gauge

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "htc/hamiltonian.hpp"

namespace htc {

/// Ascending eigenvalues with orthonormal eigenvectors as columns. Each column's
/// first component of (numerically) largest magnitude is positive.
struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    std::uint64_t basis_id{0};

    Eigen::Index size() const { return values.size(); }
};

EigenSystem eigh(const Eigen::MatrixXd& m, std::uint64_t basis_id = 0);
EigenSystem eigh(const SymmetricMatrix& m, std::uint64_t basis_id = 0);

/// Eigen-system of a diagonal ground-manifold Hamiltonian: configurations sorted by
/// energy (stable with respect to catalog order), unit eigenvectors.
EigenSystem diagonal_eigensystem(const Eigen::VectorXd& energies, std::uint64_t basis_id = 0);

/// Flips column signs so that the first component of largest magnitude is positive.
void fix_gauge(Eigen::MatrixXd& vectors);

struct DecompositionCheck {
    double orthonormality{0.0};  // max |V^T V - I|
    double residual{0.0};        // max |H V - V diag(values)|
    double scale{0.0};           // max |H|
    bool sorted{true};
    bool gauge{true};
};

DecompositionCheck check_decomposition(const Eigen::MatrixXd& h, const EigenSystem& es);

} // namespace htc
