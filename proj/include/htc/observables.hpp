// observables.hpp: Transition matrix elements between manifolds, decay rates and dipole strengths

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/model.hpp"

namespace htc {

/// Ground x excited configuration-space matrix of the photon annihilation operator:
/// each photon state maps to its leakage partner with amplitude 1.
Eigen::SparseMatrix<double> annihilation_operator(const BasisCatalog& excited, const BasisCatalog& ground);

/// Ground x excited configuration-space matrix of J- = N^{-1/2} sum_n |g_n><e_n|
/// (vibrational configuration unchanged).
Eigen::SparseMatrix<double> collective_dipole_operator(const BasisCatalog& excited, const BasisCatalog& ground);

/// <eps_i| op |eps_j> for ground eigenstates i (rows) and excited eigenstates j (columns).
Eigen::MatrixXd contract(const Eigen::SparseMatrix<double>& op, const EigenSystem& excited,
                         const EigenSystem& ground);

/// Per-column sums of |a_ij|^2 and |jm_ij|^2 combined into Gamma_j = kappa A_j + N gamma0 F_j.
Eigen::VectorXd decay_rates(const Eigen::MatrixXd& a, const Eigen::MatrixXd& jm, const ModelParams& p);

/// Photon number <eps_j| a^dag a |eps_j> of every excited eigenstate.
Eigen::VectorXd photon_weights(const BasisCatalog& excited, const EigenSystem& es);

struct TransitionTable {
    Eigen::MatrixXd a_elements;      // <eps_i|a|eps_j>, ground i x excited j
    Eigen::MatrixXd jm_elements;     // <eps_i|J-|eps_j>
    Eigen::VectorXd gamma;           // radiative decay rate of each excited eigenstate
    Eigen::VectorXd f_strength;      // sum_i |<eps_i|J-|eps_j>|^2
    Eigen::VectorXd photon_weight;   // <eps_j|a^dag a|eps_j>
    Eigen::VectorXd excited_energies;
    Eigen::VectorXd ground_energies;
    Eigen::VectorXi ground_quanta;   // total vibrational quanta of each ground eigenstate
    double kappa{0.0};
    double vib_freq{1.0};

    Eigen::Index n_excited() const { return excited_energies.size(); }
    Eigen::Index n_ground() const { return ground_energies.size(); }
    /// Coherence decay rate of the i <- j transition.
    double kappa_ij(Eigen::Index /*i*/, Eigen::Index j) const { return 0.5 * gamma(j); }
    /// Transition frequency omega_j - omega_i.
    double omega_ji(Eigen::Index i, Eigen::Index j) const { return excited_energies(j) - ground_energies(i); }
    /// Largest photon_weight(j) - sum_i |a_ij|^2 (photon amplitude whose leakage partner is missing).
    double leakage_shortfall() const;
};

/// Rotates eigenvectors inside each cluster of (numerically) degenerate eigenvalues so that
/// the radiative decay matrix kappa a^T a + N gamma0 jm^T jm, and then the dipole-strength
/// matrix jm^T jm, are diagonal in the cluster. Every derived observable is then independent
/// of the arbitrary basis the eigensolver chose for the degenerate subspace.
void canonicalize_degenerate(EigenSystem& excited, const Eigen::SparseMatrix<double>& a_op,
                             const Eigen::SparseMatrix<double>& jm_op, const EigenSystem& ground,
                             const ModelParams& p, double tol = 1e-8);

/// Builds the complete table. `excited` is canonicalized in place (see canonicalize_degenerate).
TransitionTable build_transitions(const BasisCatalog& excited_catalog, EigenSystem& excited,
                                  const BasisCatalog& ground_catalog, const EigenSystem& ground,
                                  const ModelParams& p);

} // namespace htc
