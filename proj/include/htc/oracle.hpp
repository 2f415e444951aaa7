// oracle.hpp: Brute-force reference model on tiny systems

#pragma once

#include <Eigen/Dense>

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/model.hpp"

namespace htc::oracle {

inline constexpr int kMaxMolecules = 4;
inline constexpr int kMaxTransitionMolecules = 3;
inline constexpr unsigned kMaxQuanta = 4;

/// Full product space: every molecule carries (electronic level, quanta 0..vmax) and the
/// cavity holds 0 or 1 photon, restricted to one total excitation and at most vmax quanta
/// summed over molecules. Any number of molecules may vibrate.
struct FullSpace {
    int n_molecules;
    unsigned vmax;
    // excited manifold rows: site = -1 for the photon, otherwise the excited molecule
    Eigen::VectorXi site;
    Eigen::MatrixXi quanta;         // rows x molecules
    Eigen::MatrixXi ground_quanta;  // ground configurations x molecules

    Eigen::Index size() const { return site.size(); }
    Eigen::Index ground_size() const { return ground_quanta.rows(); }
};

/// Throws ParamError outside the size guard (N <= max_molecules, vmax <= 4).
FullSpace full_space(int n_molecules, unsigned vmax, int max_molecules = kMaxMolecules);

/// Dense one-excitation Hamiltonian at normal incidence in the rotating frame of the cavity.
Eigen::MatrixXd full_hamiltonian(const ModelParams& p, const FullSpace& space);

/// Eigenvalues and eigenvectors of the full one-excitation Hamiltonian.
EigenSystem full_spectrum(const ModelParams& p, unsigned vmax);

/// Largest deviations between the oracle and the main pipeline. Eigenvalue, matrix-element
/// and rate deviations are absolute; spectra are relative to the oracle maximum.
struct TransitionDeviation {
    double eigenvalues{0.0};
    double photon_elements{0.0};   // level-summed |<i|a|j>|^2
    double dipole_elements{0.0};   // level-summed |<i|J-|j>|^2
    double decay_rates{0.0};
    double absorption{0.0};
    double photoluminescence{0.0};
    bool exhaustive{true};         // false when the engine truncation drops configurations

    double max() const;
};

struct TransitionCheckOptions {
    double pl_cutoff{2.0};
    int pl_max_final_quanta{2};
    Eigen::Index grid_points{801};
    Eigen::Index compared_levels{12};  // lowest eigenvalues compared when not exhaustive
};

/// Recomputes eigenvalues, transition elements, decay rates, absorption and emission in
/// the full space and compares them with the pipeline run at truncation (vmax, spectators).
/// When the truncation is not exhaustive only the lowest eigenvalues and the spectra
/// are compared. Requires N <= 3.
TransitionDeviation full_transition_check(const ModelParams& p, unsigned vmax, unsigned spectators,
                                          const TransitionCheckOptions& options = {});

/// Same with the exhaustive truncation spectators = N - 1.
TransitionDeviation full_transition_check(const ModelParams& p, unsigned vmax);

} // namespace htc::oracle
