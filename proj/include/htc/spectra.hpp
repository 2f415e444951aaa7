// spectra.hpp: Absorption, photoluminescence, hot-band and dispersion datasets

#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/model.hpp"
#include "htc/observables.hpp"

namespace htc {

/// `n` equally spaced points from lo to hi inclusive.
Eigen::VectorXd linear_grid(double lo, double hi, Eigen::Index n);

/// One transition line. `weight` is the height the line contributes at its own centre.
struct Peak {
    double omega_ji;
    double weight;
    Eigen::Index parent;       // excited eigenstate j
    double parent_energy;
    Eigen::Index final_state;  // ground eigenstate i
    int final_quanta;
    double half_width;         // kappa_ij
};

struct Spectrum {
    Eigen::VectorXd omega;
    Eigen::VectorXd intensity;
    std::vector<Peak> peaks;
    std::vector<std::string> warnings;

    /// intensity / max(intensity), or zeros for an empty spectrum.
    Eigen::VectorXd normalized() const;
};

enum class PopulationKind { ground_only, level, thermal };

struct PopulationDistribution {
    Eigen::VectorXd eta;
    PopulationKind kind{PopulationKind::ground_only};
    double parameter{0.0};  // vibrational level or k_B T in units of omega_v
};

/// ground_only: all population in the absolute ground state. level: uniform over the ground
/// eigenstates carrying `parameter` vibrational quanta. thermal: Boltzmann weights
/// exp(-E_i / k_B T) with k_B T = `parameter`.
PopulationDistribution hotband_distribution(PopulationKind kind, const EigenSystem& ground,
                                            const ModelParams& p, double parameter = 0.0);

/// A(w) = pi sum_i eta_i sum_j F_j |a_ij|^2 (kappa_ij / Gamma_j) / ((w - w_ji)^2 + kappa_ij^2).
Spectrum absorption(const TransitionTable& t, const PopulationDistribution& eta, const Eigen::VectorXd& grid);

/// How the uniform excited-state population is shared among (near-)degenerate states.
enum class PopulationWeighting {
    per_eigenstate,  // every eigenstate below the cutoff carries weight 1
    per_level,       // every energy level carries weight 1, split evenly among its states
};

struct PhotoluminescenceOptions {
    double cutoff{0.0};
    int max_final_quanta{0};
    PopulationWeighting weighting{PopulationWeighting::per_level};
    double level_tolerance{1e-6};
};

/// S(w) = sum_{j: w_j <= cutoff} p_j sum_{i: quanta(i) <= max_final_quanta}
///        kappa |a_ij|^2 kappa_ij^2 / ((w - w_ji)^2 + kappa_ij^2).
Spectrum photoluminescence(const TransitionTable& t, const PhotoluminescenceOptions& options,
                           const Eigen::VectorXd& grid);

/// Population weights p_j used by photoluminescence().
Eigen::VectorXd excited_population(const TransitionTable& t, const PhotoluminescenceOptions& options);

/// Share of the emitted photon flux near `omega_target`, keyed by the parent offset
/// m = round((w_j - omega_target) / omega_v).
struct EmissionBreakdown {
    std::map<int, double> fraction;
    double total_flux{0.0};
};

/// Lines with |w_ji - omega_target| <= window contribute their integrated flux.
EmissionBreakdown emission_fraction(const Spectrum& pl, double omega_target, double window, double vib_freq = 1.0);

/// Parent-resolved PL intensity at exactly `omega_target` (Lorentzian tails included).
EmissionBreakdown emission_fraction_at(const Spectrum& pl, double omega_target, double vib_freq = 1.0);

/// Index of the lowest local maximum of the intensity (first interior point that exceeds
/// both neighbours), or -1.
Eigen::Index lowest_peak(const Spectrum& s);

/// A peak or shoulder: a negative local minimum of the second difference of the intensity.
struct SpectralFeature {
    double omega;
    double relative_intensity;  // intensity / max(intensity)
    bool local_maximum;         // true for a peak, false for a shoulder
};

/// Features whose relative intensity is at least `min_relative`, ascending in omega.
/// Assumes a uniform grid.
std::vector<SpectralFeature> spectral_features(const Spectrum& s, double min_relative = 0.0);

struct DispersionRow {
    double k;
    double omega;
    double photon_weight;
};

struct DispersionOptions {
    bool use_symmetry{true};
    int threads{1};
};

/// Eigenvalues and photon weights of the one-excitation manifold at each k (energies
/// relative to the normal-incidence cavity frequency).
std::vector<DispersionRow> dispersion_sweep(const ModelParams& p, const TruncationParams& t,
                                            const Eigen::VectorXd& k_grid,
                                            const DispersionOptions& options = {});

} // namespace htc
