// analysis.hpp: Symmetry sectors, degeneracy census, critical Rabi search and polaron-decoupling checks

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/model.hpp"
#include "htc/observables.hpp"

namespace htc {

/// Per-eigenstate weights on configuration sectors. Each family of configurations related
/// by molecule permutations (an orbit) is split into its equal-amplitude (symmetric)
/// combination and the orthogonal complement.
struct SectorWeights {
    Eigen::VectorXd photon_vacuum;       // |G;1_c>
    Eigen::VectorXd dressed_sym;         // photon with vibrating ground-state molecules
    Eigen::VectorXd dressed_nonsym;
    Eigen::VectorXd vibronic_sym;        // one excited molecule, no vibrating spectators
    Eigen::VectorXd vibronic_nonsym;
    Eigen::VectorXd two_particle_sym;    // excited molecule plus vibrating spectators
    Eigen::VectorXd two_particle_nonsym;

    Eigen::VectorXd total() const;
    /// Weight on totally symmetric combinations (photon vacuum included).
    Eigen::VectorXd symmetric() const;
};

SectorWeights sector_project(const EigenSystem& es, const BasisCatalog& catalog);

/// X states carry totally symmetric weight; Y states have none (below `tol`).
bool is_symmetric_state(const SectorWeights& w, Eigen::Index j, double tol = 1e-8);

struct Level {
    double energy;       // mean of the clustered values
    long multiplicity;
    Eigen::Index first;  // index of the lowest member in the sorted input
};

/// Single-linkage clusters of sorted values (neighbours closer than tol are merged).
std::vector<Level> degeneracy_census(const Eigen::VectorXd& sorted_values, double tol);

struct CriticalRabi {
    double rabi_collective;  // sqrt(N) Omega at which the tracked eigenvalue vanishes
    double eigenvalue;       // tracked eigenvalue there (rotating frame)
    int iterations;
};

/// Tracks, by eigenvector continuity, the eigenvalue nearest zero among states with weight
/// on |G;1_c> at the lower bracket end, and bisects on sqrt(N) Omega until it vanishes
/// (|E| < 1e-8 omega_v). p.rabi_single is ignored. Throws ParamError if the tracked
/// eigenvalue keeps its sign across [lo, hi].
CriticalRabi find_critical_rabi(const ModelParams& p, const TruncationParams& t, double lo, double hi);

/// Closest approach of the two most photon-like branches of the dispersion near the
/// wavevector where the bare cavity sits `cavity_offset` above the 0-0 transition.
struct Anticrossing {
    double k;               // wavevector of maximal mixing
    double gap;             // energy separation of the two branches there
    double lower;           // lower-branch energy (rotating frame)
    double upper;
    double minor_weight;    // photon weight of the less photonic branch (0.5 at full mixing)
};

struct AnticrossingOptions {
    double k_half_width{0.2};     // scanned interval around the bare resonance, inverse micrometres
    int k_steps{400};
    double energy_window{0.3};    // branches considered lie within this distance of cavity_offset
};

Anticrossing find_anticrossing(const ModelParams& p, const TruncationParams& t, double cavity_offset,
                               const AnticrossingOptions& options = {});

struct PolaronLevel {
    int quanta;          // m: vibrational quanta above the lower polariton
    double energy;       // photon-weighted mean energy of the level
    long states;         // eigenstates inside the level window
    double spacing_error;    // |energy - E_LP - m omega_v|
    double strength;         // leakage strength into final states with m quanta, per unit photon weight
    double strength_error;   // |strength / exp(-lambda^2/4N) - 1|
};

struct PolaronReport {
    std::vector<PolaronLevel> levels;
    double expected_strength;    // exp(-lambda^2/4N)
    double phi_minus_overlap;    // <phi_-| rho_el-ph |phi_-> for the lower polariton
    double spacing_tolerance;
    double strength_tolerance;
    double overlap_threshold;
    bool spacing_ok;
    bool strength_ok;
    bool overlap_ok;
    bool passed() const { return spacing_ok && strength_ok && overlap_ok; }
};

struct PolaronCheckOptions {
    int max_quanta{2};
    double level_window{0.1};
    double spacing_tolerance{0.05};
    double strength_tolerance{0.01};
    double overlap_threshold{0.95};
};

PolaronReport polaron_decoupling_check(const ModelParams& p, const TruncationParams& t,
                                       const PolaronCheckOptions& options = {});

/// Same checks on an already solved system.
PolaronReport polaron_decoupling_check(const ModelParams& p, const BasisCatalog& excited_catalog,
                                       const EigenSystem& excited, const TransitionTable& table,
                                       const PolaronCheckOptions& options = {});

/// <phi_-| Tr_vib |eps_j><eps_j| |phi_->, with |phi_-> = (|1_c> - N^{-1/2} sum_n |e_n>) / sqrt(2).
double lower_polariton_overlap(const BasisCatalog& catalog, const Eigen::VectorXd& state);

} // namespace htc
