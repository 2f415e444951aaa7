// model.hpp: Physical parameters of the Holstein-Tavis-Cummings system and closed-form diabatic formulas

#pragma once

#include <cmath>

namespace htc {

/// Physical constants of one HTC system. After validate_params() all frequencies
/// and rates are expressed in units of the vibrational frequency (vib_freq == 1).
struct ModelParams {
    int n_molecules{1};
    double rabi_single{0.0};          // single-emitter vacuum Rabi frequency
    double vib_freq{1.0};             // intramolecular vibrational frequency
    double zero_phonon_freq{20.0};    // 0-0 transition frequency
    double huang_rhys{0.0};           // lambda^2
    double cavity_freq_normal{20.0};  // cavity frequency at k = 0 (rotating-frame reference)
    double kappa{0.0};                // photon leakage rate
    double gamma0{0.0};               // single-emitter fluorescence rate
    double k0{1.0};                   // dispersion scale, inverse micrometres

    double lambda() const { return std::sqrt(huang_rhys); }
    /// Vertical Franck-Condon transition frequency.
    double omega_e() const { return zero_phonon_freq + vib_freq * huang_rhys; }
    double rabi_collective() const { return std::sqrt(static_cast<double>(n_molecules)) * rabi_single; }
    double freq_scale_ratio() const { return zero_phonon_freq / vib_freq; }
    /// Cavity detuning from the 0-0 line at normal incidence.
    double detuning() const { return cavity_freq_normal - zero_phonon_freq; }

    /// Resonant system (omega_c = omega_00) from the collective quantities used in figure captions.
    static ModelParams resonant(int n, double rabi_collective, double huang_rhys,
                                double kappa = 0.0, double n_gamma0 = 0.0);
};

/// Checks domain constraints and rescales every frequency by vib_freq.
/// Throws ParamError naming the offending field.
ModelParams validate_params(const ModelParams& p);

/// omega_c(k) = omega_c sqrt(1 + (k/k0)^2), in the units of p.
double cavity_dispersion(double k, const ModelParams& p);

/// Inverse of cavity_dispersion: the k >= 0 at which the cavity reaches `omega`.
/// Throws ParamError when omega is below the normal-incidence frequency.
double resonant_wavevector(double omega, const ModelParams& p);

enum class SplittingOrder { single, two_particle };

/// Diabatic polariton splitting sqrt(N) Omega |<0|nu~>| (single particle) or
/// sqrt(N-1) Omega |<0|nu~>| (two particle), units of omega_v.
double diabatic_splitting(int n, double rabi_single, double lambda, unsigned nu_tilde,
                          SplittingOrder order);

/// Second-order expansion 1 - (1/2N)(1 + 1/4N) of the exact ratio sqrt((N-1)/N).
double splitting_ratio_expansion(int n);

/// Exact two-particle / single-particle splitting ratio sqrt((N-1)/N).
double splitting_ratio_exact(int n);

/// Displacement lambda/(2 sqrt N) of the symmetric mode in the polaron-decoupled lower polariton.
double polaron_displacement(int n, double lambda);

/// |<0|D(lambda_N)|0>|^2 = exp(-lambda^2/4N): leakage strength of every
/// polaron-decoupled lower-polariton level into its matching final state.
double emission_strength_factor(int n, double lambda);

} // namespace htc
