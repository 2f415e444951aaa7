// model.cpp: Parameter validation and closed-form diabatic formulas

#include "htc/model.hpp"

#include <cmath>
#include <string>

#include "htc/error.hpp"
#include "htc/franck_condon.hpp"

namespace htc {

namespace {

void require_finite_nonnegative(double value, const char* field)
{
    if (!std::isfinite(value)) {
        throw ParamError(std::string(field) + " must be finite");
    }
    if (value < 0.0) {
        throw ParamError(std::string(field) + " must be >= 0");
    }
}

} // namespace

ModelParams ModelParams::resonant(int n, double rabi_collective, double huang_rhys,
                                  double kappa, double n_gamma0)
{
    ModelParams p;
    p.n_molecules = n;
    p.rabi_single = n > 0 ? rabi_collective / std::sqrt(static_cast<double>(n)) : 0.0;
    p.huang_rhys = huang_rhys;
    p.kappa = kappa;
    p.gamma0 = n > 0 ? n_gamma0 / n : 0.0;
    p.cavity_freq_normal = p.zero_phonon_freq;
    return p;
}

ModelParams validate_params(const ModelParams& p)
{
    if (p.n_molecules < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    require_finite_nonnegative(p.rabi_single, "rabi_single");
    require_finite_nonnegative(p.vib_freq, "vib_freq");
    require_finite_nonnegative(p.zero_phonon_freq, "zero_phonon_freq");
    require_finite_nonnegative(p.huang_rhys, "huang_rhys");
    require_finite_nonnegative(p.cavity_freq_normal, "cavity_freq_normal");
    require_finite_nonnegative(p.kappa, "kappa");
    require_finite_nonnegative(p.gamma0, "gamma0");
    require_finite_nonnegative(p.k0, "k0");
    if (p.vib_freq == 0.0) {
        throw ParamError("vib_freq must be > 0 (it sets the unit of frequency)");
    }
    if (p.k0 == 0.0) {
        throw ParamError("k0 must be > 0");
    }

    ModelParams out = p;
    const double unit = p.vib_freq;
    out.vib_freq = 1.0;
    out.rabi_single = p.rabi_single / unit;
    out.zero_phonon_freq = p.zero_phonon_freq / unit;
    out.cavity_freq_normal = p.cavity_freq_normal / unit;
    out.kappa = p.kappa / unit;
    out.gamma0 = p.gamma0 / unit;
    return out;
}

double cavity_dispersion(double k, const ModelParams& p)
{
    const double ratio = k / p.k0;
    return p.cavity_freq_normal * std::sqrt(1.0 + ratio * ratio);
}

double resonant_wavevector(double omega, const ModelParams& p)
{
    const double ratio = omega / p.cavity_freq_normal;
    if (!(ratio >= 1.0)) {
        throw ParamError("cavity never reaches the requested frequency");
    }
    return p.k0 * std::sqrt(ratio * ratio - 1.0);
}

double diabatic_splitting(int n, double rabi_single, double lambda, unsigned nu_tilde,
                          SplittingOrder order)
{
    if (n < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    const double overlap = std::abs(franck_condon(0, nu_tilde, lambda));
    if (order == SplittingOrder::single) {
        return std::sqrt(static_cast<double>(n)) * rabi_single * overlap;
    }
    if (n < 2) {
        throw ParamError("two-particle splitting needs n_molecules ≥ 2");
    }
    return std::sqrt(static_cast<double>(n - 1)) * rabi_single * overlap;
}

double splitting_ratio_expansion(int n)
{
    if (n < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    const double nn = static_cast<double>(n);
    return 1.0 - (1.0 / (2.0 * nn)) * (1.0 + 1.0 / (4.0 * nn));
}

double splitting_ratio_exact(int n)
{
    if (n < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    return std::sqrt(static_cast<double>(n - 1) / n);
}

double polaron_displacement(int n, double lambda)
{
    if (n < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    return lambda / (2.0 * std::sqrt(static_cast<double>(n)));
}

double emission_strength_factor(int n, double lambda)
{
    if (n < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    return std::exp(-lambda * lambda / (4.0 * n));
}

} // namespace htc
