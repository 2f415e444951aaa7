// spectra.cpp: Line-shape synthesis and dispersion sweeps

#include "htc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <numbers>
#include <thread>

#include "htc/error.hpp"
#include "htc/hamiltonian.hpp"
#include "htc/symmetry.hpp"

namespace htc {

namespace {

// Lines weaker than this fraction of the strongest line are dropped.
constexpr double kRelativeFloor = 1e-14;

void require_grid(const Eigen::VectorXd& grid)
{
    for (Eigen::Index k = 1; k < grid.size(); ++k) {
        if (!(grid(k) > grid(k - 1))) {
            throw ParamError("spectrum grid must be strictly increasing");
        }
    }
}

// Keeps the significant lines and sums their unit-height Lorentzians on the grid.
Spectrum synthesize(std::vector<Peak> lines, const Eigen::VectorXd& grid)
{
    Spectrum s;
    s.omega = grid;
    s.intensity = Eigen::VectorXd::Zero(grid.size());
    double strongest = 0.0;
    for (const auto& l : lines) {
        strongest = std::max(strongest, l.weight);
    }
    const double floor = kRelativeFloor * strongest;
    std::erase_if(lines, [&](const Peak& l) { return !(l.weight > floor); });
    std::stable_sort(lines.begin(), lines.end(), [](const Peak& a, const Peak& b) {
        return a.omega_ji < b.omega_ji;
    });
    for (const auto& l : lines) {
        const double w2 = l.half_width * l.half_width;
        if (w2 == 0.0) {
            continue;
        }
        s.intensity.array() += l.weight * w2 / ((grid.array() - l.omega_ji).square() + w2);
    }
    s.peaks = std::move(lines);
    return s;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> level_clusters(const Eigen::VectorXd& v, Eigen::Index count,
                                                                  double tol)
{
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= count; ++k) {
        if (k == count || v(k) - v(k - 1) > tol) {
            out.emplace_back(start, k - start);
            start = k;
        }
    }
    return out;
}

} // namespace

Eigen::VectorXd linear_grid(double lo, double hi, Eigen::Index n)
{
    if (n < 2 || !(hi > lo)) {
        throw ParamError("grid needs at least two points and hi > lo");
    }
    return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

Eigen::VectorXd Spectrum::normalized() const
{
    const double top = intensity.size() ? intensity.maxCoeff() : 0.0;
    if (top <= 0.0) {
        return Eigen::VectorXd::Zero(intensity.size());
    }
    return intensity / top;
}

PopulationDistribution hotband_distribution(PopulationKind kind, const EigenSystem& ground,
                                            const ModelParams& p, double parameter)
{
    PopulationDistribution d;
    d.kind = kind;
    d.parameter = parameter;
    d.eta = Eigen::VectorXd::Zero(ground.size());
    if (ground.size() == 0) {
        throw ParamError("hotband_distribution: empty ground manifold");
    }
    switch (kind) {
    case PopulationKind::ground_only: {
        Eigen::Index lowest = 0;
        ground.values.minCoeff(&lowest);
        d.eta(lowest) = 1.0;
        break;
    }
    case PopulationKind::level: {
        if (parameter < 0 || parameter != std::floor(parameter)) {
            throw ParamError("level population needs a non-negative integer level");
        }
        const auto nu = static_cast<long>(parameter);
        for (Eigen::Index i = 0; i < ground.size(); ++i) {
            if (std::lround(ground.values(i) / p.vib_freq) == nu) {
                d.eta(i) = 1.0;
            }
        }
        if (d.eta.sum() == 0.0) {
            throw ParamError("level population: no ground state carries " + std::to_string(nu) + " quanta");
        }
        d.eta /= d.eta.sum();
        break;
    }
    case PopulationKind::thermal: {
        if (!(parameter > 0.0) || !std::isfinite(parameter)) {
            throw ParamError("thermal population needs k_B T > 0");
        }
        const double e0 = ground.values.minCoeff();
        d.eta = (-(ground.values.array() - e0) / parameter).exp().matrix();
        d.eta /= d.eta.sum();
        break;
    }
    }
    return d;
}

Spectrum absorption(const TransitionTable& t, const PopulationDistribution& eta, const Eigen::VectorXd& grid)
{
    require_grid(grid);
    if (eta.eta.size() != t.n_ground()) {
        throw ParamError("absorption: population size does not match the ground manifold");
    }
    std::vector<Peak> lines;
    for (Eigen::Index i = 0; i < t.n_ground(); ++i) {
        if (eta.eta(i) <= 0.0) {
            continue;
        }
        for (Eigen::Index j = 0; j < t.n_excited(); ++j) {
            const double numerator = t.f_strength(j) * t.a_elements(i, j) * t.a_elements(i, j);
            if (numerator <= 0.0) {
                continue;
            }
            const double gamma = t.gamma(j);
            const double kij = t.kappa_ij(i, j);
            if (!(gamma > 0.0) || !(kij > 0.0)) {
                throw NumericalError("absorption: vanishing decay rate for an absorbing eigenstate " +
                                     std::to_string(j));
            }
            const double height = std::numbers::pi * eta.eta(i) * numerator * (kij / gamma) / (kij * kij);
            lines.push_back({t.omega_ji(i, j), height, j, t.excited_energies(j), i, t.ground_quanta(i), kij});
        }
    }
    return synthesize(std::move(lines), grid);
}

Eigen::VectorXd excited_population(const TransitionTable& t, const PhotoluminescenceOptions& options)
{
    const auto n = t.n_excited();
    Eigen::VectorXd pop = Eigen::VectorXd::Zero(n);
    Eigen::Index below = 0;
    while (below < n && t.excited_energies(below) <= options.cutoff) {
        ++below;
    }
    if (options.weighting == PopulationWeighting::per_eigenstate) {
        pop.head(below).setOnes();
        return pop;
    }
    for (const auto& [start, len] : level_clusters(t.excited_energies, below, options.level_tolerance)) {
        pop.segment(start, len).setConstant(1.0 / static_cast<double>(len));
    }
    return pop;
}

Spectrum photoluminescence(const TransitionTable& t, const PhotoluminescenceOptions& options,
                           const Eigen::VectorXd& grid)
{
    require_grid(grid);
    const Eigen::VectorXd pop = excited_population(t, options);
    std::vector<Peak> lines;
    for (Eigen::Index j = 0; j < t.n_excited(); ++j) {
        if (pop(j) <= 0.0) {
            continue;
        }
        for (Eigen::Index i = 0; i < t.n_ground(); ++i) {
            if (t.ground_quanta(i) > options.max_final_quanta) {
                continue;
            }
            const double strength = t.a_elements(i, j) * t.a_elements(i, j);
            if (strength <= 0.0) {
                continue;
            }
            lines.push_back({t.omega_ji(i, j), pop(j) * t.kappa * strength, j, t.excited_energies(j), i,
                             t.ground_quanta(i), t.kappa_ij(i, j)});
        }
    }
    Spectrum s = synthesize(std::move(lines), grid);
    if (t.n_excited() == 0 || t.excited_energies(0) > options.cutoff) {
        s.warnings.push_back("cutoff lies below the lowest one-excitation eigenvalue; spectrum is empty");
    }
    return s;
}

EmissionBreakdown emission_fraction(const Spectrum& pl, double omega_target, double window, double vib_freq)
{
    if (!(window > 0.0)) {
        throw ParamError("emission_fraction: window must be positive");
    }
    EmissionBreakdown b;
    for (const auto& l : pl.peaks) {
        if (std::abs(l.omega_ji - omega_target) > window) {
            continue;
        }
        const double flux = std::numbers::pi * l.weight * l.half_width;
        const int m = static_cast<int>(std::lround((l.parent_energy - omega_target) / vib_freq));
        b.fraction[m] += flux;
        b.total_flux += flux;
    }
    if (!(b.total_flux > 0.0)) {
        throw NumericalError("emission_fraction: no emitted flux inside the window");
    }
    for (auto& [m, f] : b.fraction) {
        f /= b.total_flux;
    }
    return b;
}

EmissionBreakdown emission_fraction_at(const Spectrum& pl, double omega_target, double vib_freq)
{
    EmissionBreakdown b;
    for (const auto& l : pl.peaks) {
        const double w2 = l.half_width * l.half_width;
        const double d = omega_target - l.omega_ji;
        const double value = l.weight * w2 / (d * d + w2);
        const int m = static_cast<int>(std::lround((l.parent_energy - omega_target) / vib_freq));
        b.fraction[m] += value;
        b.total_flux += value;
    }
    if (!(b.total_flux > 0.0)) {
        throw NumericalError("emission_fraction: no emitted flux at the target frequency");
    }
    for (auto& [m, f] : b.fraction) {
        f /= b.total_flux;
    }
    return b;
}

Eigen::Index lowest_peak(const Spectrum& s)
{
    for (Eigen::Index k = 1; k + 1 < s.intensity.size(); ++k) {
        if (s.intensity(k) > s.intensity(k - 1) && s.intensity(k) >= s.intensity(k + 1)) {
            return k;
        }
    }
    return -1;
}

std::vector<SpectralFeature> spectral_features(const Spectrum& s, double min_relative)
{
    std::vector<SpectralFeature> out;
    const auto& y = s.intensity;
    const auto n = y.size();
    if (n < 5) {
        return out;
    }
    const double top = y.maxCoeff();
    if (!(top > 0.0)) {
        return out;
    }
    Eigen::VectorXd d2 = Eigen::VectorXd::Zero(n);
    d2.segment(1, n - 2) = y.segment(2, n - 2) - 2.0 * y.segment(1, n - 2) + y.segment(0, n - 2);
    for (Eigen::Index k = 2; k + 2 < n; ++k) {
        if (d2(k) < 0.0 && d2(k) < d2(k - 1) && d2(k) <= d2(k + 1) && y(k) >= min_relative * top) {
            const bool peak = y(k) >= y(k - 1) && y(k) >= y(k + 1);
            out.push_back({s.omega(k), y(k) / top, peak});
        }
    }
    return out;
}

std::vector<DispersionRow> dispersion_sweep(const ModelParams& raw, const TruncationParams& t,
                                            const Eigen::VectorXd& k_grid, const DispersionOptions& options)
{
    const ModelParams p = validate_params(raw);
    for (Eigen::Index k = 1; k < k_grid.size(); ++k) {
        if (!(k_grid(k) > k_grid(k - 1))) {
            throw ParamError("dispersion k grid must be strictly increasing");
        }
    }
    if (k_grid.size() && k_grid(0) < 0.0) {
        throw ParamError("dispersion k grid must be non-negative");
    }
    const bool blocks = options.use_symmetry && symmetry_supported(t);
    std::optional<BasisCatalog> catalog;
    if (!blocks) {
        catalog.emplace(enumerate(Manifold::one_excitation, p.n_molecules, t));
    }

    std::vector<std::vector<DispersionRow>> per_k(static_cast<std::size_t>(k_grid.size()));
    auto work = [&](Eigen::Index idx) {
        const double k = k_grid(idx);
        const double wck = cavity_dispersion(k, p);
        Eigen::VectorXd values, weights;
        if (blocks) {
            const BlockSpectrum bs = merged_spectrum(build_symmetric_blocks(p, t, wck));
            values = bs.values;
            weights = bs.photon_weight;
        } else {
            const EigenSystem es = eigh(assemble(*catalog, p, wck));
            values = es.values;
            weights = photon_weights(*catalog, es);
        }
        auto& rows = per_k[static_cast<std::size_t>(idx)];
        rows.reserve(static_cast<std::size_t>(values.size()));
        for (Eigen::Index j = 0; j < values.size(); ++j) {
            rows.push_back({k, values(j), weights(j)});
        }
    };

    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(k_grid.size())));
    if (threads == 1) {
        for (Eigen::Index idx = 0; idx < k_grid.size(); ++idx) {
            work(idx);
        }
    } else {
        std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (Eigen::Index idx = w; idx < k_grid.size(); idx += threads) {
                        work(idx);
                    }
                } catch (...) {
                    failures[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (const auto& f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
    }

    std::vector<DispersionRow> out;
    for (auto& rows : per_k) {
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

} // namespace htc
