// analysis.cpp: Diagnostics on one-excitation eigen-systems

#include "htc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "htc/error.hpp"
#include "htc/hamiltonian.hpp"
#include "htc/symmetry.hpp"

namespace htc {

namespace {

enum class Family { photon_vacuum, dressed, vibronic, two_particle };

// Permutation-invariant label of a configuration: photon number, quanta on the excited
// molecule (-1 if none) and the sorted quanta of the other vibrating molecules.
using OrbitKey = std::tuple<int, int, std::vector<std::uint16_t>>;

OrbitKey orbit_key(const BasisState& s)
{
    int own = -1;
    std::vector<std::uint16_t> rest;
    for (const auto& [site, q] : s.vib) {
        if (s.excited_site && site == *s.excited_site) {
            own = q;
        } else {
            rest.push_back(q);
        }
    }
    if (s.excited_site && own < 0) {
        own = 0;
    }
    std::sort(rest.begin(), rest.end());
    return {s.photon, own, std::move(rest)};
}

Family family_of(const BasisState& s)
{
    if (s.photon == 1) {
        return s.vib.empty() ? Family::photon_vacuum : Family::dressed;
    }
    return s.spectators() == 0 ? Family::vibronic : Family::two_particle;
}

} // namespace

Eigen::VectorXd SectorWeights::total() const
{
    return photon_vacuum + dressed_sym + dressed_nonsym + vibronic_sym + vibronic_nonsym + two_particle_sym +
           two_particle_nonsym;
}

Eigen::VectorXd SectorWeights::symmetric() const
{
    return photon_vacuum + dressed_sym + vibronic_sym + two_particle_sym;
}

SectorWeights sector_project(const EigenSystem& es, const BasisCatalog& catalog)
{
    if (catalog.manifold() != Manifold::one_excitation) {
        throw ParamError("sector_project: needs a one-excitation catalog");
    }
    if (es.vectors.rows() != static_cast<Eigen::Index>(catalog.size())) {
        throw ParamError("sector_project: eigen-system does not match the catalog");
    }
    std::map<OrbitKey, std::vector<Eigen::Index>> orbits;
    for (std::size_t r = 0; r < catalog.size(); ++r) {
        orbits[orbit_key(catalog[r])].push_back(static_cast<Eigen::Index>(r));
    }

    const auto n = es.size();
    SectorWeights w;
    for (auto* v : {&w.photon_vacuum, &w.dressed_sym, &w.dressed_nonsym, &w.vibronic_sym, &w.vibronic_nonsym,
                    &w.two_particle_sym, &w.two_particle_nonsym}) {
        *v = Eigen::VectorXd::Zero(n);
    }
    for (const auto& [key, rows] : orbits) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd norm2 = Eigen::VectorXd::Zero(n);
        for (const auto r : rows) {
            sum += es.vectors.row(r).transpose();
            norm2 += es.vectors.row(r).transpose().cwiseAbs2();
        }
        const Eigen::VectorXd sym = sum.cwiseAbs2() / static_cast<double>(rows.size());
        const Eigen::VectorXd rest = (norm2 - sym).cwiseMax(0.0);
        switch (family_of(catalog[static_cast<std::size_t>(rows.front())])) {
        case Family::photon_vacuum:
            w.photon_vacuum += norm2;
            break;
        case Family::dressed:
            w.dressed_sym += sym;
            w.dressed_nonsym += rest;
            break;
        case Family::vibronic:
            w.vibronic_sym += sym;
            w.vibronic_nonsym += rest;
            break;
        case Family::two_particle:
            w.two_particle_sym += sym;
            w.two_particle_nonsym += rest;
            break;
        }
    }
    return w;
}

bool is_symmetric_state(const SectorWeights& w, Eigen::Index j, double tol)
{
    return w.photon_vacuum(j) + w.dressed_sym(j) + w.vibronic_sym(j) + w.two_particle_sym(j) > tol;
}

std::vector<Level> degeneracy_census(const Eigen::VectorXd& v, double tol)
{
    if (!(tol > 0.0)) {
        throw ParamError("degeneracy_census: tolerance must be positive");
    }
    std::vector<Level> out;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= v.size(); ++k) {
        if (k == v.size() || v(k) - v(k - 1) > tol) {
            if (k > start) {
                out.push_back({v.segment(start, k - start).mean(), static_cast<long>(k - start), start});
            }
            start = k;
        }
    }
    return out;
}

CriticalRabi find_critical_rabi(const ModelParams& raw, const TruncationParams& t, double lo, double hi)
{
    if (!(lo > 0.0) || !(hi > lo)) {
        throw ParamError("find_critical_rabi: bracket must satisfy 0 < lo < hi");
    }
    ModelParams base = validate_params(raw);
    const double root_n = std::sqrt(static_cast<double>(base.n_molecules));

    struct Snapshot {
        Eigen::VectorXd values;
        Eigen::MatrixXd vectors;
        Eigen::Index vacuum;
    };
    std::optional<BasisCatalog> catalog;
    Eigen::Index catalog_vacuum = -1;
    if (!symmetry_supported(t)) {
        catalog.emplace(enumerate(Manifold::one_excitation, base.n_molecules, t));
        catalog_vacuum = static_cast<Eigen::Index>(catalog->index(BasisState{std::nullopt, 1, {}}));
    }
    auto snapshot = [&](double rabi_collective) {
        ModelParams p = base;
        p.rabi_single = rabi_collective / root_n;
        if (catalog) {
            EigenSystem es = eigh(assemble(*catalog, p));
            return Snapshot{std::move(es.values), std::move(es.vectors), catalog_vacuum};
        }
        const auto blocks = build_symmetric_blocks(p, t);
        EigenSystem es = eigh(blocks.front().matrix);
        return Snapshot{std::move(es.values), std::move(es.vectors), blocks.front().vacuum_photon};
    };
    // Column of `next` continuing `reference` (largest overlap).
    auto follow = [](const Snapshot& next, const Eigen::VectorXd& reference) {
        Eigen::Index best = 0;
        (next.vectors.transpose() * reference).cwiseAbs().maxCoeff(&best);
        return best;
    };

    Snapshot left = snapshot(lo);
    Eigen::Index tracked = -1;
    for (Eigen::Index j = 0; j < left.values.size(); ++j) {
        const double vac = left.vectors(left.vacuum, j) * left.vectors(left.vacuum, j);
        if (vac >= 1e-4 && (tracked < 0 || std::abs(left.values(j)) < std::abs(left.values(tracked)))) {
            tracked = j;
        }
    }
    if (tracked < 0) {
        throw ParamError("find_critical_rabi: no state with cavity-photon weight at the lower bracket");
    }

    const int steps = std::max(8, static_cast<int>(std::ceil((hi - lo) / 0.02)));
    double r_left = lo;
    Eigen::VectorXd v_left = left.vectors.col(tracked);
    double e_left = left.values(tracked);
    double r_right = lo;
    bool found = e_left == 0.0;
    for (int s = 1; s <= steps && !found; ++s) {
        const double r = lo + (hi - lo) * s / steps;
        const Snapshot next = snapshot(r);
        const Eigen::Index j = follow(next, v_left);
        const double e = next.values(j);
        if ((e_left < 0.0) != (e < 0.0) || e == 0.0) {
            r_right = r;
            found = true;
        } else {
            r_left = r;
            e_left = e;
            v_left = next.vectors.col(j);
        }
    }
    if (!found) {
        throw ParamError("find_critical_rabi: tracked eigenvalue does not change sign in the bracket");
    }

    CriticalRabi out{r_left, e_left, 0};
    if (e_left == 0.0) {
        return out;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (r_left + r_right);
        const Snapshot s = snapshot(mid);
        const Eigen::Index j = follow(s, v_left);
        const double e = s.values(j);
        out = {mid, e, it + 1};
        if (std::abs(e) < 1e-8 || r_right - r_left < 1e-15) {
            return out;
        }
        if ((e < 0.0) == (e_left < 0.0)) {
            r_left = mid;
            e_left = e;
            v_left = s.vectors.col(j);
        } else {
            r_right = mid;
        }
    }
    throw NumericalError("find_critical_rabi: bisection did not converge");
}

Anticrossing find_anticrossing(const ModelParams& raw, const TruncationParams& t, double cavity_offset,
                               const AnticrossingOptions& options)
{
    if (!(options.k_half_width > 0.0) || options.k_steps < 2 || !(options.energy_window > 0.0)) {
        throw ParamError("find_anticrossing: scan options must be positive");
    }
    const ModelParams p = validate_params(raw);
    const double k_res = resonant_wavevector(p.zero_phonon_freq + cavity_offset * p.vib_freq, p);

    std::optional<BasisCatalog> catalog;
    if (!symmetry_supported(t)) {
        catalog.emplace(enumerate(Manifold::one_excitation, p.n_molecules, t));
    }
    auto branches = [&](double k) {
        const double omega_c = cavity_dispersion(k, p);
        EigenSystem es;
        Eigen::VectorXd weight;
        if (catalog) {
            es = eigh(assemble(*catalog, p, omega_c));
            weight = photon_weights(*catalog, es);
        } else {
            const auto blocks = build_symmetric_blocks(p, t, omega_c);
            es = eigh(blocks.front().matrix);
            weight = (blocks.front().photon_mask.asDiagonal() * es.vectors).colwise().squaredNorm().transpose();
        }
        Eigen::Index first = -1;
        Eigen::Index second = -1;
        for (Eigen::Index j = 0; j < es.size(); ++j) {
            if (std::abs(es.values(j) - cavity_offset * p.vib_freq) >= options.energy_window) {
                continue;
            }
            if (first < 0 || weight(j) > weight(first)) {
                second = first;
                first = j;
            } else if (second < 0 || weight(j) > weight(second)) {
                second = j;
            }
        }
        if (second < 0) {
            throw NumericalError("find_anticrossing: fewer than two branches inside the energy window");
        }
        const double e1 = es.values(first);
        const double e2 = es.values(second);
        return Anticrossing{k, std::abs(e1 - e2), std::min(e1, e2), std::max(e1, e2), weight(second)};
    };

    std::optional<Anticrossing> best;
    for (int s = 0; s <= options.k_steps; ++s) {
        const double k = k_res + options.k_half_width * (2.0 * s / options.k_steps - 1.0);
        if (k < 0.0) {
            continue;
        }
        const Anticrossing here = branches(k);
        if (!best || here.minor_weight > best->minor_weight) {
            best = here;
        }
    }
    return *best;
}

double lower_polariton_overlap(const BasisCatalog& catalog, const Eigen::VectorXd& state)
{
    const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(catalog.n_molecules()));
    std::map<VibConfig, double> projected;
    for (std::size_t r = 0; r < catalog.size(); ++r) {
        const BasisState& s = catalog[r];
        const double amp = state(static_cast<Eigen::Index>(r));
        if (s.photon == 1) {
            projected[s.vib] += amp;
        } else if (s.excited_site) {
            projected[s.vib] -= amp * inv_root_n;
        }
    }
    double overlap = 0.0;
    for (const auto& [vib, amp] : projected) {
        overlap += 0.5 * amp * amp;
    }
    return overlap;
}

PolaronReport polaron_decoupling_check(const ModelParams& p, const BasisCatalog& excited_catalog,
                                       const EigenSystem& excited, const TransitionTable& table,
                                       const PolaronCheckOptions& options)
{
    PolaronReport report;
    report.expected_strength = emission_strength_factor(p.n_molecules, p.lambda());
    report.spacing_tolerance = options.spacing_tolerance;
    report.strength_tolerance = options.strength_tolerance;
    report.overlap_threshold = options.overlap_threshold;
    report.spacing_ok = true;
    report.strength_ok = true;

    const double e_lp = excited.values(0);
    for (int m = 0; m <= options.max_quanta; ++m) {
        const double centre = e_lp + m * p.vib_freq;
        PolaronLevel level{m, 0.0, 0, 0.0, 0.0, 0.0};
        double photon = 0.0, emitted = 0.0, weighted_energy = 0.0;
        for (Eigen::Index j = 0; j < excited.size(); ++j) {
            if (std::abs(excited.values(j) - centre) > options.level_window) {
                continue;
            }
            ++level.states;
            photon += table.photon_weight(j);
            weighted_energy += table.photon_weight(j) * excited.values(j);
            for (Eigen::Index i = 0; i < table.n_ground(); ++i) {
                if (table.ground_quanta(i) == m) {
                    emitted += table.a_elements(i, j) * table.a_elements(i, j);
                }
            }
        }
        if (photon > 0.0) {
            level.energy = weighted_energy / photon;
            level.strength = emitted / photon;
        }
        level.spacing_error = level.states ? std::abs(level.energy - centre) : INFINITY;
        level.strength_error = std::abs(level.strength / report.expected_strength - 1.0);
        report.spacing_ok = report.spacing_ok && level.spacing_error <= options.spacing_tolerance;
        report.strength_ok = report.strength_ok && level.strength_error <= options.strength_tolerance;
        report.levels.push_back(level);
    }
    report.phi_minus_overlap = lower_polariton_overlap(excited_catalog, excited.vectors.col(0));
    report.overlap_ok = report.phi_minus_overlap >= options.overlap_threshold;
    return report;
}

PolaronReport polaron_decoupling_check(const ModelParams& raw, const TruncationParams& t,
                                       const PolaronCheckOptions& options)
{
    const ModelParams p = validate_params(raw);
    const BasisCatalog excited_catalog = enumerate(Manifold::one_excitation, p.n_molecules, t);
    const BasisCatalog ground_catalog = enumerate(Manifold::ground, p.n_molecules, t);
    EigenSystem excited = eigh(assemble(excited_catalog, p), excited_catalog.id());
    const EigenSystem ground = diagonal_eigensystem(assemble_ground(ground_catalog, p), ground_catalog.id());
    const TransitionTable table = build_transitions(excited_catalog, excited, ground_catalog, ground, p);
    return polaron_decoupling_check(p, excited_catalog, excited, table, options);
}

} // namespace htc
