// oracle.cpp: Brute-force reference model on tiny systems
//
// Shares nothing with the engine's enumeration, assembly or spectra code. States are
// indexed by plain mixed-radix counting over per-molecule quanta.

#include "htc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "htc/error.hpp"
#include "htc/pipeline.hpp"
#include "htc/spectra.hpp"

namespace htc::oracle {

namespace {

std::vector<std::vector<int>> vibration_configs(int n, unsigned vmax)
{
    std::vector<std::vector<int>> out;
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    const int base = static_cast<int>(vmax) + 1;
    while (true) {
        int sum = 0;
        for (int d : digits) {
            sum += d;
        }
        if (sum <= static_cast<int>(vmax)) {
            out.push_back(digits);
        }
        int pos = 0;
        while (pos < n && ++digits[static_cast<std::size_t>(pos)] == base) {
            digits[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) {
            return out;
        }
    }
}

struct Operators {
    Eigen::MatrixXd photon;  // ground configs x excited rows
    Eigen::MatrixXd dipole;
    Eigen::VectorXd ground_energy;
    Eigen::VectorXi ground_total;
};

Operators build_operators(const FullSpace& s)
{
    std::map<std::vector<int>, Eigen::Index> ground_row;
    for (Eigen::Index g = 0; g < s.ground_size(); ++g) {
        std::vector<int> q(static_cast<std::size_t>(s.n_molecules));
        for (int m = 0; m < s.n_molecules; ++m) {
            q[static_cast<std::size_t>(m)] = s.ground_quanta(g, m);
        }
        ground_row[q] = g;
    }
    Operators ops;
    ops.photon = Eigen::MatrixXd::Zero(s.ground_size(), s.size());
    ops.dipole = Eigen::MatrixXd::Zero(s.ground_size(), s.size());
    const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(s.n_molecules));
    for (Eigen::Index r = 0; r < s.size(); ++r) {
        std::vector<int> q(static_cast<std::size_t>(s.n_molecules));
        for (int m = 0; m < s.n_molecules; ++m) {
            q[static_cast<std::size_t>(m)] = s.quanta(r, m);
        }
        const Eigen::Index g = ground_row.at(q);
        if (s.site(r) < 0) {
            ops.photon(g, r) = 1.0;
        } else {
            ops.dipole(g, r) = inv_root_n;
        }
    }
    ops.ground_total = s.ground_quanta.rowwise().sum();
    ops.ground_energy = ops.ground_total.cast<double>();
    return ops;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& sorted, double tol)
{
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= sorted.size(); ++k) {
        if (k == sorted.size() || sorted(k) - sorted(k - 1) > tol) {
            out.emplace_back(start, k - start);
            start = k;
        }
    }
    return out;
}

// Rotates each degenerate cluster onto the eigenbasis of its decay matrix, then of its
// dipole-strength matrix where decay rates coincide.
void canonical_vectors(Eigen::MatrixXd& vectors, const Eigen::VectorXd& values, const Operators& ops,
                       const ModelParams& p)
{
    const double n_gamma = p.n_molecules * p.gamma0;
    for (const auto& [start, len] : clusters(values, 1e-8)) {
        if (len == 1) {
            continue;
        }
        auto block = vectors.middleCols(start, len);
        const Eigen::MatrixXd a = ops.photon * block;
        const Eigen::MatrixXd j = ops.dipole * block;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decay(p.kappa * a.transpose() * a +
                                                             n_gamma * j.transpose() * j);
        Eigen::MatrixXd rotated = block * decay.eigenvectors();
        const Eigen::VectorXd d = decay.eigenvalues();
        const double tol = 1e-9 * (1.0 + d.cwiseAbs().maxCoeff());
        for (const auto& [s2, l2] : clusters(d, tol)) {
            if (l2 == 1) {
                continue;
            }
            const Eigen::MatrixXd sub = ops.dipole * rotated.middleCols(s2, l2);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dipole(sub.transpose() * sub);
            rotated.middleCols(s2, l2) = rotated.middleCols(s2, l2) * dipole.eigenvectors();
        }
        block = rotated;
    }
}

struct Observables {
    Eigen::VectorXd energies;
    Eigen::MatrixXd photon;  // |<i|a|j>|^2, ground config x eigenstate
    Eigen::MatrixXd dipole;
    Eigen::VectorXd gamma;
    Eigen::VectorXd f_strength;
    Eigen::VectorXd ground_energy;
    Eigen::VectorXi ground_total;
};

Observables full_observables(const ModelParams& p, unsigned vmax)
{
    const FullSpace space = full_space(p.n_molecules, vmax, kMaxTransitionMolecules);
    const Operators ops = build_operators(space);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_hamiltonian(p, space));
    if (solver.info() != Eigen::Success) {
        throw NumericalError("oracle: diagonalization failed");
    }
    Eigen::MatrixXd vectors = solver.eigenvectors();
    canonical_vectors(vectors, solver.eigenvalues(), ops, p);

    Observables o;
    o.energies = solver.eigenvalues();
    o.photon = (ops.photon * vectors).array().square();
    o.dipole = (ops.dipole * vectors).array().square();
    o.f_strength = o.dipole.colwise().sum().transpose();
    o.gamma = p.kappa * o.photon.colwise().sum().transpose() + p.n_molecules * p.gamma0 * o.f_strength;
    o.ground_energy = ops.ground_energy;
    o.ground_total = ops.ground_total;
    return o;
}

double lorentzian(double w, double centre, double half_width)
{
    return half_width * half_width / ((w - centre) * (w - centre) + half_width * half_width);
}

Eigen::VectorXd absorption_curve(const Observables& o, const Eigen::VectorXd& grid)
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.size());
    Eigen::Index g0 = 0;
    o.ground_energy.minCoeff(&g0);
    for (Eigen::Index j = 0; j < o.energies.size(); ++j) {
        const double gamma = o.gamma(j);
        if (!(gamma > 0.0)) {
            continue;
        }
        const double hw = 0.5 * gamma;
        const double height = std::numbers::pi * o.f_strength(j) * o.photon(g0, j) * (hw / gamma) / (hw * hw);
        for (Eigen::Index k = 0; k < grid.size(); ++k) {
            out(k) += height * lorentzian(grid(k), o.energies(j) - o.ground_energy(g0), hw);
        }
    }
    return out;
}

Eigen::VectorXd emission_curve(const Observables& o, const ModelParams& p, const TransitionCheckOptions& opt,
                               const Eigen::VectorXd& grid)
{
    Eigen::Index below = 0;
    while (below < o.energies.size() && o.energies(below) <= opt.pl_cutoff) {
        ++below;
    }
    Eigen::VectorXd pop = Eigen::VectorXd::Zero(o.energies.size());
    for (const auto& [start, len] : clusters(o.energies.head(below), 1e-6)) {
        pop.segment(start, len).setConstant(1.0 / static_cast<double>(len));
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.size());
    for (Eigen::Index j = 0; j < below; ++j) {
        const double hw = 0.5 * o.gamma(j);
        if (!(hw > 0.0)) {
            continue;
        }
        for (Eigen::Index i = 0; i < o.photon.rows(); ++i) {
            if (o.ground_total(i) > opt.pl_max_final_quanta || o.photon(i, j) == 0.0) {
                continue;
            }
            const double height = pop(j) * p.kappa * o.photon(i, j);
            for (Eigen::Index k = 0; k < grid.size(); ++k) {
                out(k) += height * lorentzian(grid(k), o.energies(j) - o.ground_energy(i), hw);
            }
        }
    }
    return out;
}

// Sum of `weights` over (ground level, excited level) pairs.
Eigen::MatrixXd level_sums(const Eigen::MatrixXd& weights, const Eigen::VectorXd& ground_energy,
                           const Eigen::VectorXd& excited_energy)
{
    const int top = static_cast<int>(std::lround(ground_energy.maxCoeff()));
    const auto levels = clusters(excited_energy, 1e-8);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(top + 1, static_cast<Eigen::Index>(levels.size()));
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        const auto gl = static_cast<Eigen::Index>(std::lround(ground_energy(i)));
        for (std::size_t l = 0; l < levels.size(); ++l) {
            out(gl, static_cast<Eigen::Index>(l)) += weights.row(i).segment(levels[l].first, levels[l].second).sum();
        }
    }
    return out;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

double relative_diff(const Eigen::VectorXd& engine, const Eigen::VectorXd& reference)
{
    const double scale = reference.cwiseAbs().maxCoeff();
    return scale > 0.0 ? (engine - reference).cwiseAbs().maxCoeff() / scale : engine.cwiseAbs().maxCoeff();
}

} // namespace

FullSpace full_space(int n_molecules, unsigned vmax, int max_molecules)
{
    if (n_molecules < 1 || n_molecules > max_molecules) {
        throw ParamError("oracle: n_molecules must lie in 1.." + std::to_string(max_molecules));
    }
    if (vmax > kMaxQuanta) {
        throw ParamError("oracle: vmax must not exceed " + std::to_string(kMaxQuanta));
    }
    const auto configs = vibration_configs(n_molecules, vmax);
    const auto rows = static_cast<Eigen::Index>(configs.size()) * (n_molecules + 1);
    FullSpace s{n_molecules, vmax, Eigen::VectorXi(rows), Eigen::MatrixXi(rows, n_molecules),
                Eigen::MatrixXi(static_cast<Eigen::Index>(configs.size()), n_molecules)};
    Eigen::Index r = 0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        for (int site = -1; site < n_molecules; ++site, ++r) {
            s.site(r) = site;
            for (int m = 0; m < n_molecules; ++m) {
                s.quanta(r, m) = configs[c][static_cast<std::size_t>(m)];
            }
        }
        for (int m = 0; m < n_molecules; ++m) {
            s.ground_quanta(static_cast<Eigen::Index>(c), m) = configs[c][static_cast<std::size_t>(m)];
        }
    }
    return s;
}

Eigen::MatrixXd full_hamiltonian(const ModelParams& raw, const FullSpace& s)
{
    const ModelParams p = validate_params(raw);
    if (p.n_molecules != s.n_molecules) {
        throw ParamError("oracle: parameter and space molecule counts differ");
    }
    std::map<std::vector<int>, Eigen::Index> row_of;
    for (Eigen::Index r = 0; r < s.size(); ++r) {
        std::vector<int> key{s.site(r)};
        for (int m = 0; m < s.n_molecules; ++m) {
            key.push_back(s.quanta(r, m));
        }
        row_of[key] = r;
    }
    const double excitation = p.omega_e() - p.cavity_freq_normal;
    const double lambda = p.lambda();
    const double half_rabi = 0.5 * p.rabi_single;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(s.size(), s.size());
    for (Eigen::Index r = 0; r < s.size(); ++r) {
        const int quanta = s.quanta.row(r).sum();
        const int site = s.site(r);
        h(r, r) = quanta + (site < 0 ? 0.0 : excitation);
        std::vector<int> key{site};
        for (int m = 0; m < s.n_molecules; ++m) {
            key.push_back(s.quanta(r, m));
        }
        if (site < 0) {
            for (int n = 0; n < s.n_molecules; ++n) {
                key[0] = n;
                const Eigen::Index c = row_of.at(key);
                h(r, c) = h(c, r) = half_rabi;
            }
        } else if (quanta < static_cast<int>(s.vmax)) {
            const int own = s.quanta(r, site);
            key[static_cast<std::size_t>(site) + 1] += 1;
            const Eigen::Index c = row_of.at(key);
            h(r, c) = h(c, r) = lambda * std::sqrt(own + 1.0);
        }
    }
    return h;
}

EigenSystem full_spectrum(const ModelParams& raw, unsigned vmax)
{
    const ModelParams p = validate_params(raw);
    return eigh(full_hamiltonian(p, full_space(p.n_molecules, vmax)));
}

double TransitionDeviation::max() const
{
    return std::max({eigenvalues, photon_elements, dipole_elements, decay_rates, absorption, photoluminescence});
}

TransitionDeviation full_transition_check(const ModelParams& raw, unsigned vmax, unsigned spectators,
                                          const TransitionCheckOptions& options)
{
    const ModelParams p = validate_params(raw);
    const Observables ref = full_observables(p, vmax);
    const Solution eng = solve(p, TruncationParams{vmax, spectators});
    const TransitionTable& t = eng.table;

    TransitionDeviation d;
    d.exhaustive = spectators + 1 >= static_cast<unsigned>(p.n_molecules) &&
                   t.n_excited() == ref.energies.size() && t.n_ground() == ref.ground_energy.size();

    const double lo = ref.energies(0) - 1.0;
    const Eigen::VectorXd grid = linear_grid(lo, lo + vmax + 2.0, options.grid_points);
    d.absorption = relative_diff(
        absorption(t, hotband_distribution(PopulationKind::ground_only, eng.ground, eng.params), grid).intensity,
        absorption_curve(ref, grid));
    PhotoluminescenceOptions pl;
    pl.cutoff = options.pl_cutoff;
    pl.max_final_quanta = options.pl_max_final_quanta;
    d.photoluminescence = relative_diff(photoluminescence(t, pl, grid).intensity, emission_curve(ref, p, options, grid));

    if (!d.exhaustive) {
        const Eigen::Index k = std::min({options.compared_levels, ref.energies.size(), t.n_excited()});
        d.eigenvalues = (t.excited_energies.head(k) - ref.energies.head(k)).cwiseAbs().maxCoeff();
        return d;
    }

    d.eigenvalues = (t.excited_energies - ref.energies).cwiseAbs().maxCoeff();
    d.photon_elements = max_abs_diff(level_sums(t.a_elements.array().square(), t.ground_energies, t.excited_energies),
                                     level_sums(ref.photon, ref.ground_energy, ref.energies));
    d.dipole_elements = max_abs_diff(level_sums(t.jm_elements.array().square(), t.ground_energies, t.excited_energies),
                                     level_sums(ref.dipole, ref.ground_energy, ref.energies));
    for (const auto& [start, len] : clusters(ref.energies, 1e-8)) {
        Eigen::VectorXd a = t.gamma.segment(start, len);
        Eigen::VectorXd b = ref.gamma.segment(start, len);
        std::sort(a.data(), a.data() + a.size());
        std::sort(b.data(), b.data() + b.size());
        d.decay_rates = std::max(d.decay_rates, (a - b).cwiseAbs().maxCoeff());
    }
    return d;
}

TransitionDeviation full_transition_check(const ModelParams& p, unsigned vmax)
{
    return full_transition_check(p, vmax, static_cast<unsigned>(std::max(p.n_molecules - 1, 0)));
}

} // namespace htc::oracle
