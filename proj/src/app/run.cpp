// run.cpp: Task execution for the command-line driver

#include "htc/app/run.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "htc/analysis.hpp"
#include "htc/error.hpp"
#include "htc/oracle.hpp"
#include "htc/pipeline.hpp"
#include "htc/spectra.hpp"
#include "htc/symmetry.hpp"

namespace htc::app {

namespace {

using nlohmann::json;

std::string fixed(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v == 0.0 ? 0.0 : v);
    return buf;
}

json catalog_json(const Solution& s)
{
    return {{"excited_states", s.excited_catalog.size()},
            {"ground_states", s.ground_catalog.size()},
            {"boundary_crossing_fraction", s.boundary.crossing_fraction()},
            {"leakage_shortfall", s.table.leakage_shortfall()}};
}

void add_dumps(OutputSet& out, const RunConfig& c, const Solution& s)
{
    if (c.dump_basis) {
        std::ostringstream ex, gr;
        dump_catalog(ex, s.excited_catalog);
        dump_catalog(gr, s.ground_catalog);
        out.add("basis_excited.txt", ex.str());
        out.add("basis_ground.txt", gr.str());
    }
    if (c.dump_matrix) {
        std::ostringstream os;
        dump_matrix(os, assemble(s.excited_catalog, s.params));
        out.add("hamiltonian.txt", os.str());
    }
}

std::string spectrum_csv(const Spectrum& s)
{
    CsvTable t({"omega", "intensity", "normalized"});
    const Eigen::VectorXd norm = s.normalized();
    for (Eigen::Index k = 0; k < s.omega.size(); ++k) {
        t.add_row({s.omega(k), s.intensity(k), norm(k)});
    }
    return t.str();
}

std::string peaks_csv(const Spectrum& s)
{
    CsvTable t({"omega_ji", "weight", "parent_index", "parent_energy", "final_index", "final_quanta", "half_width"});
    for (const auto& p : s.peaks) {
        t.add_row({p.omega_ji, p.weight, static_cast<double>(p.parent), p.parent_energy,
                   static_cast<double>(p.final_state), static_cast<double>(p.final_quanta), p.half_width});
    }
    return t.str();
}

std::string features_text(const Spectrum& s, double min_relative)
{
    std::string text;
    for (const auto& f : spectral_features(s, min_relative)) {
        text += "  " + fixed(f.omega, 4) + "  relative " + fixed(f.relative_intensity, 3) +
                (f.local_maximum ? "  peak\n" : "  shoulder\n");
    }
    return text.empty() ? "  none\n" : text;
}

Eigen::VectorXd grid_of(const GridSpec& g) { return linear_grid(g.lo, g.hi, g.points); }

std::string header(const RunConfig& c, const Solution* s)
{
    const ModelParams& p = c.model;
    std::string text = "task " + std::string(task_name(c.task)) + "\n";
    text += "N " + std::to_string(p.n_molecules) + ", collective Rabi " + fixed(p.rabi_collective(), 4) +
            ", Huang-Rhys " + fixed(p.huang_rhys, 4) + ", kappa " + fixed(p.kappa, 4) + ", N gamma0 " +
            fixed(p.n_molecules * p.gamma0, 4) + "\n";
    text += "truncation: total quanta " + std::to_string(c.truncation.total_quanta) + ", spectators " +
            std::to_string(c.truncation.spectators) + "\n";
    if (s) {
        text += "catalog: " + std::to_string(s->excited_catalog.size()) + " excited, " +
                std::to_string(s->ground_catalog.size()) + " ground states; boundary crossing fraction " +
                fixed(s->boundary.crossing_fraction(), 4) + "\n";
        text += "lowest eigenvalue " + fixed(s->excited.values(0)) + "\n";
    }
    return text;
}

void absorption_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const Solution s = solve(c.model, c.truncation);
    const PopulationDistribution eta =
        hotband_distribution(c.distribution, s.ground, s.params, c.distribution_parameter);
    const Spectrum spec = absorption(s.table, eta, grid_of(c.grid));
    const std::string name = c.task == Task::hotband ? "hotband.csv" : "absorption.csv";
    out.add(name, spectrum_csv(spec));
    out.add("peaks.csv", peaks_csv(spec));
    out.add_metadata("catalog", catalog_json(s));
    for (const auto& w : spec.warnings) {
        out.add_warning(w);
    }
    add_dumps(out, c, s);
    summary = header(c, &s) + "features (relative >= 0.01):\n" + features_text(spec, 0.01);
}

void pl_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const Solution s = solve(c.model, c.truncation);
    PhotoluminescenceOptions options = c.pl;
    if (c.cutoff_above_lp) {
        options.cutoff += s.excited.values(0);
    }
    const Spectrum spec = photoluminescence(s.table, options, grid_of(c.grid));
    out.add("pl.csv", spectrum_csv(spec));
    out.add("peaks.csv", peaks_csv(spec));
    out.add_metadata("catalog", catalog_json(s));
    out.add_metadata("cutoff", options.cutoff);
    for (const auto& w : spec.warnings) {
        out.add_warning(w);
    }
    add_dumps(out, c, s);
    summary = header(c, &s) + "cutoff " + fixed(options.cutoff) + "\nfeatures (relative >= 0.01):\n" +
              features_text(spec, 0.01);
    const auto main = spectral_features(spec, 0.5);
    if (!main.empty() && !spec.peaks.empty()) {
        const EmissionBreakdown b = emission_fraction_at(spec, main.front().omega, s.params.vib_freq);
        summary += "emission at the lowest main feature " + fixed(main.front().omega, 4) + " by parent offset:\n";
        json fractions = json::object();
        for (const auto& [m, share] : b.fraction) {
            summary += "  m=" + std::to_string(m) + "  " + fixed(share, 4) + "\n";
            fractions[std::to_string(m)] = share;
        }
        out.add_metadata("lowest_feature", {{"omega", main.front().omega}, {"parent_fractions", fractions}});
    }
}

void dispersion_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const Eigen::VectorXd k = grid_of(c.k_grid);
    DispersionOptions options;
    options.use_symmetry = c.use_symmetry;
    options.threads = c.threads;
    const auto rows = dispersion_sweep(c.model, c.truncation, k, options);
    CsvTable table({"k", "omega", "photon_weight"});
    for (const auto& r : rows) {
        table.add_row({r.k, r.omega, r.photon_weight});
    }
    CsvTable cavity({"k", "omega"});
    for (Eigen::Index i = 0; i < k.size(); ++i) {
        cavity.add_row({k(i), cavity_dispersion(k(i), c.model) - c.model.cavity_freq_normal});
    }
    out.add("dispersion.csv", table.str());
    out.add("cavity.csv", cavity.str());
    summary = header(c, nullptr) + std::to_string(k.size()) + " wavevectors, " + std::to_string(rows.size()) +
              " rows (" + (c.use_symmetry ? "symmetry blocks" : "full catalog") + ")\n";

    // Isolated anticrossings only exist while the splitting stays below half a vibrational quantum.
    if (c.model.rabi_collective() > 0.5 * c.model.vib_freq) {
        return;
    }
    CsvTable gaps({"cavity_offset", "k", "gap", "lower", "upper", "minor_photon_weight"});
    for (int offset = 0; offset <= 1; ++offset) {
        const double k_res = resonant_wavevector(c.model.zero_phonon_freq + offset * c.model.vib_freq, c.model);
        if (k_res < c.k_grid.lo || k_res > c.k_grid.hi) {
            continue;
        }
        const Anticrossing a = find_anticrossing(c.model, c.truncation, offset);
        gaps.add_row({static_cast<double>(offset), a.k, a.gap, a.lower, a.upper, a.minor_weight});
        summary += "anticrossing " + std::to_string(offset) + ": k " + fixed(a.k, 4) + ", gap " + fixed(a.gap) + "\n";
    }
    out.add("anticrossings.csv", gaps.str());
}

void eigen_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const Solution s = solve(c.model, c.truncation);
    CsvTable t({"index", "energy", "photon_weight", "decay_rate", "dipole_strength"});
    for (Eigen::Index j = 0; j < s.excited.size(); ++j) {
        t.add_row({static_cast<double>(j), s.excited.values(j), s.table.photon_weight(j), s.table.gamma(j),
                   s.table.f_strength(j)});
    }
    out.add("eigen.csv", t.str());
    out.add_metadata("catalog", catalog_json(s));
    add_dumps(out, c, s);
    summary = header(c, &s);
}

void analyze_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const Solution s = solve(c.model, c.truncation);
    const SectorWeights w = sector_project(s.excited, s.excited_catalog);
    CsvTable sectors({"index", "energy", "photon_vacuum", "dressed_sym", "dressed_nonsym", "vibronic_sym",
                      "vibronic_nonsym", "two_particle_sym", "two_particle_nonsym"});
    for (Eigen::Index j = 0; j < s.excited.size(); ++j) {
        sectors.add_row({static_cast<double>(j), s.excited.values(j), w.photon_vacuum(j), w.dressed_sym(j),
                         w.dressed_nonsym(j), w.vibronic_sym(j), w.vibronic_nonsym(j), w.two_particle_sym(j),
                         w.two_particle_nonsym(j)});
    }
    out.add("sectors.csv", sectors.str());

    json report;
    json levels = json::array();
    summary = header(c, &s) + "levels (energy, multiplicity, type):\n";
    int shown = 0;
    for (const auto& level : degeneracy_census(s.excited.values, c.analyze.degeneracy_tolerance)) {
        const bool x_type = is_symmetric_state(w, level.first);
        const double photon = s.table.photon_weight.segment(level.first, level.multiplicity).sum();
        levels.push_back({{"energy", level.energy},
                          {"multiplicity", level.multiplicity},
                          {"symmetric", x_type},
                          {"photon_weight", photon}});
        if (shown++ < 20) {
            summary += "  " + fixed(level.energy) + "  x" + std::to_string(level.multiplicity) + "  " +
                       (x_type ? "X" : "Y") + "\n";
        }
    }
    report["levels"] = levels;
    if (c.analyze.critical_rabi_bracket) {
        const auto [lo, hi] = *c.analyze.critical_rabi_bracket;
        const CriticalRabi r = find_critical_rabi(c.model, c.truncation, lo, hi);
        report["critical_rabi"] = {{"rabi_collective", r.rabi_collective},
                                   {"eigenvalue", r.eigenvalue},
                                   {"iterations", r.iterations}};
        summary += "critical collective Rabi " + fixed(r.rabi_collective) + " (eigenvalue " +
                   format_number(r.eigenvalue) + ")\n";
    }
    if (c.analyze.polaron_check) {
        const PolaronReport r = polaron_decoupling_check(s.params, s.excited_catalog, s.excited, s.table);
        json lv = json::array();
        for (const auto& l : r.levels) {
            lv.push_back({{"quanta", l.quanta},
                          {"energy", l.energy},
                          {"states", l.states},
                          {"spacing_error", l.spacing_error},
                          {"strength", l.strength},
                          {"strength_error", l.strength_error}});
        }
        report["polaron_check"] = {{"levels", lv},
                                   {"expected_strength", r.expected_strength},
                                   {"lower_polariton_overlap", r.phi_minus_overlap},
                                   {"passed", r.passed()}};
        summary += std::string("polaron decoupling check ") + (r.passed() ? "passed" : "failed") +
                   ", lower polariton overlap " + fixed(r.phi_minus_overlap, 5) + "\n";
    }
    out.add("analysis.json", report.dump(2) + "\n");
    out.add_metadata("catalog", catalog_json(s));
    add_dumps(out, c, s);
}

struct ValidationCase {
    const char* name;
    ModelParams params;
    unsigned vmax;
    unsigned spectators;
};

void validate_task(const RunConfig& c, OutputSet& out, std::string& summary)
{
    const std::vector<ValidationCase> cases{
        {"N=1 Huang-Rhys 0.5", ModelParams::resonant(1, 1.0, 0.5, 0.3, 0.2), 4, 0},
        {"N=2 no vibronic coupling", ModelParams::resonant(2, 1.0, 0.0, 0.3, 0.2), 3, 1},
        {"N=2 Huang-Rhys 0.5", ModelParams::resonant(2, 1.0, 0.5, 0.3, 0.2), 3, 1},
        {"N=3 two spectators", ModelParams::resonant(3, 1.0, 0.5, 0.3, 0.2), 3, 2},
        {"N=3 one spectator", ModelParams::resonant(3, 1.0, 0.5, 0.3, 0.2), 3, 1},
    };
    CsvTable table({"case", "exhaustive", "eigenvalues", "photon_elements", "dipole_elements", "decay_rates",
                    "absorption", "photoluminescence"});
    summary = "oracle comparison (maximum deviations)\n";
    bool ok = true;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& v = cases[k];
        const auto d = oracle::full_transition_check(v.params, v.vmax, v.spectators);
        table.add_row({static_cast<double>(k), d.exhaustive ? 1.0 : 0.0, d.eigenvalues, d.photon_elements,
                       d.dipole_elements, d.decay_rates, d.absorption, d.photoluminescence});
        const bool pass = !d.exhaustive || d.max() < 1e-10;
        ok = ok && pass;
        summary += std::string("  ") + v.name + (d.exhaustive ? "" : " (truncated)") + ": " + format_number(d.max()) +
                   (d.exhaustive ? (pass ? "  ok\n" : "  FAILED\n") : "  convergence diagnostic\n");
    }

    const ModelParams p = validate_params(ModelParams::resonant(10, 2.4, 0.5, 1.0, 1.0));
    const TruncationParams t{c.truncation.total_quanta, 1};
    const Eigen::VectorXd full = eigh(assemble(enumerate(Manifold::one_excitation, p.n_molecules, t), p)).values;
    const Eigen::VectorXd blocks = merged_spectrum(build_symmetric_blocks(p, t)).values;
    const double block_dev = blocks.size() == full.size() ? (blocks - full).cwiseAbs().maxCoeff() : INFINITY;
    ok = ok && block_dev < 1e-9;
    summary += "symmetry blocks vs full catalog (N=10): " + format_number(block_dev) + (block_dev < 1e-9 ? "  ok\n" : "  FAILED\n");
    out.add("validate.csv", table.str());
    out.add_metadata("symmetry_block_deviation", block_dev);
    if (!ok) {
        throw NumericalError("validation failed:\n" + summary);
    }
}

} // namespace

OutputSet execute(const RunConfig& c)
{
    OutputSet out(c.output_dir, c.canonical);
    std::string summary;
    switch (c.task) {
    case Task::absorb:
    case Task::hotband:
        absorption_task(c, out, summary);
        break;
    case Task::pl:
        pl_task(c, out, summary);
        break;
    case Task::dispersion:
        dispersion_task(c, out, summary);
        break;
    case Task::eigen:
        eigen_task(c, out, summary);
        break;
    case Task::analyze:
        analyze_task(c, out, summary);
        break;
    case Task::validate:
        validate_task(c, out, summary);
        break;
    }
    out.add("summary.txt", summary);
    out.add_metadata("summary", summary);
    return out;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        const OutputSet files = execute(c);
        files.write();
        out << files.metadata().at("summary").get<std::string>();
        return exit_ok;
    } catch (const ParamError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const TruncationError& e) {
        err << "truncation error: " << e.what() << '\n';
        return exit_truncation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
}

} // namespace htc::app
