// config.hpp: Run configuration for the command-line driver

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "htc/basis.hpp"
#include "htc/model.hpp"
#include "htc/spectra.hpp"

namespace htc::app {

enum class Task { absorb, pl, hotband, dispersion, eigen, analyze, validate };

Task parse_task(std::string_view name);
std::string_view task_name(Task task);

struct GridSpec {
    double lo{-3.0};
    double hi{3.0};
    long points{1201};
};

struct AnalyzeSettings {
    double degeneracy_tolerance{1e-6};
    std::optional<std::pair<double, double>> critical_rabi_bracket;
    bool polaron_check{false};
};

struct RunConfig {
    Task task{Task::eigen};
    ModelParams model;
    TruncationParams truncation;
    GridSpec grid;

    PopulationKind distribution{PopulationKind::ground_only};
    double distribution_parameter{0.0};

    PhotoluminescenceOptions pl;
    bool cutoff_above_lp{false};  // pl.cutoff counts from the lowest eigenvalue

    GridSpec k_grid{0.0, 2.0, 201};
    bool use_symmetry{true};

    AnalyzeSettings analyze;

    std::string output_dir{"."};
    int threads{1};
    bool dump_basis{false};
    bool dump_matrix{false};

    /// Normalized JSON of everything above except the runtime-only fields
    /// (output_dir, threads, dump flags); its hash identifies the run.
    nlohmann::json canonical;
};

/// Parses a configuration document for `task`. Unknown keys, wrong types and missing
/// required fields throw ParamError with the offending JSON path.
RunConfig parse_config(const nlohmann::json& doc, Task task);

/// Configuration of a run with no config file (validate).
RunConfig default_config(Task task);

/// Reads and parses `path`; throws ParamError when unreadable or malformed.
nlohmann::json load_json(const std::string& path);

} // namespace htc::app
