// config.cpp: JSON run configuration with strict key checking

#include "htc/app/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>
#include <utility>

#include "htc/error.hpp"

namespace htc::app {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Task, std::string_view>, 7> kTasks{{
    {Task::absorb, "absorb"},
    {Task::pl, "pl"},
    {Task::hotband, "hotband"},
    {Task::dispersion, "dispersion"},
    {Task::eigen, "eigen"},
    {Task::analyze, "analyze"},
    {Task::validate, "validate"},
}};

// Walks one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) {
            throw ParamError(path_ + ": expected an object");
        }
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    double number(const std::string& key, double fallback)
    {
        return has(key) ? number(key) : fallback;
    }

    double number(const std::string& key)
    {
        const json& v = take(key);
        if (!v.is_number()) {
            throw ParamError(where(key) + ": expected a number");
        }
        return v.get<double>();
    }

    long integer(const std::string& key, long fallback)
    {
        if (!has(key)) {
            return fallback;
        }
        const json& v = take(key);
        if (!v.is_number_integer()) {
            throw ParamError(where(key) + ": expected an integer");
        }
        return v.get<long>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        if (!has(key)) {
            return fallback;
        }
        const json& v = take(key);
        if (!v.is_boolean()) {
            throw ParamError(where(key) + ": expected true or false");
        }
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        if (!has(key)) {
            return fallback;
        }
        const json& v = take(key);
        if (!v.is_string()) {
            throw ParamError(where(key) + ": expected a string");
        }
        return v.get<std::string>();
    }

    Section child(const std::string& key) { return Section(take(key), where(key)); }

    std::string where(const std::string& key) const { return path_ + "." + key; }

    void finish() const
    {
        for (const auto& [key, value] : node_.items()) {
            if (!used_.count(key)) {
                throw ParamError(where(key) + ": unknown key");
            }
        }
    }

private:
    const json& take(const std::string& key)
    {
        if (!has(key)) {
            throw ParamError(where(key) + ": missing");
        }
        used_.insert(key);
        return node_.at(key);
    }

    const json& node_;
    std::string path_;
    std::set<std::string> used_;
};

unsigned non_negative(long v, const std::string& what)
{
    if (v < 0) {
        throw ParamError(what + ": must be >= 0");
    }
    return static_cast<unsigned>(v);
}

GridSpec parse_grid(Section s, const GridSpec& fallback)
{
    GridSpec g{s.number("lo", fallback.lo), s.number("hi", fallback.hi), s.integer("points", fallback.points)};
    s.finish();
    if (g.points < 2 || !(g.hi > g.lo)) {
        throw ParamError(s.where("points") + ": grids need hi > lo and at least two points");
    }
    return g;
}

ModelParams parse_model(Section s)
{
    ModelParams p;
    p.n_molecules = static_cast<int>(s.integer("n_molecules", 0));
    if (p.n_molecules < 1) {
        throw ParamError(s.where("n_molecules") + ": n_molecules must be >= 1");
    }
    const double root_n = std::sqrt(static_cast<double>(p.n_molecules));
    if (s.has("rabi_single") == s.has("rabi_collective")) {
        throw ParamError(s.where("rabi_collective") + ": give exactly one of rabi_single, rabi_collective");
    }
    p.rabi_single = s.has("rabi_single") ? s.number("rabi_single") : s.number("rabi_collective") / root_n;
    p.vib_freq = s.number("vib_freq", p.vib_freq);
    p.zero_phonon_freq = s.number("zero_phonon_freq", p.zero_phonon_freq);
    p.huang_rhys = s.number("huang_rhys", 0.0);
    p.cavity_freq_normal = s.number("cavity_freq_normal", p.zero_phonon_freq);
    p.kappa = s.number("kappa", 0.0);
    if (s.has("gamma0") && s.has("n_gamma0")) {
        throw ParamError(s.where("gamma0") + ": give at most one of gamma0, n_gamma0");
    }
    p.gamma0 = s.has("n_gamma0") ? s.number("n_gamma0") / p.n_molecules : s.number("gamma0", 0.0);
    p.k0 = s.number("k0", p.k0);
    s.finish();
    return validate_params(p);
}

PopulationKind parse_distribution(const std::string& name, const std::string& where)
{
    if (name == "ground_only") {
        return PopulationKind::ground_only;
    }
    if (name == "level") {
        return PopulationKind::level;
    }
    if (name == "thermal") {
        return PopulationKind::thermal;
    }
    throw ParamError(where + ": distribution must be ground_only, level or thermal");
}

json model_json(const ModelParams& p)
{
    return {{"n_molecules", p.n_molecules},
            {"rabi_single", p.rabi_single},
            {"vib_freq", p.vib_freq},
            {"zero_phonon_freq", p.zero_phonon_freq},
            {"huang_rhys", p.huang_rhys},
            {"cavity_freq_normal", p.cavity_freq_normal},
            {"kappa", p.kappa},
            {"gamma0", p.gamma0},
            {"k0", p.k0}};
}

json grid_json(const GridSpec& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}}; }

const char* distribution_name(PopulationKind k)
{
    switch (k) {
    case PopulationKind::ground_only:
        return "ground_only";
    case PopulationKind::level:
        return "level";
    case PopulationKind::thermal:
        return "thermal";
    }
    return "ground_only";
}

// Every setting that influences the numbers, in normalized form.
json canonical_json(const RunConfig& c)
{
    json j{{"task", task_name(c.task)},
           {"model", model_json(c.model)},
           {"truncation",
            {{"total_quanta", c.truncation.total_quanta},
             {"spectators", c.truncation.spectators},
             {"max_states", c.truncation.max_states}}}};
    switch (c.task) {
    case Task::absorb:
    case Task::hotband:
        j["grid"] = grid_json(c.grid);
        j["absorption"] = {{"distribution", distribution_name(c.distribution)},
                           {"parameter", c.distribution_parameter}};
        break;
    case Task::pl:
        j["grid"] = grid_json(c.grid);
        j["pl"] = {{"cutoff", c.pl.cutoff},
                   {"cutoff_above_lp", c.cutoff_above_lp},
                   {"max_final_quanta", c.pl.max_final_quanta},
                   {"weighting", c.pl.weighting == PopulationWeighting::per_level ? "per_level" : "per_eigenstate"},
                   {"level_tolerance", c.pl.level_tolerance}};
        break;
    case Task::dispersion:
        j["dispersion"] = {{"k", grid_json(c.k_grid)}, {"use_symmetry", c.use_symmetry}};
        break;
    case Task::analyze:
        j["analyze"] = {{"degeneracy_tolerance", c.analyze.degeneracy_tolerance},
                        {"polaron_check", c.analyze.polaron_check}};
        if (c.analyze.critical_rabi_bracket) {
            j["analyze"]["critical_rabi"] = {{"lo", c.analyze.critical_rabi_bracket->first},
                                             {"hi", c.analyze.critical_rabi_bracket->second}};
        }
        break;
    case Task::eigen:
    case Task::validate:
        break;
    }
    return j;
}

} // namespace

Task parse_task(std::string_view name)
{
    for (const auto& [task, text] : kTasks) {
        if (text == name) {
            return task;
        }
    }
    throw ParamError("unknown task '" + std::string(name) + "'");
}

std::string_view task_name(Task task)
{
    for (const auto& [t, text] : kTasks) {
        if (t == task) {
            return text;
        }
    }
    return "unknown";
}

RunConfig parse_config(const json& doc, Task task)
{
    Section root(doc, "config");
    RunConfig c;
    c.task = task;
    if (root.has("task") && parse_task(root.text("task", "")) != task) {
        throw ParamError("config.task: does not match the requested task '" + std::string(task_name(task)) + "'");
    }
    c.model = parse_model(root.child("model"));
    if (root.has("truncation")) {
        Section t = root.child("truncation");
        c.truncation.total_quanta = non_negative(t.integer("total_quanta", c.truncation.total_quanta),
                                                 t.where("total_quanta"));
        c.truncation.spectators = non_negative(t.integer("spectators", c.truncation.spectators), t.where("spectators"));
        const long cap = t.integer("max_states", static_cast<long>(c.truncation.max_states));
        if (cap < 1) {
            throw ParamError(t.where("max_states") + ": must be >= 1");
        }
        c.truncation.max_states = static_cast<std::size_t>(cap);
        t.finish();
    }
    validate_truncation(c.truncation, c.model.n_molecules);

    if (root.has("grid")) {
        c.grid = parse_grid(root.child("grid"), c.grid);
    }
    // absorb reads "absorption" (default ground_only); hotband reads "hotband" (default level 1).
    for (const auto& [key, kind, parameter] :
         {std::tuple{"absorption", PopulationKind::ground_only, 0.0}, std::tuple{"hotband", PopulationKind::level, 1.0}}) {
        PopulationKind k = kind;
        double value = parameter;
        if (root.has(key)) {
            Section a = root.child(key);
            k = parse_distribution(a.text("distribution", distribution_name(kind)), a.where("distribution"));
            value = a.number("parameter", parameter);
            a.finish();
        }
        if ((task == Task::hotband) == (std::string_view(key) == "hotband")) {
            c.distribution = k;
            c.distribution_parameter = value;
        }
    }
    if (root.has("pl")) {
        Section s = root.child("pl");
        c.pl.cutoff = s.number("cutoff", c.pl.cutoff);
        c.cutoff_above_lp = s.boolean("cutoff_above_lp", c.cutoff_above_lp);
        c.pl.max_final_quanta = static_cast<int>(non_negative(s.integer("max_final_quanta", 2), s.where("max_final_quanta")));
        const std::string weighting = s.text("weighting", "per_level");
        if (weighting == "per_level") {
            c.pl.weighting = PopulationWeighting::per_level;
        } else if (weighting == "per_eigenstate") {
            c.pl.weighting = PopulationWeighting::per_eigenstate;
        } else {
            throw ParamError(s.where("weighting") + ": must be per_level or per_eigenstate");
        }
        c.pl.level_tolerance = s.number("level_tolerance", c.pl.level_tolerance);
        if (!(c.pl.level_tolerance > 0.0)) {
            throw ParamError(s.where("level_tolerance") + ": must be positive");
        }
        s.finish();
    } else {
        c.pl.max_final_quanta = 2;
    }
    if (root.has("dispersion")) {
        Section d = root.child("dispersion");
        if (d.has("k")) {
            c.k_grid = parse_grid(d.child("k"), c.k_grid);
        }
        c.use_symmetry = d.boolean("use_symmetry", c.use_symmetry);
        d.finish();
        if (c.k_grid.lo < 0.0) {
            throw ParamError("config.dispersion.k.lo: wavevectors must be >= 0");
        }
    }
    if (root.has("analyze")) {
        Section a = root.child("analyze");
        c.analyze.degeneracy_tolerance = a.number("degeneracy_tolerance", c.analyze.degeneracy_tolerance);
        c.analyze.polaron_check = a.boolean("polaron_check", false);
        if (a.has("critical_rabi")) {
            Section r = a.child("critical_rabi");
            c.analyze.critical_rabi_bracket = std::make_pair(r.number("lo"), r.number("hi"));
            r.finish();
        }
        a.finish();
    }
    c.use_symmetry = root.boolean("use_symmetry", c.use_symmetry);
    c.output_dir = root.text("output_dir", c.output_dir);
    root.finish();
    c.canonical = canonical_json(c);
    return c;
}

RunConfig default_config(Task task)
{
    RunConfig c;
    c.task = task;
    c.model = validate_params(ModelParams::resonant(2, 1.0, 0.5, 0.1, 0.1));
    c.truncation.total_quanta = 3;
    c.canonical = canonical_json(c);
    return c;
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParamError("cannot read config file " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParamError("config file " + path + " is not valid JSON: " + e.what());
    }
}

} // namespace htc::app
