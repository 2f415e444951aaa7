// htc_spectra.cpp: Command-line driver: spectra, dispersion, eigen-systems and self-checks

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "htc/app/config.hpp"
#include "htc/app/run.hpp"
#include "htc/error.hpp"

int main(int argc, char** argv)
{
    using namespace htc::app;

    CLI::App cli{"Stationary spectra of the Holstein-Tavis-Cummings model", "htc-spectra"};
    cli.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    int threads = 1;
    bool dump_basis = false;
    bool dump_matrix = false;

    const char* tasks[][2] = {
        {"absorb", "cavity absorption from the configured ground-manifold population"},
        {"pl", "photoluminescence from a uniform excited population below the cutoff"},
        {"hotband", "absorption from vibrationally excited ground states"},
        {"dispersion", "eigenvalues and photon weights against in-plane wavevector"},
        {"eigen", "one-excitation eigenvalues, photon weights and decay rates"},
        {"analyze", "symmetry sectors, degeneracies, critical Rabi and polaron checks"},
        {"validate", "compare the engine against the brute-force reference model"},
    };
    for (const auto& [name, help] : tasks) {
        auto* sub = cli.add_subcommand(name, help);
        auto* cfg = sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        if (std::string(name) != "validate") {
            cfg->required();
        }
        sub->add_option("--output", output_dir, "output directory (overrides output_dir)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--dump-basis", dump_basis, "write the basis catalogs");
        sub->add_flag("--dump-matrix", dump_matrix, "write the Hamiltonian in coordinate form");
    }
    CLI11_PARSE(cli, argc, argv);

    const Task task = parse_task(cli.get_subcommands().front()->get_name());
    RunConfig config;
    try {
        config = config_path.empty() ? default_config(task) : parse_config(load_json(config_path), task);
    } catch (const htc::ParamError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const htc::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << '\n';
        return exit_truncation;
    }
    if (!output_dir.empty()) {
        config.output_dir = output_dir;
    }
    config.threads = threads;
    config.dump_basis = dump_basis;
    config.dump_matrix = dump_matrix;
    return run(config, std::cout, std::cerr);
}
