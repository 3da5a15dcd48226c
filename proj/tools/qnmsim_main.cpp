// qnmsim: config-driven experiment runner for the open-system noise maps.
//
// Exit codes: 0 ok, 2 config error, 3 numeric rejection, 4 IO error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qnm/errors.hpp"
#include "qnm/experiments.hpp"
#include "qnm/kernels.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qnmsim: second-order open-system noise maps for driven qubit registers"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    bool machine = false;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("-o,--output", output_override, "output directory (overrides config)");

    CLI::App* list = app.add_subcommand("list", "list available experiments");
    list->add_flag("--csv", machine, "machine-readable single-column CSV");

    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    validate->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            if (machine) {
                std::cout << "experiment\n";
                for (const auto& e : qnm::experiment_list()) std::cout << e.name << "\n";
            } else {
                for (const auto& e : qnm::experiment_list())
                    std::printf("%-20s %s\n", e.name.c_str(), e.description.c_str());
            }
            return 0;
        }
        const qnm::Config cfg = qnm::Config::load(config_path);
        if (validate->parsed()) {
            qnm::validate_experiment_config(cfg);
            std::cout << "ok: " << cfg.str("experiment") << "\n";
            return 0;
        }
        std::string outdir = output_override.empty()
                                 ? cfg.str_or("output_dir", "out/" + cfg.str("experiment"))
                                 : output_override;
        const int workers = qnm::worker_count_from_env();
        qnm::run_experiment(cfg, outdir, workers);
        std::cout << "wrote " << outdir << " (" << qnm::kernels::active_isa()
                  << " kernels, " << workers << " workers)\n";
        return 0;
    } catch (const qnm::Rejection& r) {
        std::cerr << "error: " << r.what() << "\n";
        return static_cast<int>(r.kind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
