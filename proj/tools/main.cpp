#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlocal/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"n-local star and chain network scores for two-qubit sources"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool json_output = false;

    CLI::App* score = app.add_subcommand("score", "score an ensemble/strategy config");
    score->add_option("--config", config_path, "JSON config file")->required();
    score->add_flag("--json", json_output, "machine-readable output");

    int certify_n = 2;
    int trials = 50;
    CLI::App* certify = app.add_subcommand("certify", "optimizer vs closed-form certification");
    certify->add_option("--n", certify_n, "source count (1-3)");
    certify->add_option("--trials", trials, "random ensembles per topology");
    certify->add_option("--seed", seed, "base seed");
    certify->add_flag("--json", json_output, "machine-readable output");

    nlocal::cli::SweepConfig sweep_config;
    std::string figure_name = "star_colored";
    std::string sweep_config_path;
    CLI::App* sweep = app.add_subcommand("sweep", "figure sweeps as CSV");
    sweep->add_option("--figure", figure_name,
                      "star_colored | star_constant_chsh | chain_colored | chain_white");
    sweep->add_option("--config", sweep_config_path, "JSON sweep config (flags override)");
    sweep->add_option("--n", sweep_config.n, "source count");
    sweep->add_option("--k", sweep_config.k, "damped source count (star_colored)");
    sweep->add_option("--points", sweep_config.points, "grid points");
    sweep->add_option("--out", out_path, "output CSV path (default stdout)");
    sweep->add_option("--seed", seed, "seed recorded in the CSV header");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nlocal::cli::kExitUsage;
    }

    if (score->parsed())
        return nlocal::cli::run_score(config_path, json_output, std::cout, std::cerr);

    if (certify->parsed())
        return nlocal::cli::run_certify(certify_n, trials, seed, json_output, std::cout, std::cerr);

    if (sweep->parsed()) {
        try {
            if (!sweep_config_path.empty()) {
                std::ifstream in(sweep_config_path);
                if (!in) {
                    std::cerr << "error: cannot open sweep config\n";
                    return nlocal::cli::kExitInvalid;
                }
                nlohmann::json j;
                in >> j;
                if (j.contains("figure")) figure_name = j["figure"].get<std::string>();
                if (j.contains("n")) sweep_config.n = j["n"].get<int>();
                if (j.contains("k")) sweep_config.k = j["k"].get<int>();
                if (j.contains("points")) sweep_config.points = j["points"].get<int>();
            }
            sweep_config.figure = nlocal::cli::figure_from_name(figure_name);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return nlocal::cli::kExitInvalid;
        }
        sweep_config.seed = seed;
        sweep_config.out_path = out_path;
        return nlocal::cli::run_sweep(sweep_config, std::cerr);
    }

    return nlocal::cli::kExitUsage;
}
