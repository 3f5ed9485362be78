#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "campaigns.hpp"
#include "config.hpp"

namespace {

std::vector<std::size_t> parse_counts(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(item, &pos);
        if (pos != item.size() || v < 3) throw heis::cli::ConfigError("--grid expects n or n,n,n with n >= 3 odd");
        out.push_back(v);
    }
    if (out.empty()) throw heis::cli::ConfigError("--grid is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group spectral and variational experiments"};
    app.require_subcommand(1);
    std::string config_path, out_dir, grid;
    std::uint64_t seed = 0;
    double tau = 0.0, lambda = 0.0;
    for (const auto& verb : heis::cli::verbs()) {
        auto* sub = app.add_subcommand(verb, "run the " + verb + " campaign");
        sub->add_option("--config", config_path, "JSON experiment config");
        sub->add_option("--out", out_dir, "output directory (default: config output_dir, $HEIS_OUT_DIR, ./heis_out)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--grid", grid, "node counts n or n,n,n");
        sub->add_option("--tau", tau, "twisting parameter tau");
        sub->add_option("--lambda", lambda, "spectral / coupling parameter lambda");
    }
    CLI11_PARSE(app, argc, argv);
    const CLI::App* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();

    try {
        heis::cli::RunOptions opt;
        if (!config_path.empty()) opt.config = heis::cli::load_config(config_path);
        if (sub->count("--seed")) opt.seed = seed;
        if (sub->count("--grid")) opt.grid = parse_counts(grid);
        if (sub->count("--tau")) opt.tau = tau;
        if (sub->count("--lambda")) opt.lambda = lambda;
        opt.out_dir = heis::cli::resolve_out_dir(out_dir, opt.config);
        const auto result = heis::cli::run_campaign(verb, opt);
        heis::cli::write_outputs(result, opt.out_dir);
        std::cout << heis::cli::summary_text(result);
        if (result.validation_failed) return 2;
        return result.ok() ? 0 : 1;
    } catch (const heis::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
