// Command-line driver for the spin-boson solver.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbm/cli.hpp"

namespace {

struct Flag {
    const char* key;
    const char* name;
    const char* help;
};

const std::vector<Flag> kFlags{
    {"s", "-s,--s", "spectral exponent, 0 < s <= 1"},
    {"alpha", "-a,--alpha", "dimensionless coupling"},
    {"omega_s", "--omega-s", "auxiliary scale in units of omega_c (default 0.01)"},
    {"delta", "-d,--delta", "bare tunneling in units of omega_c"},
    {"delta_over_omega_s", "--delta-ratio", "bare tunneling as the ratio delta/omega_s"},
    {"t_max", "--t-max", "time window (default 10/delta_r)"},
    {"n_t", "--n-t", "number of time samples"},
    {"omega_min", "--omega-min", "lowest frequency of the spectrum grid"},
    {"omega_max", "--omega-max", "highest frequency of the spectrum grid"},
    {"n_omega", "--n-omega", "number of frequency samples"},
    {"delta_min", "--delta-min", "phase diagram: smallest delta"},
    {"delta_max", "--delta-max", "phase diagram: largest delta"},
    {"delta_per_decade", "--per-decade", "phase diagram: grid points per decade"},
    {"n_modes", "--n-modes", "oracle: number of bath modes"},
    {"output", "-o,--output", "output file (default: standard output)"},
    {"format", "--format", "csv or json"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-boson dynamics by unitary-transformation perturbation theory"};
    app.set_version_flag("--version", std::string(sbm::cli::kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("-c,--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& f : kFlags) options[f.key] = app.add_option(f.name, values[f.key], f.help);

    const std::vector<std::pair<const char*, const char*>> commands{
        {"eta", "renormalization factor, phase and alpha_l"},
        {"dynamics", "P(t) and C(t) curves"},
        {"spectrum", "C(omega), chi''(omega), S(omega), R(omega), gamma(omega)"},
        {"shiba", "chi0, Shiba ratio and sum rule"},
        {"phase-diagram", "alpha_l, alpha_c, alpha_c* against delta, with power-law fits"},
        {"oracle-check", "discretized-bath comparison of P(t)"},
        {"table1", "Shiba and sum-rule report for the reference parameter table"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    sbm::cli::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw sbm::cli::IoError("cannot open config file '" + config_path + "'");
            sbm::cli::parse_config_text(cfg, in, config_path);
        }
        cfg.subcommand = sbm::cli::parse_subcommand(app.get_subcommands().front()->get_name());
        for (const auto& f : kFlags)
            if (options[f.key]->count() > 0) sbm::cli::apply_setting(cfg, f.key, values[f.key], options[f.key]->get_name());
        sbm::cli::finalize(cfg);
    } catch (const sbm::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sbm::cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return sbm::cli::run(cfg, std::cout, std::cerr);
}
