// spinnet_cli.cpp — command-line front end: `generate` emits the network
// description document, `evolve` runs a configured schedule to CSV, and
// `verify` runs the built-in verification suite.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinnet/cli.hpp"
#include "spinnet/config.hpp"
#include "spinnet/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spinnet::ConfigError("config", "cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw spinnet::ConfigError("output", "cannot open file '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinnet — single-excitation dynamics on branched spin-chain networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
    double perturbation = 0.0;

    CLI::App* generate = app.add_subcommand(
        "generate", "Emit the network description (nodes, columns, couplings, leaf weights)");
    generate->add_option("--config", config_path, "experiment config (JSON)")->required();
    generate->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* evolve = app.add_subcommand(
        "evolve", "Run the configured schedule and write the CSV time series");
    evolve->add_option("--config", config_path, "experiment config (JSON)")->required();
    evolve->add_option("--out", out_path, "output path (default: stdout)");
    evolve->add_option("--seed", seed_override, "override the config seed");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the built-in verification suite and report pass/fail per check");
    verify->add_option("--out", out_path, "write the JSON summary here (default: stdout)");
    verify->add_option("--debug-perturb-coupling", perturbation,
                       "debug hook: scale the first coupling of every network by (1 + x)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (generate->parsed()) {
            const spinnet::ExperimentConfig config =
                spinnet::parse_config_text(read_file(config_path));
            write_output(out_path, spinnet::generate_document(config).dump(2) + "\n");
            return kExitOk;
        }
        if (evolve->parsed()) {
            spinnet::ExperimentConfig config =
                spinnet::parse_config_text(read_file(config_path));
            if (seed_override) config.seed = *seed_override;
            write_output(out_path, spinnet::evolve_csv(config));
            return kExitOk;
        }
        // verify
        const spinnet::VerifyReport report =
            spinnet::run_verification(spinnet::VerifyOptions{perturbation});
        for (const spinnet::VerifyCheck& check : report.checks) {
            std::ostringstream line;
            line.precision(3);
            line << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << "  residual="
                 << std::scientific << check.residual << "  threshold"
                 << (check.require_above ? ">" : "<=") << check.threshold;
            std::cout << line.str() << "\n";
        }
        const std::string summary = spinnet::verification_json(report).dump(2) + "\n";
        if (out_path.empty())
            std::cout << summary;
        else
            write_output(out_path, summary);
        return report.all_passed() ? kExitOk : kExitVerifyFailed;
    } catch (const spinnet::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
