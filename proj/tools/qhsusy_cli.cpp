#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qhsusy/config.hpp"
#include "qhsusy/runner.hpp"
#include "qhsusy/serialize.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;

struct CommonOptions {
    std::string config_path;
    std::string output;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("config", opts.config_path, "YAML run configuration")->required();
    cmd->add_option("--output,-o", opts.output, "Output path (default: config 'output' or stdout)");
    cmd->add_option("--format,-f", opts.format, "json or csv (default: config 'format')")
        ->check(CLI::IsMember({"json", "csv"}));
}

qhsusy::RunConfig resolve(const CommonOptions& opts) {
    auto cfg = qhsusy::load_config(opts.config_path);
    if (!opts.output.empty()) cfg.output_path = opts.output;
    if (!opts.format.empty()) cfg.output_format = qhsusy::parse_format(opts.format);
    return cfg;
}

void emit(const qhsusy::RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw qhsusy::ConfigError("cannot write output file '" + cfg.output_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suite for quasi-Hermitian supersymmetric extensions of the Swanson oscillator"};
    app.require_subcommand(1);

    CommonOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "Run the configured verification checks");
    add_common(verify, verify_opts);

    CommonOptions spectrum_opts;
    std::size_t levels = 6;
    auto* spectrum = app.add_subcommand("spectrum", "Tabulate the low spectra of h and h_S");
    add_common(spectrum, spectrum_opts);
    spectrum->add_option("--levels,-n", levels, "Number of levels per operator")->check(CLI::PositiveNumber);

    CommonOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Tabulate metric and supercharge coefficients over z_grid");
    add_common(sweep, sweep_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*verify) {
            const auto cfg = resolve(verify_opts);
            const auto report = qhsusy::run_verify(cfg);
            emit(cfg, cfg.output_format == qhsusy::OutputFormat::Json ? qhsusy::report_to_json(report)
                                                                      : qhsusy::report_to_csv(report));
            const auto& s = report.summary;
            std::cerr << "verify: " << s.pass << " pass, " << s.fail << " fail, " << s.metric_undefined
                      << " metric_undefined, " << s.skipped << " skipped";
            if (!report.complete) std::cerr << "; aborted: " << report.abort_message;
            std::cerr << "\n";
            return qhsusy::exit_code(report);
        }
        if (*spectrum) {
            const auto cfg = resolve(spectrum_opts);
            const auto table = qhsusy::run_spectrum(cfg, levels);
            emit(cfg, cfg.output_format == qhsusy::OutputFormat::Json ? qhsusy::spectrum_to_json(table)
                                                                      : qhsusy::spectrum_to_csv(table));
            if (!table.complete) {
                std::cerr << "spectrum aborted: " << table.abort_message << "\n";
                return kExitAbort;
            }
            return 0;
        }
        const auto cfg = resolve(sweep_opts);
        const auto table = qhsusy::run_sweep(cfg);
        emit(cfg, cfg.output_format == qhsusy::OutputFormat::Json ? qhsusy::sweep_to_json(table)
                                                                  : qhsusy::sweep_to_csv(table));
        return 0;
    } catch (const qhsusy::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qhsusy::Error& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitAbort;
    }
}
