#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhsusy/realizations.hpp"
#include "qhsusy/swanson_metric.hpp"

namespace qhsusy {

enum class OutputFormat { Json, Csv };

std::string format_name(OutputFormat f);
OutputFormat parse_format(const std::string& name);

/// Registered verification suites, in report order.
const std::vector<std::string>& registered_checks();
bool is_registered_check(const std::string& name);
double default_tolerance(const std::string& check);

struct RunConfig {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> z_grid;
    RealizationSpec realization;
    std::size_t cutoff = 80;
    std::size_t margin = 16;
    std::vector<std::string> checks;         // ordered as registered_checks()
    std::map<std::string, double> tolerances;  // resolved for every registered check
    std::string output_path;                  // empty: stdout
    OutputFormat output_format = OutputFormat::Json;
    unsigned workers = 1;
    bool timing = false;  // adds wall times to the report (breaks byte-determinism)

    SwansonParams params() const;
    double tolerance(const std::string& check) const;
};

/// Parses the YAML config. ConfigError names the offending line and field, or the violated invariant.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Evenly spaced grid with exact endpoints.
std::vector<double> linspace(double start, double stop, std::size_t count);

}  // namespace qhsusy
