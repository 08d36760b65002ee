#pragma once

#include <string>

#include <json.hpp>

#include "qhsusy/runner.hpp"

namespace qhsusy {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// printf("%.17g"); non-finite values are rendered as null by the JSON writer.
std::string format_17(double v);

/// Shortest representation that round-trips (std::to_chars).
std::string format_shortest(double v);

/// Indented JSON with every floating-point number written at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json config_json(const RunConfig& cfg);

nlohmann::ordered_json report_json(const VerificationReport& report);
std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

std::string spectrum_to_json(const SpectrumTable& table);
std::string spectrum_to_csv(const SpectrumTable& table);

std::string sweep_to_json(const SweepTable& table);
std::string sweep_to_csv(const SweepTable& table);

}  // namespace qhsusy
