#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhsusy/config.hpp"
#include "qhsusy/report.hpp"

namespace qhsusy {

enum class EntryStatus { Pass, Fail, MetricUndefined, Skipped };

std::string status_name(EntryStatus s);

struct ReportEntry {
    std::string check;
    std::optional<double> z;         // nullopt for z-independent checks
    EntryStatus status = EntryStatus::Pass;  // recomputed from details unless skipped or undefined
    std::optional<double> residual;  // worst detail residual
    double tolerance = 0.0;
    ReportFragment details;
    std::string note;
    std::optional<double> wall_time;  // seconds, only with timing enabled
};

struct ReportSummary {
    std::size_t total = 0;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t metric_undefined = 0;
    std::size_t skipped = 0;
};

struct VerificationReport {
    RunConfig config;
    std::string basis_ordering;
    std::vector<ReportEntry> entries;
    ReportSummary summary;
    bool complete = true;
    std::string abort_message;
};

/// Checks evaluated once per run rather than per grid point.
bool is_z_independent(const std::string& check);

VerificationReport run_verify(const RunConfig& config);
ReportSummary summarize(const std::vector<ReportEntry>& entries);

/// 0 all pass, 1 any fail, 3 numerical abort.
int exit_code(const VerificationReport& report);

struct SpectrumRow {
    double z = 0.0;
    std::string op;      // "h" or "h_S"
    std::string status;  // "ok" or "metric_undefined"
    std::size_t level = 0;
    std::optional<double> eigenvalue;  // cluster mean
    std::optional<double> predicted;
    std::optional<double> abs_deviation;
    std::optional<std::size_t> multiplicity;
    std::optional<std::size_t> predicted_multiplicity;
    bool warning = false;  // level beyond the safe bound cutoff / 4
};

struct SpectrumTable {
    RunConfig config;
    std::size_t levels = 0;
    std::vector<SpectrumRow> rows;
    bool complete = true;
    std::string abort_message;
};

SpectrumTable run_spectrum(const RunConfig& config, std::size_t n_levels);

struct SweepRow {
    double z = 0.0;
    std::string status;  // "valid", "metric_undefined" or "invalid"
    std::string note;
    std::optional<double> epsilon, theta, mu, nu;
    std::optional<double> sigma, tau, varphi, chi;
    std::optional<double> p, q, pprime, qprime;
    std::optional<double> closure_residual;
    std::optional<double> special_case_deviation;  // only at z in {-1, 0, 1}
};

struct SweepTable {
    RunConfig config;
    std::vector<SweepRow> rows;
};

SweepTable run_sweep(const RunConfig& config);

/// Predicted degeneracy of the level n Omega of h_S for `modes` boson-fermion pairs.
std::size_t predicted_hS_multiplicity(std::size_t modes, std::size_t level);

}  // namespace qhsusy
