#include "qhsusy/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Core>

namespace qhsusy {

using nlohmann::ordered_json;

namespace {

void write(std::ostringstream& os, const ordered_json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case ordered_json::value_t::number_float: {
            const double v = j.get<double>();
            os << (std::isfinite(v) ? format_17(v) : "null");
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad;
                write(os, item, indent, depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case ordered_json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << ordered_json(key).dump() << ": ";
                write(os, value, indent, depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        default: os << j.dump(); return;
    }
}

template <typename T>
ordered_json opt(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_num(const std::optional<double>& v) { return v ? format_shortest(*v) : ""; }

template <typename T>
std::string csv_count(const std::optional<T>& v) {
    return v ? std::to_string(*v) : "";
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out + "\n";
}

ordered_json header(const char* kind) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["versions"] = {{"qhsusy", kToolVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)}};
    return j;
}

}  // namespace

std::string format_17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_shortest(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string dump_json(const ordered_json& j, int indent) {
    std::ostringstream os;
    write(os, j, indent, 0);
    os << "\n";
    return os.str();
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["omega"] = cfg.omega;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["Omega"] = cfg.params().Omega;
    j["z_grid"] = cfg.z_grid;
    j["realization"] = realization_name(cfg.realization.kind);
    j["modes"] = cfg.realization.modes;
    j["cutoff"] = cfg.cutoff;
    j["margin"] = cfg.margin;
    j["checks"] = cfg.checks;
    ordered_json tol = ordered_json::object();
    for (const auto& name : registered_checks()) tol[name] = cfg.tolerance(name);
    j["tolerances"] = tol;
    j["format"] = format_name(cfg.output_format);
    j["workers"] = cfg.workers;
    j["timing"] = cfg.timing;
    return j;
}

ordered_json report_json(const VerificationReport& report) {
    ordered_json j = header("verify");
    j["basis_ordering"] = report.basis_ordering;
    j["complete"] = report.complete;
    j["abort"] = report.complete ? ordered_json(nullptr) : ordered_json(report.abort_message);
    j["config"] = config_json(report.config);
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json item;
        item["check"] = e.check;
        item["z"] = opt(e.z);
        item["status"] = status_name(e.status);
        item["residual"] = opt(e.residual);
        item["tolerance"] = e.tolerance;
        ordered_json details = ordered_json::array();
        for (const auto& d : e.details) {
            details.push_back({{"name", d.name}, {"residual", d.residual}, {"tolerance", d.tolerance}, {"pass", d.pass}});
        }
        item["details"] = details;
        item["note"] = e.note;
        if (report.config.timing) item["wall_time_s"] = opt(e.wall_time);
        entries.push_back(item);
    }
    j["entries"] = entries;
    const auto& s = report.summary;
    j["summary"] = {{"total", s.total},
                    {"pass", s.pass},
                    {"fail", s.fail},
                    {"metric_undefined", s.metric_undefined},
                    {"skipped", s.skipped}};
    return j;
}

std::string report_to_json(const VerificationReport& report) { return dump_json(report_json(report)); }

std::string report_to_csv(const VerificationReport& report) {
    std::string out = join({"check", "z", "status", "residual", "tolerance", "detail", "detail_residual",
                            "detail_tolerance", "detail_pass", "note"});
    for (const auto& e : report.entries) {
        const std::vector<std::string> head = {csv_field(e.check), csv_num(e.z), status_name(e.status),
                                               csv_num(e.residual), format_shortest(e.tolerance)};
        if (e.details.empty()) {
            auto row = head;
            row.insert(row.end(), {"", "", "", "", csv_field(e.note)});
            out += join(row);
        }
        for (const auto& d : e.details) {
            auto row = head;
            row.insert(row.end(), {csv_field(d.name), format_shortest(d.residual), format_shortest(d.tolerance),
                                   d.pass ? "true" : "false", csv_field(e.note)});
            out += join(row);
        }
    }
    return out;
}

std::string spectrum_to_json(const SpectrumTable& table) {
    ordered_json j = header("spectrum");
    j["complete"] = table.complete;
    j["abort"] = table.complete ? ordered_json(nullptr) : ordered_json(table.abort_message);
    j["config"] = config_json(table.config);
    j["levels"] = table.levels;
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"z", r.z},
                        {"operator", r.op},
                        {"status", r.status},
                        {"level", r.level},
                        {"eigenvalue", opt(r.eigenvalue)},
                        {"predicted", opt(r.predicted)},
                        {"abs_deviation", opt(r.abs_deviation)},
                        {"multiplicity", opt(r.multiplicity)},
                        {"predicted_multiplicity", opt(r.predicted_multiplicity)},
                        {"warning", r.warning}});
    }
    j["rows"] = rows;
    return dump_json(j);
}

std::string spectrum_to_csv(const SpectrumTable& table) {
    std::string out = join({"z", "operator", "status", "level", "eigenvalue", "predicted", "abs_deviation",
                            "multiplicity", "predicted_multiplicity", "warning"});
    for (const auto& r : table.rows) {
        out += join({format_shortest(r.z), r.op, r.status, std::to_string(r.level), csv_num(r.eigenvalue),
                     csv_num(r.predicted), csv_num(r.abs_deviation), csv_count(r.multiplicity),
                     csv_count(r.predicted_multiplicity), r.warning ? "true" : "false"});
    }
    return out;
}

std::string sweep_to_json(const SweepTable& table) {
    ordered_json j = header("sweep");
    j["config"] = config_json(table.config);
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"z", r.z},
                        {"status", r.status},
                        {"epsilon", opt(r.epsilon)},
                        {"theta", opt(r.theta)},
                        {"mu", opt(r.mu)},
                        {"nu", opt(r.nu)},
                        {"sigma", opt(r.sigma)},
                        {"tau", opt(r.tau)},
                        {"varphi", opt(r.varphi)},
                        {"chi", opt(r.chi)},
                        {"p", opt(r.p)},
                        {"q", opt(r.q)},
                        {"pprime", opt(r.pprime)},
                        {"qprime", opt(r.qprime)},
                        {"closure_residual", opt(r.closure_residual)},
                        {"special_case_deviation", opt(r.special_case_deviation)},
                        {"note", r.note}});
    }
    j["rows"] = rows;
    return dump_json(j);
}

std::string sweep_to_csv(const SweepTable& table) {
    std::string out = join({"z", "status", "epsilon", "theta", "mu", "nu", "sigma", "tau", "varphi", "chi", "p", "q",
                            "pprime", "qprime", "closure_residual", "special_case_deviation", "note"});
    for (const auto& r : table.rows) {
        out += join({format_shortest(r.z), r.status, csv_num(r.epsilon), csv_num(r.theta), csv_num(r.mu),
                     csv_num(r.nu), csv_num(r.sigma), csv_num(r.tau), csv_num(r.varphi), csv_num(r.chi), csv_num(r.p),
                     csv_num(r.q), csv_num(r.pprime), csv_num(r.qprime), csv_num(r.closure_residual),
                     csv_num(r.special_case_deviation), csv_field(r.note)});
    }
    return out;
}

}  // namespace qhsusy
