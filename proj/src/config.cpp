#include "qhsusy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace qhsusy {

namespace {

const std::vector<std::pair<std::string, double>>& check_registry() {
    static const std::vector<std::pair<std::string, double>> registry = {
        {"relations", 1e-10},     {"hermiticity", 1e-10},       {"coeff_identities", 1e-12},
        {"special_cases", 1e-10}, {"limits", 1e-5},             {"spectrum_h", 1e-6},
        {"spectrum_hS", 1e-8},    {"quasi_hermiticity", 1e-8},  {"intertwining", 1e-8},
        {"pseudo_susy", 1e-8},    {"nilpotency", 1e-13},        {"factorization", 1e-8},
        {"bch", 1e-8},            {"bogoliubov", 1e-8},         {"xp_form", 1e-10},
        {"supercharges", 1e-9},
    };
    return registry;
}

const std::set<std::string> kKnownKeys = {"omega",  "alpha",     "beta",   "z_grid", "realization",
                                          "modes",  "cutoff",    "margin", "checks", "tolerances",
                                          "output", "format",    "workers", "timing"};

std::string where(const YAML::Node& node, const std::string& field) {
    const auto m = node.Mark();
    if (m.is_null()) return "field '" + field + "'";
    return "line " + std::to_string(m.line + 1) + ", field '" + field + "'";
}

template <typename T>
T read(const YAML::Node& node, const std::string& field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(where(node, field) + ": cannot convert '" + YAML::Dump(node) + "'");
    }
}

double read_real(const YAML::Node& node, const std::string& field) {
    const double v = read<double>(node, field);
    if (!std::isfinite(v)) throw ConfigError(where(node, field) + ": value must be finite");
    return v;
}

std::size_t read_count(const YAML::Node& node, const std::string& field) {
    const long long v = read<long long>(node, field);
    if (v < 0) throw ConfigError(where(node, field) + ": value must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<double> read_grid(const YAML::Node& node) {
    std::vector<double> grid;
    if (node.IsSequence()) {
        for (std::size_t i = 0; i < node.size(); ++i) grid.push_back(read_real(node[i], "z_grid"));
    } else if (node.IsMap()) {
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            if (key != "start" && key != "stop" && key != "count") {
                throw ConfigError(where(kv.first, "z_grid." + key) + ": unknown key (expected start, stop, count)");
            }
        }
        if (!node["start"] || !node["stop"] || !node["count"]) {
            throw ConfigError(where(node, "z_grid") + ": range form needs start, stop and count");
        }
        const auto count = read_count(node["count"], "z_grid.count");
        grid = linspace(read_real(node["start"], "z_grid.start"), read_real(node["stop"], "z_grid.stop"), count);
    } else if (node.IsScalar()) {
        grid.push_back(read_real(node, "z_grid"));
    } else {
        throw ConfigError(where(node, "z_grid") + ": expected a list or a {start, stop, count} map");
    }
    if (grid.empty()) throw ConfigError(where(node, "z_grid") + ": z_grid must be nonempty");
    for (double z : grid) {
        if (z < -1.0 || z > 1.0) {
            std::ostringstream os;
            os << where(node, "z_grid") << ": z = " << z << " is outside [-1, 1]";
            throw ConfigError(os.str());
        }
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw ConfigError(where(node, "z_grid") + ": z_grid must be strictly increasing");
    }
    return grid;
}

}  // namespace

std::string format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw ConfigError("unknown output format '" + name + "' (expected json or csv)");
}

const std::vector<std::string>& registered_checks() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, tol] : check_registry()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_registered_check(const std::string& name) {
    const auto& names = registered_checks();
    return std::find(names.begin(), names.end(), name) != names.end();
}

double default_tolerance(const std::string& check) {
    for (const auto& [name, tol] : check_registry()) {
        if (name == check) return tol;
    }
    throw ConfigError("unknown check '" + check + "'");
}

SwansonParams RunConfig::params() const { return SwansonParams::make(omega, alpha, beta); }

double RunConfig::tolerance(const std::string& check) const {
    const auto it = tolerances.find(check);
    return it == tolerances.end() ? default_tolerance(check) : it->second;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {start};
    std::vector<double> out(count);
    // Weighted form keeps symmetric grids symmetric and hits decimal nodes like 0.4 exactly.
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i);
        out[i] = (start * (last - t) + stop * t) / last;
    }
    out.back() = stop;
    return out;
}

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) throw ConfigError("config must be a key/value mapping");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kKnownKeys.count(key)) throw ConfigError(where(kv.first, key) + ": unknown key");
    }

    RunConfig cfg;
    for (const char* key : {"omega", "alpha", "beta", "z_grid"}) {
        if (!root[key]) throw ConfigError(std::string("missing required field '") + key + "'");
    }
    cfg.omega = read_real(root["omega"], "omega");
    cfg.alpha = read_real(root["alpha"], "alpha");
    cfg.beta = read_real(root["beta"], "beta");
    try {
        (void)cfg.params();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid Swanson parameters: ") + e.what());
    }
    cfg.z_grid = read_grid(root["z_grid"]);

    RealizationKind kind = RealizationKind::SingleMode;
    if (root["realization"]) {
        try {
            kind = parse_realization_kind(read<std::string>(root["realization"], "realization"));
        } catch (const ParameterError& e) {
            throw ConfigError(where(root["realization"], "realization") + ": " + e.what());
        }
    }
    const bool multimode = kind != RealizationKind::SingleMode;
    cfg.cutoff = root["cutoff"] ? read_count(root["cutoff"], "cutoff") : (multimode ? 8 : 80);
    cfg.margin = root["margin"] ? read_count(root["margin"], "margin") : (multimode ? 4 : 16);
    std::size_t modes = kind == RealizationKind::SingleMode ? 1 : (kind == RealizationKind::SpinOrbit ? 3 : 2);
    if (root["modes"]) {
        if (kind != RealizationKind::NMode) throw ConfigError(where(root["modes"], "modes") + ": only valid for n_mode");
        modes = read_count(root["modes"], "modes");
    }
    cfg.realization = {kind, modes, cfg.cutoff};
    try {
        cfg.realization.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid realization: ") + e.what());
    }
    if (cfg.margin >= cfg.cutoff) {
        throw ConfigError("margin " + std::to_string(cfg.margin) + " must be below cutoff " + std::to_string(cfg.cutoff));
    }
    try {
        (void)realization_layout(cfg.realization);
    } catch (const LayoutError& e) {
        throw ConfigError(std::string("realization too large: ") + e.what());
    }

    std::set<std::string> selected;
    if (root["checks"]) {
        const auto node = root["checks"];
        if (!node.IsSequence()) throw ConfigError(where(node, "checks") + ": expected a list of check names");
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto name = read<std::string>(node[i], "checks");
            if (!is_registered_check(name)) throw ConfigError(where(node[i], "checks") + ": unknown check '" + name + "'");
            selected.insert(name);
        }
        if (selected.empty()) throw ConfigError(where(node, "checks") + ": at least one check is required");
    }
    for (const auto& name : registered_checks()) {
        if (selected.empty() || selected.count(name)) cfg.checks.push_back(name);
        cfg.tolerances[name] = default_tolerance(name);
    }
    if (root["tolerances"]) {
        const auto node = root["tolerances"];
        if (!node.IsMap()) throw ConfigError(where(node, "tolerances") + ": expected a map of check name to tolerance");
        for (const auto& kv : node) {
            const auto name = kv.first.as<std::string>();
            if (!is_registered_check(name)) {
                throw ConfigError(where(kv.first, "tolerances." + name) + ": unknown check '" + name + "'");
            }
            const double tol = read_real(kv.second, "tolerances." + name);
            if (!(tol > 0.0)) throw ConfigError(where(kv.second, "tolerances." + name) + ": tolerance must be positive");
            cfg.tolerances[name] = tol;
        }
    }

    if (root["output"]) cfg.output_path = read<std::string>(root["output"], "output");
    if (root["format"]) cfg.output_format = parse_format(read<std::string>(root["format"], "format"));
    if (root["workers"]) {
        const auto w = read_count(root["workers"], "workers");
        if (w == 0 || w > 256) throw ConfigError(where(root["workers"], "workers") + ": workers must be in 1..256");
        cfg.workers = static_cast<unsigned>(w);
    }
    if (root["timing"]) cfg.timing = read<bool>(root["timing"], "timing");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace qhsusy
