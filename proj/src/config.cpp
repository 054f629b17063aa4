#include "srgbode/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace srgbode {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError("invalid number for '" + key + "': " + value);
    return out;
}

long parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError("invalid integer for '" + key + "': " + value);
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::istringstream iss(value);
    std::string tok;
    while (iss >> tok) out.push_back(parse_double(key, tok));
    return out;
}

const std::set<std::string> kKnownKeys = {
    "system.num", "system.den",
    "nonlinearity.kind", "nonlinearity.limit", "nonlinearity.width",
    "grid.omega.min", "grid.omega.max", "grid.omega.count", "grid.omega.scale",
    "grid.omega.values",
    "grid.U.min", "grid.U.max", "grid.U.count", "grid.U.scale", "grid.U.values",
    "tau_steps", "bisection_tol", "bisection_max_iters",
    "harmonics.tail_rel_tol", "harmonics.k_cap",
    "geometry.tol",
    "sim.samples_per_period", "sim.steady_tol", "sim.max_periods",
    "validate.points", "validate.inputs_per_point", "validate.margin",
    "seed", "out.dir",
};

class KeyValueDoc {
public:
    explicit KeyValueDoc(const std::string& text) {
        std::istringstream lines(text);
        std::string line;
        int lineno = 0;
        while (std::getline(lines, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!kKnownKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
            if (entries_.count(key)) throw ConfigError("duplicate key '" + key + "'");
            entries_[key] = value;
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string require(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
        return it->second;
    }

    std::string get(const std::string& key, const std::string& fallback) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        return has(key) ? parse_double(key, entries_.at(key)) : fallback;
    }

    long get_int(const std::string& key, long fallback) const {
        return has(key) ? parse_int(key, entries_.at(key)) : fallback;
    }

private:
    std::map<std::string, std::string> entries_;
};

std::vector<double> build_grid(const KeyValueDoc& doc, const std::string& section,
                               bool positive) {
    const std::string values_key = section + ".values";
    std::vector<double> grid;
    if (doc.has(values_key)) {
        grid = parse_list(values_key, doc.require(values_key));
    } else {
        const double lo = parse_double(section + ".min", doc.require(section + ".min"));
        const double hi = parse_double(section + ".max", doc.require(section + ".max"));
        const long count = parse_int(section + ".count", doc.require(section + ".count"));
        const std::string scale = doc.get(section + ".scale", "log");
        if (count < 1) throw ConfigError("'" + section + ".count' must be >= 1");
        if (count == 1) {
            grid.push_back(lo);
        } else {
            if (!(hi > lo)) throw ConfigError("'" + section + "': max must exceed min");
            if (scale == "log") {
                if (!(lo > 0.0))
                    throw ConfigError("'" + section + "': log scale requires min > 0");
                const double ratio = hi / lo;
                for (long i = 0; i < count; ++i)
                    grid.push_back(lo * std::pow(ratio, static_cast<double>(i) / (count - 1)));
            } else if (scale == "linear") {
                for (long i = 0; i < count; ++i)
                    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
            } else {
                throw ConfigError("'" + section + ".scale' must be 'log' or 'linear'");
            }
        }
    }
    if (grid.empty()) throw ConfigError("'" + section + "': empty grid");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("'" + section + "': grid must be strictly increasing");
    if (positive && !(grid.front() > 0.0))
        throw ConfigError("'" + section + "': values must be > 0");
    if (!positive && !(grid.front() >= 0.0))
        throw ConfigError("'" + section + "': values must be >= 0");
    return grid;
}

Nonlinearity build_nonlinearity(const KeyValueDoc& doc) {
    const std::string kind = doc.require("nonlinearity.kind");
    if (kind == "sine") return Nonlinearity::sine();
    if (kind == "saturation") return Nonlinearity::saturation(doc.get_double("nonlinearity.limit", 1.0));
    if (kind == "deadzone") return Nonlinearity::deadzone(doc.get_double("nonlinearity.width", 1.0));
    if (kind == "identity") return Nonlinearity::identity();
    throw ConfigError("unknown nonlinearity.kind '" + kind +
                      "' (expected sine, saturation, deadzone or identity)");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    const KeyValueDoc doc(text);
    RunConfig rc;

    const auto num = parse_list("system.num", doc.require("system.num"));
    const auto den = parse_list("system.den", doc.require("system.den"));
    if (den.empty()) throw ConfigError("'system.den' must not be empty");
    if (num.empty()) throw ConfigError("'system.num' must not be empty");
    try {
        rc.analysis.system = TransferFunction(num, den);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("'system': ") + e.what());
    }

    rc.analysis.nonlinearity = build_nonlinearity(doc);
    rc.analysis.omega_grid = build_grid(doc, "grid.omega", true);
    rc.analysis.u_grid = build_grid(doc, "grid.U", false);

    rc.analysis.tau_steps = static_cast<int>(doc.get_int("tau_steps", 101));
    rc.analysis.bisection_tol = doc.get_double("bisection_tol", 1e-4);
    rc.analysis.bisection_max_iters = static_cast<int>(doc.get_int("bisection_max_iters", 60));
    rc.analysis.truncation.tail_rel_tol = doc.get_double("harmonics.tail_rel_tol", 1e-3);
    rc.analysis.truncation.k_cap = static_cast<int>(doc.get_int("harmonics.k_cap", 10001));
    rc.analysis.geometry_tol = doc.get_double("geometry.tol", 1e-9);

    rc.sim.samples_per_period = static_cast<int>(doc.get_int("sim.samples_per_period", 2000));
    rc.sim.steady_tol = doc.get_double("sim.steady_tol", 1e-6);
    rc.sim.max_periods = static_cast<int>(doc.get_int("sim.max_periods", 200));

    rc.validate_points = static_cast<int>(doc.get_int("validate.points", 5));
    rc.validate_inputs_per_point = static_cast<int>(doc.get_int("validate.inputs_per_point", 10));
    rc.validate_margin = doc.get_double("validate.margin", 0.01);
    rc.seed = static_cast<std::uint64_t>(doc.get_int("seed", 0));
    rc.out_dir = doc.get("out.dir", ".");

    try {
        rc.analysis.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace srgbode
