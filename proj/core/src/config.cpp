#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gwl/errors.hpp"
#include "gwl/experiments.hpp"

namespace gwl {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("line " + std::to_string(line) + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

const std::set<std::string> kExperiments = {
    "plancherel-check", "iia-bound",    "symbol-report", "compose-converge",
    "conjugation-check", "weight-residual", "energy-audit",  "propagation",
    "epsilon-study",    "threshold-scan"};

}  // namespace

std::vector<std::string> experiment_names() {
    return {kExperiments.begin(), kExperiments.end()};
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);

    ExperimentConfig cfg;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("line " + std::to_string(line) + ": malformed section header");
            section = s.substr(1, s.size() - 2);
            static const std::set<std::string> kSections = {"experiment", "grid", "params", "b",
                                                            "a",          "solver", "sweep", "output"};
            if (!kSections.count(section))
                throw ConfigError("line " + std::to_string(line) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key or value");

        auto unknown = [&]() -> ConfigError {
            return ConfigError("line " + std::to_string(line) + ": unknown key '" + key +
                               "' in [" + section + "]");
        };

        if (section == "experiment") {
            if (key == "name") {
                if (!kExperiments.count(val))
                    throw ConfigError("line " + std::to_string(line) + ": unknown experiment '" + val + "'");
                cfg.experiment = val;
            } else if (key == "advisory") {
                cfg.advisory = parse_bool(val, line);
            } else {
                throw unknown();
            }
        } else if (section == "grid") {
            if (key == "n_points") cfg.n_points = parse_int(val, line);
            else if (key == "period") cfg.period = parse_double(val, line);
            else if (key == "mu") cfg.mu = parse_double(val, line);
            else throw unknown();
        } else if (section == "params") {
            if (key == "s") cfg.s = parse_double(val, line);
            else if (key == "s_prime") cfg.s_prime = parse_double(val, line);
            else if (key == "n") cfg.n_reg = parse_int(val, line);
            else if (key == "alpha") cfg.alpha = parse_double(val, line);
            else if (key == "tau") cfg.tau = parse_double(val, line);
            else if (key == "tau_prime") cfg.tau_prime = parse_double(val, line);
            else if (key == "theta_margin") cfg.theta_margin = parse_double(val, line);
            else if (key == "slack") cfg.slack = parse_double(val, line);
            else throw unknown();
        } else if (section == "b") {
            if (key == "family") cfg.b_family = val;
            else if (key == "c") cfg.b_c = parse_double(val, line);
            else if (key == "t0") cfg.b_t0 = parse_double(val, line);
            else if (key == "eps0") cfg.b_eps0 = parse_double(val, line);
            else if (key == "amp") cfg.b_amp = parse_double(val, line);
            else if (key == "omega") cfg.b_omega = parse_double(val, line);
            else if (key == "lambda") cfg.b_lambda = parse_int(val, line);
            else if (key == "terms") cfg.b_terms = parse_int(val, line);
            else if (key == "T") cfg.b_T = parse_double(val, line);
            else throw unknown();
        } else if (section == "a") {
            if (key == "family") cfg.a_family = val;
            else if (key == "c") cfg.a_c = parse_double(val, line);
            else if (key == "c0") cfg.a_c0 = parse_double(val, line);
            else if (key == "order") cfg.a_order = parse_double(val, line);
            else if (key == "radius") cfg.a_radius = parse_double(val, line);
            else if (key == "center") cfg.a_center = parse_double(val, line);
            else if (key == "amp") cfg.a_amp = parse_double(val, line);
            else if (key == "plus_constant") cfg.a_plus_constant = parse_double(val, line);
            else throw unknown();
        } else if (section == "solver") {
            if (key == "epsilon") cfg.epsilon = parse_double(val, line);
            else if (key == "dt") cfg.dt = parse_double(val, line);
            else if (key == "cfl") cfg.cfl = parse_double(val, line);
            else if (key == "t_end") cfg.t_end = parse_double(val, line);
            else if (key == "snapshots") cfg.snapshots = parse_int(val, line);
            else if (key == "enforce_support") cfg.enforce_support = parse_bool(val, line);
            else throw unknown();
        } else if (section == "sweep") {
            if (key == "values") {
                cfg.sweep_values.clear();
                for (const auto& item : split_list(val))
                    cfg.sweep_values.push_back(parse_double(item, line));
            } else {
                throw unknown();
            }
        } else if (section == "output") {
            if (key == "directory") cfg.directory = val;
            else if (key == "formats") {
                cfg.formats = split_list(val);
                for (const auto& f : cfg.formats)
                    if (f != "csv" && f != "json" && f != "svg")
                        throw ConfigError("line " + std::to_string(line) + ": unknown format '" + f + "'");
            } else {
                throw unknown();
            }
        } else {
            throw ConfigError("line " + std::to_string(line) + ": key outside any section");
        }
    }
    if (cfg.experiment.empty()) throw ConfigError("config: missing [experiment] name");

    // re-validate every construction-time invariant now
    try {
        (void)cfg.make_params();
        (void)cfg.make_b();
        (void)cfg.make_a();
        Grid probe(cfg.n_points, cfg.period, cfg.mu);
        (void)probe;
    } catch (const ParamError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

TimeCoefficient ExperimentConfig::make_b() const {
    const double T = coefficient_horizon();
    if (b_family == "constant") return TimeCoefficient::constant(b_c, T);
    if (b_family == "monomial") return TimeCoefficient::monomial(b_t0, regularity(), T);
    if (b_family == "smooth_osc") return TimeCoefficient::smooth_osc(b_eps0, b_amp, b_omega, T);
    if (b_family == "weierstrass")
        return TimeCoefficient::weierstrass(b_lambda, regularity(), b_terms, T, b_amp);
    throw ParamError("unknown b family '" + b_family + "'");
}

SpaceCoefficient ExperimentConfig::make_a() const {
    SpaceCoefficient base = [&] {
        if (a_family == "constant") return SpaceCoefficient::constant(a_c, period);
        if (a_family == "trig_degenerate") return SpaceCoefficient::trig_degenerate(a_c0, period);
        if (a_family == "gevrey_bump")
            return SpaceCoefficient::gevrey_bump(a_order, a_radius, a_center, a_amp, period);
        throw ParamError("unknown a family '" + a_family + "'");
    }();
    if (a_plus_constant > 0.0)
        return SpaceCoefficient::sum({base, SpaceCoefficient::constant(a_plus_constant, period)});
    return base;
}

GevreyParams ExperimentConfig::make_params(double theta) const {
    return GevreyParams(s, s_prime, regularity(), mu, tau, theta);
}

}  // namespace gwl
