#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwl/coefficients.hpp"
#include "gwl/symbols.hpp"

namespace gwl {

inline constexpr const char* kVersion = "gwl 0.1.0";

/// Resolved experiment configuration, parsed from the line-oriented
/// `[section] key = value` format.  Unknown sections or keys are
/// rejected with the offending line number.
struct ExperimentConfig {
    // [experiment]
    std::string experiment;
    bool advisory = false;

    // [grid]
    int n_points = 256;
    double period = 6.283185307179586;
    double mu = 0.5;

    // [params]
    double s = 1.2;
    double s_prime = 1.5;
    int n_reg = 1;
    double alpha = 1.0;
    double tau = 0.2;
    double tau_prime = 0.1;
    double theta_margin = 0.5;
    double slack = 0.2;

    // [b]
    std::string b_family = "weierstrass";
    double b_c = 1.0;
    double b_t0 = 0.5;
    double b_eps0 = 0.1;
    double b_amp = 0.2;
    double b_omega = 3.0;
    int b_lambda = 3;
    int b_terms = 5;
    std::optional<double> b_T;  // defaults to t_end

    // [a]
    std::string a_family = "gevrey_bump";
    double a_c = 1.0;
    double a_c0 = 1.0;
    double a_order = 1.2;
    double a_radius = 0.7853981633974483;
    double a_center = 3.141592653589793;
    double a_amp = 1.0;
    double a_plus_constant = 0.0;

    // [solver]
    double epsilon = 0.0;
    double dt = 0.0;
    double cfl = 0.5;
    double t_end = 1.0;
    int snapshots = 9;
    bool enforce_support = true;

    // [sweep]
    std::vector<double> sweep_values;

    // [output]
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "json"};

    double regularity() const { return n_reg + alpha; }
    double coefficient_horizon() const { return b_T.value_or(std::max(t_end, 1.0)); }

    TimeCoefficient make_b() const;
    SpaceCoefficient make_a() const;
    GevreyParams make_params(double theta = 0.0) const;
};

/// Parses and validates a config file; all GevreyParams invariants are
/// re-checked here so bad files fail before any computation.
ExperimentConfig load_config(const std::string& path);

struct CheckResult {
    std::string name;
    bool passed;
    double value;
    double threshold;
    std::string detail;
};

struct ExperimentOutcome {
    std::string experiment;
    bool advisory = false;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;  // files written
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

std::vector<std::string> experiment_names();

/// Runs one experiment; writes CSV/JSON/SVG artifacts into the output
/// directory (GWL_OUTPUT_DIR overrides the configured one) and returns
/// the evaluated checks.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// CLI entry: parse, run, print one PASS/FAIL line per check.
/// Exit codes: 0 all pass, 1 failed check, 2 config error, 3 numeric error.
int run_cli(int argc, char** argv);

}  // namespace gwl
