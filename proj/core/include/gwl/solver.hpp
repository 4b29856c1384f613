#pragma once

#include "gwl/energy.hpp"

namespace gwl {

struct SolverConfig {
    double epsilon = 0.0;  // coefficient floor of the regularized problem
    double dt = 0.0;       // 0: derive from cfl and the propagation speed
    double cfl = 0.5;      // fraction of the spectral-leapfrog stability limit dx/c
    double t_end = 1.0;
    std::vector<double> snapshot_times;  // defaults to {0, t_end}
    bool enforce_support_containment = true;
    double support_center = std::numeric_limits<double>::quiet_NaN();  // default: argmax |u0|

    static std::vector<double> uniform_snapshots(double t_end, int count);
};

struct Trajectory {
    std::vector<WaveState> snapshots;
    SolverConfig config;
    double dt_used = 0.0;
    long steps = 0;
    double c_hat = 0.0;
};

/// c^ = sup sqrt((b + eps)(a + eps)); the sups separate since both
/// factors are nonnegative.
double max_speed(const TimeCoefficient& b, const SpaceCoefficient& a, double epsilon);

/// Leapfrog integration of  u_tt = d_x((b(t)+eps)(a(x)+eps) d_x u)
/// with spectral d_x.  ut0 is du/dt at t = 0.  Snapshot times must land
/// on integer steps; the step count is raised until they do.
/// Data spectra must decay below 1e-10 (relative) beyond half the
/// Nyquist frequency.
Trajectory solve(const Grid& g, const GridFunction& u0, const GridFunction& ut0,
                 const TimeCoefficient& b, const SpaceCoefficient& a, const SolverConfig& cfg);

/// Largest wrapped distance from center over nodes with |u| > threshold.
double support_radius(const Grid& g, const GridFunction& u, double center, double threshold);

struct EpsilonStudy {
    std::vector<double> eps;
    std::vector<double> diffs;  // weighted-seminorm distance of terminal states
    bool nonincreasing = false;
    double tau_weight = 0.0;  // exponent actually used (capped against overflow)
};

/// Cauchy-style refinement study along a decreasing epsilon list
/// (at least 3 entries); all runs share one time step.
EpsilonStudy epsilon_refinement_study(const Grid& g, const GridFunction& u0,
                                      const GridFunction& ut0, const TimeCoefficient& b,
                                      const SpaceCoefficient& a, const std::vector<double>& eps_list,
                                      const SolverConfig& cfg, const GevreyParams& params,
                                      double tau_prime);

}  // namespace gwl
