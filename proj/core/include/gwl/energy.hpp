#pragma once

#include "gwl/coefficients.hpp"
#include "gwl/symbols.hpp"
#include "gwl/weyl.hpp"

namespace gwl {

/// Snapshot (u, du/dt) at one time.
struct WaveState {
    double t = 0.0;
    GridFunction u;
    GridFunction ut;
};

/// A u = D_t u - i theta <D>^kappa u with D_t u = -i du/dt.
GridFunction apply_A(const Grid& g, const WaveState& state, double theta, double kappa);

/// a1(t,x,xi) = (tau - theta t) D_x a(x) d_xi <xi>^kappa, purely imaginary.
/// Requires tau - theta t >= 0.
Symbol build_a1(const SpaceCoefficient& a, const Grid& g, double t, double tau, double theta,
                double kappa);

struct EnergyTriple {
    double E;        // total
    double E1;       // degenerate-direction component
    double E2;       // A-direction component
    double term_Au;  // || Op(e^-L) A u ||^2
    double middle;   // Re (b a Op(e^-L)<D>u, Op(e^-L)<D>u)
    double term_k;   // || <D>^k Op(e^-L) u ||^2
};

/// Weighted energy of a state.  The Lambda symbol must carry the same
/// time t (usage error otherwise).
EnergyTriple energy(const Grid& g, const WaveState& state, double t, const TimeCoefficient& b,
                    const SpaceCoefficient& a, const Symbol& lambda, double theta, double kappa);

/// Same with a precomputed Op(e^{-Lambda}).
EnergyTriple energy_with_op(const Grid& g, const WaveState& state, double t,
                            const TimeCoefficient& b, const SpaceCoefficient& a,
                            const OperatorMatrix& op_exp_minus_lambda, double theta, double kappa);

/// theta0 = (T sqrt(c*) + 1 + margin) / 2.
double select_theta0(double c_star, double T, double margin = 0.5);

struct PSharpResidualResult {
    GridFunction direct;         // weight * P(unweighted state), stencil D_t^2
    GridFunction decomposition;  // A^2 v - b<D>a<D>v - b<D>Op(a1)<D>v
    GridFunction difference;     // the measured remainder R v
};

/// Evaluates the conjugated operator on a centered snapshot triple two
/// ways; the difference isolates the expansion remainder.  Snapshots
/// must be equally spaced in time.
PSharpResidualResult p_sharp_residual(const Grid& g, const WaveState& prev, const WaveState& curr,
                                      const WaveState& next, const TimeCoefficient& b,
                                      const SpaceCoefficient& a, double tau, double theta,
                                      double kappa);

struct EnergyAuditRow {
    double t;
    double E;
    double E1;
    double E2;
    double lhs;        // weighted seminorm of the estimate's left side
    double dEdt_fd;    // centered finite difference (NaN at the ends)
    double bound_rhs;  // E * (1 + slack)
    double margin;     // bound_rhs - dEdt_fd
    int flag;          // 1 when dE/dt exceeds the bound
};

struct EnergyReport {
    std::vector<EnergyAuditRow> rows;
    double lhs0 = 0.0;
    double max_ratio = 0.0;  // max_t lhs(t) / lhs(0)
    int audited = 0;         // rows with a centered dE/dt estimate
    int flagged = 0;
    double slack = 0.2;
};

/// Audits a Pu = 0 trajectory: conjugates each snapshot by
/// e^{(tau - theta0 t)<xi>^kappa}, rebuilds Lambda at the snapshot time,
/// tracks E and the estimate's left side at tau', and flags snapshots
/// where dE/dt > E (1 + slack).  Only snapshots with t <= tau'/theta0
/// are audited.
EnergyReport audit_estimate(const std::vector<WaveState>& snapshots, const Grid& g,
                            const TimeCoefficient& b, const SpaceCoefficient& a,
                            const GevreyParams& params, double theta0, double tau,
                            double tau_prime, double slack = 0.2);

}  // namespace gwl
