#include "gwl/energy.hpp"

#include <cmath>

#include "gwl/errors.hpp"

namespace gwl {
namespace {

cvec bracket_power(const Grid& g, double p) {
    cvec m(g.n());
    for (int k = 0; k < g.n(); ++k) m[k] = std::pow(g.bracket(k), p);
    return m;
}

cvec weight_multiplier(const Grid& g, double coeff, double kappa, double extra_power = 0.0) {
    cvec m(g.n());
    for (int k = 0; k < g.n(); ++k) {
        const double br = g.bracket(k);
        const double e = coeff * std::pow(br, kappa);
        if (e > 690.0) throw NumericError("energy: weight e^{" + std::to_string(e) +
                                          "} overflows; reduce tau or the grid");
        m[k] = std::exp(e) * std::pow(br, extra_power);
    }
    return m;
}

}  // namespace

GridFunction apply_A(const Grid& g, const WaveState& state, double theta, double kappa) {
    if (theta < 0.0) throw ParamError("apply_A: theta must be >= 0");
    GridFunction out = fourier_multiplier(g, bracket_power(g, kappa), state.u);
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = cplx(0.0, -1.0) * state.ut[j] + cplx(0.0, -theta) * out[j];
    return out;
}

Symbol build_a1(const SpaceCoefficient& a, const Grid& g, double t, double tau, double theta,
                double kappa) {
    const double factor = tau - theta * t;
    if (factor < 0.0) throw ParamError("build_a1: requires tau - theta t >= 0");
    return symbol_from_xy(
        g,
        [&](double x, double xi) {
            const double br = bracket_xi(xi, g.mu());
            // D_x a = -i a'
            return factor * cplx(0.0, -a.da(x)) * (kappa * xi * std::pow(br, kappa - 2.0));
        },
        "a1");
}

EnergyTriple energy_with_op(const Grid& g, const WaveState& state, double t,
                            const TimeCoefficient& b, const SpaceCoefficient& a,
                            const OperatorMatrix& Me, double theta, double kappa) {
    const double bt = b.b(t);
    const cvec mk = bracket_power(g, kappa);
    const cvec m1 = bracket_power(g, 1.0);
    const cvec m1k = bracket_power(g, 1.0 + kappa);

    const GridFunction Au = apply_A(g, state, theta, kappa);
    const GridFunction EAu = apply_operator(Me, Au);
    const GridFunction Du = apply_operator(Me, fourier_multiplier(g, m1, state.u));
    const GridFunction Eu = apply_operator(Me, state.u);
    const GridFunction DkEu = fourier_multiplier(g, mk, Eu);

    EnergyTriple e{};
    e.term_Au = std::pow(g.norm(EAu), 2);
    e.term_k = std::pow(g.norm(DkEu), 2);

    double mid = 0.0;
    for (int j = 0; j < g.n(); ++j) mid += a.a(g.x_node(j)) * std::norm(Du[j]);
    e.middle = bt * mid * g.period() / g.n();
    e.E = e.term_Au + e.middle + e.term_k;

    // E1 = Re(b a Op(e^-L)<D>^{1+k}u, Op(e^-L)<D>u) + Re(<D>^k Op(e^-L)<D>^k u, <D>^k Op(e^-L)u)
    const GridFunction D1k = apply_operator(Me, fourier_multiplier(g, m1k, state.u));
    cplx e1a = 0.0;
    for (int j = 0; j < g.n(); ++j)
        e1a += a.a(g.x_node(j)) * D1k[j] * std::conj(Du[j]);
    e1a *= bt * g.period() / static_cast<double>(g.n());
    const GridFunction EDku = apply_operator(Me, fourier_multiplier(g, mk, state.u));
    const GridFunction DkEDku = fourier_multiplier(g, mk, EDku);
    e.E1 = e1a.real() + g.inner(DkEDku, DkEu).real();

    // E2 = Re(Op(e^-L)<D>^k A u, Op(e^-L) A u)
    const GridFunction EDkAu = apply_operator(Me, fourier_multiplier(g, mk, Au));
    e.E2 = g.inner(EDkAu, EAu).real();
    return e;
}

EnergyTriple energy(const Grid& g, const WaveState& state, double t, const TimeCoefficient& b,
                    const SpaceCoefficient& a, const Symbol& lambda, double theta, double kappa) {
    if (std::isfinite(lambda.time) && std::abs(lambda.time - t) > 1e-9 * (1.0 + std::abs(t)))
        throw ParamError("energy: Lambda was built at t=" + std::to_string(lambda.time) +
                         " but the state is at t=" + std::to_string(t));
    const OperatorMatrix Me = weyl_quantize(exp_symbol(lambda, -1));
    return energy_with_op(g, state, t, b, a, Me, theta, kappa);
}

double select_theta0(double c_star, double T, double margin) {
    if (c_star < 0.0 || !(T > 0.0)) throw ParamError("select_theta0: need c* >= 0, T > 0");
    return (T * std::sqrt(c_star) + 1.0 + margin) / 2.0;
}

PSharpResidualResult p_sharp_residual(const Grid& g, const WaveState& prev, const WaveState& curr,
                                      const WaveState& next, const TimeCoefficient& b,
                                      const SpaceCoefficient& a, double tau, double theta,
                                      double kappa) {
    const double h1 = curr.t - prev.t;
    const double h2 = next.t - curr.t;
    if (!(h1 > 0.0) || std::abs(h1 - h2) > 1e-12 * (1.0 + std::abs(h1)))
        throw ParamError("p_sharp_residual: snapshots must be equally spaced in time");
    const double h = h1;
    const double t0 = curr.t;
    const double bt = b.b(t0);

    const cvec w_now = weight_multiplier(g, tau - theta * t0, kappa);
    const cvec w_prev = weight_multiplier(g, tau - theta * prev.t, kappa);
    const cvec w_next = weight_multiplier(g, tau - theta * next.t, kappa);
    const cvec m1 = bracket_power(g, 1.0);
    const cvec mk = bracket_power(g, kappa);
    const cvec m2k = bracket_power(g, 2.0 * kappa);
    auto mul = [&](const cvec& m, const GridFunction& u) { return fourier_multiplier(g, m, u); };

    const int n = g.n();
    // direct route: weight * (D_t^2 u - b <D> a <D> u), D_t^2 by stencil
    GridFunction dtt_u(n);
    for (int j = 0; j < n; ++j)
        dtt_u[j] = -(next.u[j] - 2.0 * curr.u[j] + prev.u[j]) / (h * h);
    GridFunction aDu = mul(m1, curr.u);
    for (int j = 0; j < n; ++j) aDu[j] *= a.a(g.x_node(j));
    const GridFunction DaDu = mul(m1, aDu);
    GridFunction Pu(n);
    for (int j = 0; j < n; ++j) Pu[j] = dtt_u[j] - bt * DaDu[j];
    PSharpResidualResult res;
    res.direct = mul(w_now, Pu);

    // decomposition route on the conjugated snapshots v = weight * u
    const GridFunction vp = mul(w_prev, prev.u);
    const GridFunction v0 = mul(w_now, curr.u);
    const GridFunction vn = mul(w_next, next.u);
    GridFunction dtt_v(n), dt_v(n);
    for (int j = 0; j < n; ++j) {
        dtt_v[j] = -(vn[j] - 2.0 * v0[j] + vp[j]) / (h * h);
        dt_v[j] = cplx(0.0, -1.0) * (vn[j] - vp[j]) / (2.0 * h);
    }
    const GridFunction DkDtv = mul(mk, dt_v);
    const GridFunction D2kv = mul(m2k, v0);
    GridFunction A2v(n);
    for (int j = 0; j < n; ++j)
        A2v[j] = dtt_v[j] - cplx(0.0, 2.0 * theta) * DkDtv[j] - theta * theta * D2kv[j];

    GridFunction aDv = mul(m1, v0);
    for (int j = 0; j < n; ++j) aDv[j] *= a.a(g.x_node(j));
    const GridFunction DaDv = mul(m1, aDv);

    const OperatorMatrix Oa1 = weyl_quantize(build_a1(a, g, t0, tau, theta, kappa));
    const GridFunction Da1Dv = mul(m1, apply_operator(Oa1, mul(m1, v0)));

    res.decomposition.resize(n);
    res.difference.resize(n);
    for (int j = 0; j < n; ++j) {
        res.decomposition[j] = A2v[j] - bt * DaDv[j] - bt * Da1Dv[j];
        res.difference[j] = res.direct[j] - res.decomposition[j];
    }
    return res;
}

EnergyReport audit_estimate(const std::vector<WaveState>& snapshots, const Grid& g,
                            const TimeCoefficient& b, const SpaceCoefficient& a,
                            const GevreyParams& params, double theta0, double tau,
                            double tau_prime, double slack) {
    if (!(theta0 > 0.0)) throw ParamError("audit_estimate: theta0 must be positive");
    if (!(tau_prime > 0.0) || !(tau_prime < tau))
        throw ParamError("audit_estimate: requires 0 < tau' < tau");
    const double kappa = params.kappa;
    const double t_max = tau_prime / theta0;

    const Symbol phi = build_phi(a, g, params);
    EnergyReport rep;
    rep.slack = slack;

    std::vector<double> Es, ts;
    for (const auto& snap : snapshots) {
        if (snap.t > t_max * (1.0 + 1e-12)) break;
        const cvec w = weight_multiplier(g, tau - theta0 * snap.t, kappa);
        WaveState v;
        v.t = snap.t;
        v.u = fourier_multiplier(g, w, snap.u);
        // d/dt of the conjugated state picks up -theta0 <D>^kappa
        const GridFunction wku = fourier_multiplier(g, bracket_power(g, kappa), v.u);
        v.ut = fourier_multiplier(g, w, snap.ut);
        for (size_t j = 0; j < v.ut.size(); ++j) v.ut[j] -= theta0 * wku[j];

        const Symbol lam = build_lambda_auto(b, phi, snap.t, params);
        const EnergyTriple e = energy(g, v, snap.t, b, a, lam, theta0, kappa);

        const cvec wp = weight_multiplier(g, tau_prime - theta0 * snap.t, kappa);
        const GridFunction lhs_u =
            fourier_multiplier(g, bracket_power(g, kappa), fourier_multiplier(g, wp, snap.u));
        const GridFunction lhs_ut = fourier_multiplier(g, wp, snap.ut);
        const double lhs = std::pow(g.norm(lhs_u), 2) + std::pow(g.norm(lhs_ut), 2);

        EnergyAuditRow row{};
        row.t = snap.t;
        row.E = e.E;
        row.E1 = e.E1;
        row.E2 = e.E2;
        row.lhs = lhs;
        row.dEdt_fd = std::numeric_limits<double>::quiet_NaN();
        rep.rows.push_back(row);
        Es.push_back(e.E);
        ts.push_back(snap.t);
    }
    if (rep.rows.empty()) throw ParamError("audit_estimate: no snapshots within [0, tau'/theta0]");

    rep.lhs0 = rep.rows.front().lhs;
    for (auto& row : rep.rows)
        rep.max_ratio = std::max(rep.max_ratio, rep.lhs0 > 0.0 ? row.lhs / rep.lhs0 : 0.0);

    const double abs_floor = 1e-12 * (1.0 + std::abs(Es.front()));
    for (size_t c = 1; c + 1 < rep.rows.size(); ++c) {
        const double d = (Es[c + 1] - Es[c - 1]) / (ts[c + 1] - ts[c - 1]);
        rep.rows[c].dEdt_fd = d;
        rep.rows[c].bound_rhs = Es[c] * (1.0 + slack);
        rep.rows[c].margin = rep.rows[c].bound_rhs - d;
        rep.rows[c].flag = d > rep.rows[c].bound_rhs + abs_floor ? 1 : 0;
        ++rep.audited;
        rep.flagged += rep.rows[c].flag;
    }
    return rep;
}

}  // namespace gwl
