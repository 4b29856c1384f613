#include "gwl/solver.hpp"

#include <algorithm>
#include <cmath>

#include "gwl/errors.hpp"

namespace gwl {

std::vector<double> SolverConfig::uniform_snapshots(double t_end, int count) {
    if (count < 2 || !(t_end > 0.0)) throw ParamError("uniform_snapshots: need count >= 2, t_end > 0");
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) ts[i] = t_end * i / (count - 1);
    return ts;
}

double max_speed(const TimeCoefficient& b, const SpaceCoefficient& a, double epsilon) {
    if (epsilon < 0.0) throw ParamError("max_speed: epsilon must be >= 0");
    return std::sqrt((b.sup_b() + epsilon) * (a.sup_a() + epsilon));
}

double support_radius(const Grid& g, const GridFunction& u, double center, double threshold) {
    if (!(threshold > 0.0)) throw ParamError("support_radius: threshold must be positive");
    double r = 0.0;
    for (int j = 0; j < g.n(); ++j)
        if (std::abs(u[j]) > threshold) r = std::max(r, std::abs(g.wrap_diff(g.x_node(j), center)));
    return r;
}

namespace {

double spectral_tail(const Grid& g, const GridFunction& u) {
    const cvec c = g.to_spectral(u);
    double peak = 0.0, tail = 0.0;
    for (int k = 0; k < g.n(); ++k) {
        const double m = std::abs(c[k]);
        peak = std::max(peak, m);
        if (std::abs(g.wavenumber(k)) >= g.n() / 4) tail = std::max(tail, m);
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

long choose_steps(const std::vector<double>& times, double t_end, long min_steps) {
    for (long S = min_steps; S <= min_steps + 65536; ++S) {
        bool ok = true;
        for (double t : times) {
            const double q = t / t_end * S;
            if (std::abs(q - std::llround(q)) > 1e-9 * std::max(1.0, q)) {
                ok = false;
                break;
            }
        }
        if (ok) return S;
    }
    throw ConfigError("solve: snapshot times are not commensurate with any admissible step count");
}

}  // namespace

Trajectory solve(const Grid& g, const GridFunction& u0, const GridFunction& ut0,
                 const TimeCoefficient& b, const SpaceCoefficient& a, const SolverConfig& cfg) {
    const int n = g.n();
    if (static_cast<int>(u0.size()) != n || static_cast<int>(ut0.size()) != n)
        throw ParamError("solve: data size mismatch");
    if (cfg.epsilon < 0.0) throw ConfigError("solve: epsilon must be >= 0");
    if (!(cfg.cfl > 0.0) || cfg.cfl >= 1.0) throw ConfigError("solve: cfl must lie in (0, 1)");
    if (!(cfg.t_end > 0.0)) throw ConfigError("solve: t_end must be positive");
    if (cfg.t_end > b.T()) throw ConfigError("solve: t_end exceeds the coefficient horizon T");

    for (const auto& u : {u0, ut0})
        for (const auto& z : u)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw ParamError("solve: non-finite data");

    // smooth-data guard: spectra must be resolved well inside Nyquist
    if (spectral_tail(g, u0) > 1e-10 || spectral_tail(g, ut0) > 1e-10)
        throw ConfigError("solve: data spectrum exceeds 1e-10 beyond half Nyquist; refine the grid");

    const double c_hat = max_speed(b, a, cfg.epsilon);

    double max_u0 = 0.0;
    for (const auto& z : u0) max_u0 = std::max(max_u0, std::abs(z));
    if (cfg.enforce_support_containment) {
        double center = cfg.support_center;
        if (!std::isfinite(center)) {
            int jmax = 0;
            for (int j = 0; j < n; ++j)
                if (std::abs(u0[j]) > std::abs(u0[jmax])) jmax = j;
            center = g.x_node(jmax);
        }
        const double thr = 1e-8 * std::max(max_u0, 1e-300);
        const double r0 = std::max(support_radius(g, u0, center, thr),
                                   support_radius(g, ut0, center, thr));
        if (r0 + c_hat * cfg.t_end >= g.period() / 2.0)
            throw ConfigError("solve: support radius " + std::to_string(r0) + " + c^ T = " +
                              std::to_string(r0 + c_hat * cfg.t_end) +
                              " would wrap around the torus (L/2 = " +
                              std::to_string(g.period() / 2.0) + ")");
    }

    const double dt_bound = c_hat > 0.0 ? cfg.cfl * g.dx() / c_hat
                                        : std::numeric_limits<double>::infinity();
    double dt_req = dt_bound;
    if (cfg.dt > 0.0) {
        if (cfg.dt > dt_bound * (1.0 + 1e-12))
            throw ConfigError("solve: dt=" + std::to_string(cfg.dt) + " violates the CFL bound " +
                              std::to_string(dt_bound));
        dt_req = cfg.dt;
    }

    std::vector<double> times = cfg.snapshot_times;
    if (times.empty()) times = {0.0, cfg.t_end};
    std::sort(times.begin(), times.end());
    if (times.front() != 0.0) times.insert(times.begin(), 0.0);
    for (size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw ConfigError("solve: snapshot times must be strictly increasing");
    if (times.back() > cfg.t_end * (1.0 + 1e-12))
        throw ConfigError("solve: snapshot beyond t_end");

    long min_steps = 1;
    if (std::isfinite(dt_req)) min_steps = std::max<long>(1, std::llround(std::ceil(cfg.t_end / dt_req - 1e-9)));
    const long S = choose_steps(times, cfg.t_end, min_steps);
    const double dt = cfg.t_end / S;

    // first spatial derivative multiplier; odd derivative has no Nyquist
    cvec ik(n);
    for (int k = 0; k < n; ++k)
        ik[k] = (g.wavenumber(k) == -n / 2) ? cplx(0.0) : cplx(0.0, g.xi_node(k));
    std::vector<double> aeps(n);
    for (int j = 0; j < n; ++j) aeps[j] = a.a(g.x_node(j)) + cfg.epsilon;

    auto rhs = [&](const GridFunction& u, double t) {
        GridFunction d = fourier_multiplier(g, ik, u);
        for (int j = 0; j < n; ++j) d[j] *= aeps[j];
        d = fourier_multiplier(g, ik, d);
        const double beps = b.b(t) + cfg.epsilon;
        for (int j = 0; j < n; ++j) d[j] *= beps;
        return d;
    };

    Trajectory traj;
    traj.config = cfg;
    traj.dt_used = dt;
    traj.steps = S;
    traj.c_hat = c_hat;

    std::vector<long> snap_steps(times.size());
    for (size_t i = 0; i < times.size(); ++i) snap_steps[i] = std::llround(times[i] / cfg.t_end * S);

    size_t next_snap = 0;
    if (snap_steps[0] == 0) {
        traj.snapshots.push_back({0.0, u0, ut0});
        ++next_snap;
    }

    // u_prev = u^{s-1}, u_curr = u^s; first step by the Taylor start
    GridFunction u_prev = u0;
    GridFunction u_curr(n);
    {
        const GridFunction r0 = rhs(u0, 0.0);
        for (int j = 0; j < n; ++j) u_curr[j] = u0[j] + dt * ut0[j] + 0.5 * dt * dt * r0[j];
    }

    GridFunction u_next(n);
    for (long s = 1; s <= S; ++s) {
        const GridFunction r = rhs(u_curr, s * dt);
        for (int j = 0; j < n; ++j) u_next[j] = 2.0 * u_curr[j] - u_prev[j] + dt * dt * r[j];

        double amax = 0.0;
        for (const auto& z : u_curr) amax = std::max(amax, std::abs(z));
        if (amax > 1e12)
            throw NumericError("solve: amplitude " + std::to_string(amax) +
                               " exceeds 1e12 at step " + std::to_string(s) + " (instability)");

        if (next_snap < snap_steps.size() && snap_steps[next_snap] == s) {
            WaveState w;
            w.t = s * dt;
            w.u = u_curr;
            w.ut.resize(n);
            for (int j = 0; j < n; ++j) w.ut[j] = (u_next[j] - u_prev[j]) / (2.0 * dt);
            traj.snapshots.push_back(std::move(w));
            ++next_snap;
        }
        std::swap(u_prev, u_curr);
        std::swap(u_curr, u_next);
    }
    return traj;
}

EpsilonStudy epsilon_refinement_study(const Grid& g, const GridFunction& u0,
                                      const GridFunction& ut0, const TimeCoefficient& b,
                                      const SpaceCoefficient& a, const std::vector<double>& eps_list,
                                      const SolverConfig& cfg, const GevreyParams& params,
                                      double tau_prime) {
    if (eps_list.size() < 3) throw ParamError("epsilon_refinement_study: need >= 3 epsilon values");
    for (size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw ParamError("epsilon_refinement_study: epsilon list must be strictly decreasing");

    // one shared step size, stable for the fastest (largest-eps) run
    SolverConfig shared = cfg;
    shared.epsilon = eps_list.front();
    const double c_fast = max_speed(b, a, eps_list.front());
    shared.dt = std::min(cfg.dt > 0.0 ? cfg.dt : 1e300, cfg.cfl * g.dx() / std::max(c_fast, 1e-300));

    // cap the weight so e^{tau <xi_max>^kappa} stays representable
    double br_max = 0.0;
    for (int k = 0; k < g.n(); ++k) br_max = std::max(br_max, g.bracket(k));
    const double tau_w = std::min(tau_prime, 30.0 / std::pow(br_max, params.kappa));

    EpsilonStudy study;
    study.tau_weight = tau_w;
    std::vector<WaveState> finals;
    for (double eps : eps_list) {
        SolverConfig c = shared;
        c.epsilon = eps;
        const Trajectory t = solve(g, u0, ut0, b, a, c);
        finals.push_back(t.snapshots.back());
        study.eps.push_back(eps);
    }
    for (size_t i = 0; i + 1 < finals.size(); ++i) {
        GridFunction du(g.n()), dut(g.n());
        for (int j = 0; j < g.n(); ++j) {
            du[j] = finals[i].u[j] - finals[i + 1].u[j];
            dut[j] = finals[i].ut[j] - finals[i + 1].ut[j];
        }
        const double nu = weighted_norm(g, du, params.kappa, tau_w, params.kappa);
        const double nut = weighted_norm(g, dut, 0.0, tau_w, params.kappa);
        study.diffs.push_back(std::sqrt(nu * nu + nut * nut));
    }
    study.nonincreasing = true;
    for (size_t i = 0; i + 1 < study.diffs.size(); ++i)
        if (study.diffs[i + 1] > study.diffs[i] * (1.0 + 1e-9)) study.nonincreasing = false;
    return study;
}

}  // namespace gwl
