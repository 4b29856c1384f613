#include <cmath>

#include "doctest.h"
#include "gwl/errors.hpp"
#include "gwl/solver.hpp"

using namespace gwl;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

GridFunction mode(const Grid& g, int k) {
    GridFunction u(g.n());
    for (int j = 0; j < g.n(); ++j)
        u[j] = std::exp(cplx(0.0, k * kTwoPi * g.x_node(j) / g.period()));
    return u;
}

GridFunction gaussian(const Grid& g, double center, double sigma) {
    // periodized so the torus seam carries no derivative kink
    GridFunction u(g.n());
    for (int j = 0; j < g.n(); ++j) {
        const double d0 = g.wrap_diff(g.x_node(j), center);
        double s = 0.0;
        for (int m = -2; m <= 2; ++m) {
            const double d = d0 + m * g.period();
            s += std::exp(-d * d / (sigma * sigma));
        }
        u[j] = s;
    }
    return u;
}

double linf_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("max_speed closed forms") {
    const auto b1 = TimeCoefficient::constant(1.0, 1.0);
    const auto a1 = SpaceCoefficient::constant(1.0, kTwoPi);
    CHECK(max_speed(b1, a1, 0.0) == doctest::Approx(1.0));
    const auto b0 = TimeCoefficient::constant(0.0, 1.0);
    const auto a0 = SpaceCoefficient::constant(0.0, kTwoPi);
    CHECK(max_speed(b0, a0, 0.01) == doctest::Approx(0.01));
    // dense-sampling oracle for a generic pair
    const auto bw = TimeCoefficient::smooth_osc(0.1, 0.8, 3.0, 1.0);
    const auto ab = SpaceCoefficient::gevrey_bump(1.2, kTwoPi / 8.0, kTwoPi / 2.0, 1.0, kTwoPi);
    double oracle = 0.0;
    for (int i = 0; i <= 2000; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double t = 1.0 * i / 2000, x = kTwoPi * j / 200;
            oracle = std::max(oracle, std::sqrt((bw.b(t) + 0.1) * (ab.a(x) + 0.1)));
        }
    CHECK(max_speed(bw, ab, 0.1) == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("constant-coefficient traveling wave matches the shift oracle") {
    Grid g(256, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const int k = 4;
    const GridFunction u0 = mode(g, k);
    GridFunction ut0(g.n());
    for (int j = 0; j < g.n(); ++j) ut0[j] = cplx(0.0, -double(k)) * u0[j];  // right mover

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.enforce_support_containment = false;  // periodic wave fills the torus
    const Trajectory traj = solve(g, u0, ut0, b, a, cfg);
    const WaveState& last = traj.snapshots.back();

    GridFunction exact(g.n());
    for (int j = 0; j < g.n(); ++j)
        exact[j] = std::exp(cplx(0.0, k * (g.x_node(j) - 1.0)));
    double err2 = 0.0;
    for (int j = 0; j < g.n(); ++j) err2 += std::norm(last.u[j] - exact[j]);
    CHECK(std::sqrt(err2 * g.period() / g.n()) <= 1e-4);
}

TEST_CASE("standard energy drifts below 1e-4 on the benign problem") {
    Grid g(256, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = mode(g, 4);
    GridFunction ut0(g.n());
    for (int j = 0; j < g.n(); ++j) ut0[j] = cplx(0.0, -4.0) * u0[j];
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_times = SolverConfig::uniform_snapshots(1.0, 11);
    cfg.enforce_support_containment = false;
    const Trajectory traj = solve(g, u0, ut0, b, a, cfg);

    auto energy_std = [&](const WaveState& w) {
        const GridFunction dx =
            fourier_multiplier(g, [](double xi) { return cplx(0.0, xi); }, w.u);
        double e = 0.0;
        for (int j = 0; j < g.n(); ++j) e += std::norm(w.ut[j]) + std::norm(dx[j]);
        return e * g.period() / g.n();
    };
    const double e0 = energy_std(traj.snapshots.front());
    for (const auto& w : traj.snapshots)
        CHECK(std::abs(energy_std(w) - e0) / e0 <= 1e-4);
}

TEST_CASE("zero data stays zero; linearity holds to 1e-10") {
    Grid g(64, kTwoPi, 1.0);
    const auto b = TimeCoefficient::smooth_osc(0.2, 0.5, 2.0, 1.0);
    const auto a = SpaceCoefficient::trig_degenerate(1.0, kTwoPi);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.enforce_support_containment = false;

    const GridFunction zero(g.n(), cplx(0.0));
    const Trajectory tz = solve(g, zero, zero, b, a, cfg);
    for (const auto& w : tz.snapshots) {
        CHECK(linf_diff(w.u, zero) == 0.0);
        CHECK(linf_diff(w.ut, zero) == 0.0);
    }

    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.9);
    const GridFunction ut0 = gaussian(g, kTwoPi / 2.0, 1.1);
    const Trajectory t1 = solve(g, u0, ut0, b, a, cfg);
    GridFunction su0(g.n()), sut0(g.n());
    const cplx alpha(1.7, -0.3);
    for (int j = 0; j < g.n(); ++j) {
        su0[j] = alpha * u0[j];
        sut0[j] = alpha * ut0[j];
    }
    const Trajectory t2 = solve(g, su0, sut0, b, a, cfg);
    double scale = 0.0;
    for (const auto& z : t2.snapshots.back().u) scale = std::max(scale, std::abs(z));
    CHECK(linf_diff(t2.snapshots.back().u, [&] {
              GridFunction v = t1.snapshots.back().u;
              for (auto& z : v) z *= alpha;
              return v;
          }()) <= 1e-10 * scale);
}

TEST_CASE("leapfrog is time-reversible to second order") {
    Grid g(128, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.8);
    const GridFunction ut0(g.n(), cplx(0.0));
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.enforce_support_containment = false;
    const Trajectory fwd = solve(g, u0, ut0, b, a, cfg);

    const WaveState& end = fwd.snapshots.back();
    GridFunction neg_ut(g.n());
    for (int j = 0; j < g.n(); ++j) neg_ut[j] = -end.ut[j];
    const Trajectory bwd = solve(g, end.u, neg_ut, b, a, cfg);
    CHECK(linf_diff(bwd.snapshots.back().u, u0) <= 1e-4);
}

TEST_CASE("fully degenerate coefficient freezes the field") {
    Grid g(64, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(0.0, 1.0);
    const auto a = SpaceCoefficient::gevrey_bump(1.3, 2.0, kTwoPi / 2.0, 1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.9);
    const GridFunction ut0(g.n(), cplx(0.0));
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.enforce_support_containment = false;  // nothing moves, the tail fills the torus
    const Trajectory t = solve(g, u0, ut0, b, a, cfg);
    CHECK(linf_diff(t.snapshots.back().u, u0) == 0.0);
}

TEST_CASE("support radius basics") {
    Grid g(128, kTwoPi, 1.0);
    const GridFunction zero(g.n(), cplx(0.0));
    CHECK(support_radius(g, zero, kTwoPi / 2.0, 1e-8) == 0.0);

    GridFunction ind(g.n(), cplx(0.0));
    const double R = 0.7;
    for (int j = 0; j < g.n(); ++j)
        if (std::abs(g.wrap_diff(g.x_node(j), kTwoPi / 2.0)) <= R) ind[j] = 1.0;
    const double r = support_radius(g, ind, kTwoPi / 2.0, 0.5);
    CHECK(r >= R - g.dx());
    CHECK(r <= R + g.dx());
}

TEST_CASE("propagation cone contains the evolved support") {
    Grid g(512, kTwoPi, 1.0);
    const auto b = TimeCoefficient::weierstrass(3, 2.0, 4, 1.0, 0.3);
    const auto a = SpaceCoefficient::gevrey_bump(1.2, kTwoPi / 8.0, kTwoPi / 2.0, 1.0, kTwoPi);
    const SpaceCoefficient data =
        SpaceCoefficient::gevrey_bump(1.3, kTwoPi / 4.0, kTwoPi / 2.0, 1.0, kTwoPi);
    GridFunction u0(g.n());
    for (int j = 0; j < g.n(); ++j) u0[j] = data.a(g.x_node(j));
    const GridFunction ut0(g.n(), cplx(0.0));

    SolverConfig cfg;
    cfg.epsilon = 1e-2;
    cfg.t_end = 1.0;
    cfg.support_center = kTwoPi / 2.0;
    const Trajectory traj = solve(g, u0, ut0, b, a, cfg);

    const double thr = 1e-8;  // data peaks at e^{-1}
    const double r0 = support_radius(g, u0, kTwoPi / 2.0, thr);
    const double rT = support_radius(g, traj.snapshots.back().u, kTwoPi / 2.0, thr);
    CHECK(rT <= r0 + traj.c_hat * cfg.t_end + 3.0 * g.dx());
}

TEST_CASE("config validation errors") {
    Grid g(64, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.8);
    const GridFunction ut0(g.n(), cplx(0.0));

    SolverConfig bad_cfl;
    bad_cfl.cfl = 1.2;
    CHECK_THROWS_AS(solve(g, u0, ut0, b, a, bad_cfl), ConfigError);

    SolverConfig big_dt;
    big_dt.dt = 1.0;  // far above the CFL bound
    big_dt.t_end = 1.0;
    CHECK_THROWS_AS(solve(g, u0, ut0, b, a, big_dt), ConfigError);

    // support containment: fast wave on a small torus must be rejected
    SolverConfig wrap;
    wrap.t_end = 1.0;
    const auto afast = SpaceCoefficient::constant(16.0, kTwoPi);
    CHECK_THROWS_AS(solve(g, u0, ut0, b, afast, wrap), ConfigError);

    // rough data trips the spectral guard
    GridFunction rough(g.n());
    for (int j = 0; j < g.n(); ++j) rough[j] = (j % 2 == 0) ? 1.0 : -1.0;
    SolverConfig sc;
    sc.enforce_support_containment = false;
    CHECK_THROWS_AS(solve(g, rough, ut0, b, a, sc), ConfigError);
}

TEST_CASE("running past the stability limit trips the amplitude guard") {
    Grid g(256, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 2.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.6);
    const GridFunction ut0(g.n(), cplx(0.0));
    SolverConfig cfg;
    cfg.cfl = 0.99;  // allowed by the invariant, beyond the spectral 2/pi limit
    cfg.t_end = 2.0;
    cfg.enforce_support_containment = false;
    CHECK_THROWS_AS(solve(g, u0, ut0, b, a, cfg), NumericError);
}

TEST_CASE("epsilon refinement study on constant coefficients is tiny and ordered") {
    Grid g(128, kTwoPi, 0.5);
    const GevreyParams p(1.2, 1.5, 2.0, 0.5, 0.2, 0.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.7);
    const GridFunction ut0(g.n(), cplx(0.0));
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.enforce_support_containment = false;

    CHECK_THROWS_AS(
        epsilon_refinement_study(g, u0, ut0, b, a, {1e-2}, cfg, p, 0.1), ParamError);
    CHECK_THROWS_AS(
        epsilon_refinement_study(g, u0, ut0, b, a, {1e-4, 1e-3, 1e-2}, cfg, p, 0.1), ParamError);

    const EpsilonStudy study =
        epsilon_refinement_study(g, u0, ut0, b, a, {1e-2, 1e-3, 1e-4}, cfg, p, 0.1);
    CHECK(study.nonincreasing);
    CHECK(study.diffs.front() < 0.1);   // O(eps) difference
    CHECK(study.diffs.back() < study.diffs.front());
}

TEST_CASE("snapshot bookkeeping") {
    Grid g(64, kTwoPi, 1.0);
    const auto b = TimeCoefficient::constant(1.0, 1.0);
    const auto a = SpaceCoefficient::constant(1.0, kTwoPi);
    const GridFunction u0 = gaussian(g, kTwoPi / 2.0, 0.8);
    const GridFunction ut0(g.n(), cplx(0.0));
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.snapshot_times = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.enforce_support_containment = false;
    const Trajectory t = solve(g, u0, ut0, b, a, cfg);
    REQUIRE(t.snapshots.size() == 5);
    for (size_t i = 0; i < 5; ++i)
        CHECK(t.snapshots[i].t == doctest::Approx(0.25 * i).epsilon(1e-12));
    // first snapshot is the supplied data, bit for bit
    CHECK(linf_diff(t.snapshots.front().u, u0) == 0.0);
    CHECK(linf_diff(t.snapshots.front().ut, ut0) == 0.0);
}

}  // TEST_SUITE
