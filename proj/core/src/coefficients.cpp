#include "gwl/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "gwl/errors.hpp"
#include "gwl/fit.hpp"

namespace gwl {
namespace {

constexpr double kPi = 3.14159265358979323846;

double falling_factorial(double N, int m) {
    double f = 1.0;
    for (int i = 0; i < m; ++i) f *= (N - i);
    return f;
}

}  // namespace

// ---------------------------------------------------------------- time

TimeCoefficient TimeCoefficient::constant(double c, double T) {
    if (c < 0.0 || !(T > 0.0)) throw ParamError("time constant: need c >= 0, T > 0");
    TimeCoefficient b;
    b.family_ = "constant";
    b.c_ = c;
    b.T_ = T;
    b.n_ = 2;
    b.alpha_ = 0.0;
    b.finalize();
    return b;
}

TimeCoefficient TimeCoefficient::monomial(double t0, double N, double T) {
    if (!(N > 0.0)) throw ParamError("time monomial: N must be positive");
    if (!(T > 0.0)) throw ParamError("time monomial: T must be positive");
    TimeCoefficient b;
    b.family_ = "monomial";
    b.t0_ = t0;
    b.N_ = N;
    b.T_ = T;
    b.n_ = static_cast<int>(std::ceil(N)) - 1;
    b.alpha_ = N - b.n_;
    b.finalize();
    return b;
}

TimeCoefficient TimeCoefficient::smooth_osc(double eps0, double amp, double omega, double T) {
    if (eps0 < 0.0 || amp < 0.0 || !(T > 0.0)) throw ParamError("smooth_osc: negative parameter");
    TimeCoefficient b;
    b.family_ = "smooth_osc";
    b.eps0_ = eps0;
    b.amp_ = amp;
    b.omega_ = omega;
    b.T_ = T;
    b.n_ = 2;
    b.alpha_ = 0.0;
    b.max_freq_ = 2.0 * std::abs(omega);
    b.finalize();
    return b;
}

TimeCoefficient TimeCoefficient::weierstrass(int lambda, double N, int truncation, double T,
                                             double amplitude) {
    if (lambda < 2) throw ParamError("weierstrass: lambda must be an integer >= 2");
    if (!(N > 0.0)) throw ParamError("weierstrass: N must be positive");
    if (truncation < 0 || truncation > 40) throw ParamError("weierstrass: truncation J must be in [0, 40]");
    if (amplitude < 0.0 || !(T > 0.0)) throw ParamError("weierstrass: negative parameter");
    TimeCoefficient b;
    b.family_ = "weierstrass";
    b.lambda_ = lambda;
    b.N_ = N;
    b.J_ = truncation;
    b.amp_ = amplitude;
    b.T_ = T;
    b.n_ = static_cast<int>(std::ceil(N)) - 1;
    b.alpha_ = N - b.n_;
    b.max_freq_ = std::pow(static_cast<double>(lambda), truncation);
    b.finalize();
    return b;
}

double TimeCoefficient::b(double t) const { return deriv(0, t); }
double TimeCoefficient::db(double t) const { return deriv(1, t); }

double TimeCoefficient::deriv(int m, double t) const {
    if (m < 0 || m > 8) throw ParamError("TimeCoefficient::deriv: order must be in [0, 8]");
    if (family_ == "constant") return m == 0 ? c_ : 0.0;
    if (family_ == "monomial") {
        const double u = t - t0_;
        if (m == 0) return std::pow(std::abs(u), N_);
        if (u == 0.0) return 0.0;  // kink / zero of the classical derivative
        const double sgn = u > 0.0 ? 1.0 : -1.0;
        return falling_factorial(N_, m) * std::pow(std::abs(u), N_ - m) * std::pow(sgn, m);
    }
    if (family_ == "smooth_osc") {
        // b = eps0 + A/2 - (A/2) cos(2 w t)
        if (m == 0) {
            const double sn = std::sin(omega_ * t);
            return eps0_ + amp_ * sn * sn;
        }
        const double w2 = 2.0 * omega_;
        return -0.5 * amp_ * std::pow(w2, m) * std::cos(w2 * t + m * kPi / 2.0);
    }
    // weierstrass
    double s = 0.0;
    for (int j = 0; j <= J_; ++j) {
        const double w = std::pow(static_cast<double>(lambda_), j);
        if (m == 0)
            s += std::pow(w, -N_) * (1.0 - std::cos(w * t));
        else
            s += -std::pow(w, m - N_) * std::cos(w * t + m * kPi / 2.0);
    }
    return amp_ * s;
}

void TimeCoefficient::finalize() {
    int samples = 4096;
    if (max_freq_ > 0.0)
        samples = std::max(samples, static_cast<int>(std::ceil(16.0 * max_freq_ * T_ / (2.0 * kPi))));
    samples = std::min(samples, 1 << 21);
    double sb = 0.0, sdb = 0.0, minb = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = T_ * i / samples;
        const double bv = deriv(0, t);
        sb = std::max(sb, bv);
        minb = std::min(minb, bv);
        sdb = std::max(sdb, std::abs(deriv(1, t)));
    }
    if (minb < -1e-14 * (1.0 + sb))
        throw ParamError("TimeCoefficient: negative value " + std::to_string(minb) +
                         " on the audit grid");
    sup_b_ = sb;
    sup_abs_db_ = sdb;
}

double TimeCoefficient::holder_norm() const {
    double norm = sup_b_;
    const int base = 256;
    double supn = 0.0;
    for (int i = 0; i <= base; ++i) supn = std::max(supn, std::abs(deriv(n_, T_ * i / base)));
    norm += supn;
    if (alpha_ > 0.0) {
        double semi = 0.0;
        for (int j = 1; j <= 18; ++j) {
            const double h = T_ * std::pow(2.0, -j);
            for (int i = 0; i <= base; ++i) {
                const double t = (T_ - h) * i / base;
                const double d = std::abs(deriv(n_, t + h) - deriv(n_, t));
                semi = std::max(semi, d / std::pow(h, alpha_));
            }
        }
        norm += semi;
    }
    return norm;
}

// --------------------------------------------------------------- space

SpaceCoefficient SpaceCoefficient::constant(double c, double period) {
    if (c < 0.0 || !(period > 0.0)) throw ParamError("space constant: need c >= 0, L > 0");
    SpaceCoefficient a;
    a.family_ = "constant";
    a.period_ = period;
    a.terms_.push_back({Term::Kind::Constant, c, 1.0, 0.0, 0.0});
    a.finalize();
    return a;
}

SpaceCoefficient SpaceCoefficient::trig_degenerate(double c0, double period) {
    if (c0 < 0.0 || !(period > 0.0)) throw ParamError("trig_degenerate: need c0 >= 0, L > 0");
    SpaceCoefficient a;
    a.family_ = "trig_degenerate";
    a.period_ = period;
    a.terms_.push_back({Term::Kind::Trig, c0, 1.0, 0.0, 0.0});
    a.finalize();
    return a;
}

SpaceCoefficient SpaceCoefficient::gevrey_bump(double order_s, double radius, double center,
                                               double amplitude, double period) {
    if (!(order_s > 1.0)) throw ParamError("gevrey_bump: order s must be > 1");
    if (!(radius > 0.0) || radius >= period / 2.0)
        throw ParamError("gevrey_bump: radius must satisfy 0 < R < L/2 (bump would wrap)");
    if (amplitude < 0.0 || !(period > 0.0)) throw ParamError("gevrey_bump: negative parameter");
    SpaceCoefficient a;
    a.family_ = "gevrey_bump";
    a.period_ = period;
    a.order_ = order_s;
    a.terms_.push_back({Term::Kind::Bump, amplitude, order_s, radius, center});
    a.finalize();
    return a;
}

SpaceCoefficient SpaceCoefficient::sum(const std::vector<SpaceCoefficient>& parts) {
    if (parts.empty()) throw ParamError("SpaceCoefficient::sum: empty list");
    SpaceCoefficient a;
    a.family_ = "sum";
    a.period_ = parts.front().period_;
    for (const auto& p : parts) {
        if (p.period_ != a.period_) throw ParamError("SpaceCoefficient::sum: mixed periods");
        a.order_ = std::max(a.order_, p.order_);
        a.terms_.insert(a.terms_.end(), p.terms_.begin(), p.terms_.end());
    }
    a.finalize();
    return a;
}

double SpaceCoefficient::term_a(const Term& t, double x) const {
    switch (t.kind) {
        case Term::Kind::Constant: return t.c;
        case Term::Kind::Trig: return t.c * (1.0 - std::cos(2.0 * kPi * x / period_));
        case Term::Kind::Bump: {
            const double u = std::fmod(x - t.xc + 1.5 * period_, period_) - 0.5 * period_;
            const double w = (u / t.R) * (u / t.R);
            if (w >= 1.0) return 0.0;
            const double g = std::pow(1.0 - w, -1.0 / (t.s - 1.0));
            if (g > 700.0) return 0.0;  // below 1e-304, exact zero
            return t.c * std::exp(-g);
        }
    }
    return 0.0;
}

double SpaceCoefficient::term_da(const Term& t, double x) const {
    switch (t.kind) {
        case Term::Kind::Constant: return 0.0;
        case Term::Kind::Trig:
            return t.c * (2.0 * kPi / period_) * std::sin(2.0 * kPi * x / period_);
        case Term::Kind::Bump: {
            const double u = std::fmod(x - t.xc + 1.5 * period_, period_) - 0.5 * period_;
            const double w = (u / t.R) * (u / t.R);
            if (w >= 1.0) return 0.0;
            const double p = 1.0 / (t.s - 1.0);
            const double g = std::pow(1.0 - w, -p);
            if (g > 700.0) return 0.0;
            const double wp = 2.0 * u / (t.R * t.R);
            const double gp = p * std::pow(1.0 - w, -p - 1.0) * wp;
            return -gp * t.c * std::exp(-g);
        }
    }
    return 0.0;
}

double SpaceCoefficient::term_dda(const Term& t, double x) const {
    switch (t.kind) {
        case Term::Kind::Constant: return 0.0;
        case Term::Kind::Trig: {
            const double k = 2.0 * kPi / period_;
            return t.c * k * k * std::cos(k * x);
        }
        case Term::Kind::Bump: {
            const double u = std::fmod(x - t.xc + 1.5 * period_, period_) - 0.5 * period_;
            const double w = (u / t.R) * (u / t.R);
            if (w >= 1.0) return 0.0;
            const double p = 1.0 / (t.s - 1.0);
            const double g = std::pow(1.0 - w, -p);
            if (g > 700.0) return 0.0;
            const double wp = 2.0 * u / (t.R * t.R);
            const double wpp = 2.0 / (t.R * t.R);
            const double gp = p * std::pow(1.0 - w, -p - 1.0) * wp;
            const double gpp = p * (p + 1.0) * std::pow(1.0 - w, -p - 2.0) * wp * wp +
                               p * std::pow(1.0 - w, -p - 1.0) * wpp;
            return (gp * gp - gpp) * t.c * std::exp(-g);
        }
    }
    return 0.0;
}

double SpaceCoefficient::a(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += term_a(t, x);
    return s;
}
double SpaceCoefficient::da(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += term_da(t, x);
    return s;
}
double SpaceCoefficient::dda(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += term_dda(t, x);
    return s;
}

double SpaceCoefficient::constant_part() const {
    double s = 0.0;
    for (const auto& t : terms_)
        if (t.kind == Term::Kind::Constant) s += t.c;
    return s;
}

void SpaceCoefficient::finalize() {
    const int samples = 1 << 14;
    double sa = 0.0, sda = 0.0, sdda = -std::numeric_limits<double>::infinity(), mina = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = period_ * i / samples;
        const double av = a(x);
        sa = std::max(sa, av);
        mina = std::min(mina, av);
        sda = std::max(sda, std::abs(da(x)));
        sdda = std::max(sdda, dda(x));
    }
    if (mina < -1e-14 * (1.0 + sa))
        throw ParamError("SpaceCoefficient: negative value on the audit grid");
    sup_a_ = sa;
    sup_abs_da_ = sda;
    sup_dda_ = sdda;
}

// ----------------------------------------------------------- gevrey fit

GevreyFit estimate_gevrey_constants(const SpaceCoefficient& a, const Grid& g, int k_max) {
    if (k_max < 1 || k_max > g.n() / 4)
        throw ParamError("estimate_gevrey_constants: need 1 <= k_max <= n_points/4");
    GridFunction u(g.n());
    for (int j = 0; j < g.n(); ++j) u[j] = a.a(g.x_node(j));
    const cvec spec = g.to_spectral(u);

    const double s = a.gevrey_order();
    std::vector<double> maxd(k_max + 1, 0.0);
    for (int j = 0; j < g.n(); ++j) maxd[0] = std::max(maxd[0], std::abs(u[j]));
    for (int k = 1; k <= k_max; ++k) {
        cvec dk(g.n());
        for (int i = 0; i < g.n(); ++i) {
            dk[i] = spec[i] * std::pow(cplx(0.0, g.xi_node(i)), k);
            if (std::abs(dk[i]) > 1e250)
                throw NumericError("estimate_gevrey_constants: spectral derivative overflow at k=" +
                                   std::to_string(k));
        }
        const GridFunction d = g.to_grid(dk);
        for (const auto& z : d) maxd[k] = std::max(maxd[k], std::abs(z));
    }

    const double C = maxd[0] + 1.0;
    double logA = 0.0;  // floor A at 1
    for (int k = 1; k <= k_max; ++k) {
        if (maxd[k] <= 0.0) continue;
        const double lk = (std::log(maxd[k]) - std::log(C) - s * std::lgamma(k + 1.0)) / k;
        logA = std::max(logA, lk);
    }
    GevreyFit fit;
    fit.C = C;
    fit.A = std::exp(logA);
    fit.s = s;
    for (int k = 0; k <= k_max; ++k) {
        const double env = std::exp(std::log(C) + k * logA + s * std::lgamma(k + 1.0));
        fit.rows.push_back({k, maxd[k], env});
    }
    return fit;
}

// -------------------------------------------------------------- glaeser

GlaeserResult glaeser_constant(const TimeCoefficient& b, const SpaceCoefficient& a) {
    GlaeserResult res;
    res.c_star = 2.0 * b.sup_b() * std::max(a.sup_dda(), 0.0);
    const bool a_constant = (a.sup_abs_da() == 0.0);
    res.convexity_ok = a_constant || a.sup_dda() >= 0.0;

    const int xs = 1 << 14;
    double slack = std::numeric_limits<double>::infinity();
    // b(t) <= sup b, so the minimum over t is attained there.
    for (int i = 0; i < xs; ++i) {
        const double x = a.period() * i / xs;
        const double d = a.da(x);
        slack = std::min(slack, res.c_star * a.a(x) - b.sup_b() * d * d);
    }
    res.min_slack = slack;
    res.tolerance = -1e-10 * (1.0 + res.c_star * a.sup_a());
    res.passed = slack >= res.tolerance;
    return res;
}

// ------------------------------------------------------------------ cjs

CjsResult cjs_integral_bound(const TimeCoefficient& f, double r, double t) {
    if (!(r > 0.0)) throw ParamError("cjs_integral_bound: r must be positive");
    if (!(t > 0.0) || t > f.T()) throw ParamError("cjs_integral_bound: t must lie in (0, T]");

    long steps = 64;
    double prev = 0.0, integral = 0.0, sup = 0.0;
    bool converged = false;
    for (int level = 0; level <= 22; ++level) {
        const double h = t / steps;
        double acc = 0.0, lsup = 0.0;
        for (long i = 0; i < steps; ++i) {
            const double s = (i + 0.5) * h;
            const double v = std::abs(f.db(s)) / (f.b(s) + r);
            acc += v;
            lsup = std::max(lsup, v);
        }
        integral = acc * h;
        sup = lsup;
        if (level > 0 && std::abs(integral - prev) < 1e-8 * std::max(std::abs(integral), 1e-300)) {
            converged = true;
            break;
        }
        prev = integral;
        steps *= 2;
    }
    if (!converged)
        throw NumericError("cjs_integral_bound: quadrature did not converge within 22 levels");

    CjsResult out;
    out.integral = integral;
    const double N = f.regularity();
    out.ratio = std::isfinite(N) ? integral * std::pow(r, 1.0 / N) : integral;
    out.sup_integrand = sup;
    return out;
}

CjsSlopes cjs_slope_fit(const TimeCoefficient& f, const std::vector<double>& rs, double t) {
    if (rs.size() < 2) throw ParamError("cjs_slope_fit: need at least two r values");
    CjsSlopes out;
    std::vector<double> lr, li, ls;
    for (double r : rs) {
        const CjsResult c = cjs_integral_bound(f, r, t);
        out.samples.push_back(c);
        if (c.integral <= 0.0 || c.sup_integrand <= 0.0)
            throw NumericError("cjs_slope_fit: non-positive integral, slope undefined");
        lr.push_back(std::log(r));
        li.push_back(std::log(c.integral));
        ls.push_back(std::log(c.sup_integrand));
    }
    out.integral_slope = linear_fit(lr, li).slope;
    out.sup_integrand_slope = linear_fit(lr, ls).slope;
    return out;
}

}  // namespace gwl
