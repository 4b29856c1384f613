#include "gwl/symbols.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "gwl/errors.hpp"

namespace gwl {

GevreyParams::GevreyParams(double s_, double s_prime_, double N_, double mu_, double tau_,
                           double theta_)
    : s(s_), s_prime(s_prime_), N(N_), mu(mu_), tau(tau_), theta(theta_) {
    if (!(s > 1.0) || !(s < s_prime) || !(s_prime < 1.0 + N / 2.0))
        throw ParamError("GevreyParams: requires 1 < s < s' < 1 + N/2 (got s=" + std::to_string(s) +
                         ", s'=" + std::to_string(s_prime) + ", N=" + std::to_string(N) + ")");
    if (!(mu > 0.0) || mu > 1.0) throw ParamError("GevreyParams: mu must lie in (0, 1]");
    if (!(tau > 0.0)) throw ParamError("GevreyParams: tau must be positive");
    if (theta < 0.0) throw ParamError("GevreyParams: theta must be >= 0");
    kappa = 1.0 / s_prime;
    delta = 1.0 - kappa;
    kappa_tilde = 2.0 * delta / N;
    if (!(kappa_tilde < kappa) || !(s * kappa < 1.0))
        throw ParamError("GevreyParams: derived exponents violate kappa~ < kappa, s kappa < 1");
}

Symbol symbol_from_xi(const Grid& g, const std::function<cplx(double)>& f,
                      const std::string& label) {
    Symbol s(g, label);
    for (int k = 0; k < g.n(); ++k) {
        const cplx v = f(g.xi_node(k));
        for (int h = 0; h < s.nx(); ++h) s.at(h, k) = v;
    }
    return s;
}

Symbol symbol_from_x(const Grid& g, const std::function<cplx(double)>& f,
                     const std::string& label) {
    Symbol s(g, label);
    for (int h = 0; h < s.nx(); ++h) {
        const cplx v = f(g.x_half_node(h));
        for (int k = 0; k < g.n(); ++k) s.at(h, k) = v;
    }
    return s;
}

Symbol symbol_from_xy(const Grid& g, const std::function<cplx(double, double)>& f,
                      const std::string& label) {
    Symbol s(g, label);
    for (int h = 0; h < s.nx(); ++h)
        for (int k = 0; k < g.n(); ++k) s.at(h, k) = f(g.x_half_node(h), g.xi_node(k));
    return s;
}

Symbol build_phi(const SpaceCoefficient& a, const Grid& g, const GevreyParams& p) {
    Symbol phi(g, "phi");
    for (int h = 0; h < phi.nx(); ++h) {
        const double av = a.a(g.x_half_node(h));
        for (int k = 0; k < g.n(); ++k)
            phi.at(h, k) = av + std::pow(g.bracket(k), -2.0 * p.delta);
    }
    phi.time = 0.0;
    return phi;
}

namespace {

// Lambda depends on (x, xi) only through r = <xi>^{-2 delta} / phi, so
// the s-quadrature is carried out once per distinct r value.
struct LambdaCells {
    std::vector<double> unique_r;
    std::vector<int> cell_to_unique;
    std::vector<size_t> representative;  // first cell index per unique r
};

LambdaCells lambda_cells(const Symbol& phi, const GevreyParams& p) {
    const Grid& g = phi.grid;
    const size_t ncells = phi.values.size();
    std::vector<double> w(g.n());
    for (int k = 0; k < g.n(); ++k) w[k] = std::pow(g.bracket(k), -2.0 * p.delta);

    std::vector<std::pair<double, size_t>> rs(ncells);
    for (int h = 0; h < phi.nx(); ++h)
        for (int k = 0; k < g.n(); ++k) {
            const size_t idx = static_cast<size_t>(h) * g.n() + k;
            const double ph = phi.at(h, k).real();
            if (!(ph > 0.0)) throw ParamError("build_lambda: phi must be positive");
            rs[idx] = {w[k] / ph, idx};
        }
    std::sort(rs.begin(), rs.end());

    LambdaCells cells;
    cells.cell_to_unique.resize(ncells);
    double last = -1.0;
    for (const auto& [r, idx] : rs) {
        if (cells.unique_r.empty() || r != last) {
            cells.unique_r.push_back(r);
            cells.representative.push_back(idx);
            last = r;
        }
        cells.cell_to_unique[idx] = static_cast<int>(cells.unique_r.size()) - 1;
    }
    return cells;
}

std::vector<double> lambda_integrate(const TimeCoefficient& b, const std::vector<double>& rs,
                                     double t, long steps) {
    std::vector<double> out(rs.size(), 0.0);
    const double h = t / steps;
    constexpr long kChunk = 1 << 14;
    std::vector<double> bv(kChunk), dbv(kChunk);
    for (long start = 0; start < steps; start += kChunk) {
        const long m = std::min(kChunk, steps - start);
        for (long i = 0; i < m; ++i) {
            const double s = (start + i + 0.5) * h;
            bv[i] = b.b(s);
            dbv[i] = std::abs(b.db(s));
        }
        for (size_t u = 0; u < rs.size(); ++u) {
            const double r = rs[u];
            double acc = 0.0;
            for (long i = 0; i < m; ++i) acc += dbv[i] / (bv[i] + r);
            out[u] += acc;
        }
    }
    for (auto& v : out) v *= h;
    return out;
}

Symbol lambda_from_unique(const Symbol& phi, const LambdaCells& cells,
                          const std::vector<double>& G, double t) {
    Symbol lam(phi.grid, "Lambda");
    for (size_t idx = 0; idx < lam.values.size(); ++idx)
        lam.values[idx] = G[cells.cell_to_unique[idx]];
    lam.time = t;
    return lam;
}

}  // namespace

Symbol build_lambda(const TimeCoefficient& b, const Symbol& phi, double t, const GevreyParams& p,
                    long quad_steps) {
    if (quad_steps < 64) throw ParamError("build_lambda: quad_steps must be >= 64");
    if (t < 0.0 || t > b.T()) throw ParamError("build_lambda: t must lie in [0, T]");
    const LambdaCells cells = lambda_cells(phi, p);
    if (t == 0.0) return lambda_from_unique(phi, cells, std::vector<double>(cells.unique_r.size(), 0.0), t);

    const std::vector<double> g1 = lambda_integrate(b, cells.unique_r, t, quad_steps);
    const std::vector<double> g2 = lambda_integrate(b, cells.unique_r, t, 2 * quad_steps);
    double gmax = 0.0;
    for (double v : g2) gmax = std::max(gmax, std::abs(v));
    double worst = 0.0;
    size_t worst_u = 0;
    for (size_t u = 0; u < g2.size(); ++u) {
        const double denom = std::max({std::abs(g2[u]), 1e-9 * gmax, DBL_MIN});
        const double rel = std::abs(g2[u] - g1[u]) / denom;
        if (rel > worst) {
            worst = rel;
            worst_u = u;
        }
    }
    if (worst >= 1e-6) {
        const Grid& g = phi.grid;
        const size_t idx = cells.representative[worst_u];
        const int h = static_cast<int>(idx) / g.n();
        const int k = static_cast<int>(idx) % g.n();
        throw NumericError("build_lambda: quadrature not converged (rel change " +
                           std::to_string(worst) + " at x=" + std::to_string(g.x_half_node(h)) +
                           ", xi=" + std::to_string(g.xi_node(k)) +
                           "); increase quad_steps");
    }
    return lambda_from_unique(phi, cells, g2, t);
}

Symbol build_lambda_auto(const TimeCoefficient& b, const Symbol& phi, double t,
                         const GevreyParams& p, long initial_steps) {
    long steps = std::max<long>(64, initial_steps);
    for (int tries = 0; tries < 16; ++tries) {
        try {
            return build_lambda(b, phi, t, p, steps);
        } catch (const NumericError&) {
            steps *= 4;
            if (steps > (1L << 24)) break;
        }
    }
    throw NumericError("build_lambda_auto: no convergence up to 2^24 quadrature steps");
}

Symbol lambda_time_derivative(const TimeCoefficient& b, const Symbol& phi, double t,
                              const GevreyParams& p) {
    const Grid& g = phi.grid;
    const double bv = b.b(t);
    const double dbv = b.db(t);
    Symbol out(g, "dtLambda");
    for (int h = 0; h < out.nx(); ++h)
        for (int k = 0; k < g.n(); ++k) {
            const double w = std::pow(g.bracket(k), -2.0 * p.delta);
            out.at(h, k) = dt_lambda_pointwise(bv, dbv, phi.at(h, k).real(), w);
        }
    out.time = t;
    return out;
}

double check_lambda_bound(const Symbol& lambda, const GevreyParams& p) {
    const Grid& g = lambda.grid;
    double B = 0.0;
    for (int h = 0; h < lambda.nx(); ++h)
        for (int k = 0; k < g.n(); ++k)
            B = std::max(B, lambda.at(h, k).real() / std::pow(g.bracket(k), p.kappa_tilde));
    return B;
}

Symbol exp_symbol(const Symbol& p, int sign) {
    if (sign != 1 && sign != -1) throw ParamError("exp_symbol: sign must be +1 or -1");
    Symbol out(p.grid, sign > 0 ? "exp(+" + p.label + ")" : "exp(-" + p.label + ")");
    for (size_t i = 0; i < p.values.size(); ++i) {
        if (std::abs(p.values[i]) > 700.0)
            throw NumericError("exp_symbol: |p| > 700 would overflow e^p");
        out.values[i] = std::exp(static_cast<double>(sign) * p.values[i]);
    }
    out.time = p.time;
    return out;
}

Symbol symbol_dx(const Symbol& s, int order) {
    if (order < 0) throw ParamError("symbol_dx: negative order");
    if (order == 0) return s;
    const Grid& g = s.grid;
    const int nx = s.nx();
    if (order > nx / 4) throw ParamError("symbol_dx: order beyond grid resolution");
    Symbol out(g, s.label);
    out.time = s.time;
    cvec col(nx);
    for (int k = 0; k < g.n(); ++k) {
        for (int h = 0; h < nx; ++h) col[h] = s.at(h, k);
        cvec spec = fft_forward(col);
        for (int f = 0; f < nx; ++f) {
            const int fi = f < nx / 2 ? f : f - nx;
            if (fi == -nx / 2 && order % 2 == 1) {
                spec[f] = 0.0;  // Nyquist has no well-defined odd derivative
                continue;
            }
            spec[f] *= std::pow(cplx(0.0, 2.0 * M_PI * fi / g.period()), order);
        }
        col = fft_inverse(spec);
        for (int h = 0; h < nx; ++h) out.at(h, k) = col[h];
    }
    return out;
}

Symbol symbol_dxi(const Symbol& s, int order) {
    if (order < 0) throw ParamError("symbol_dxi: negative order");
    if (order == 0) return s;
    const Grid& g = s.grid;
    const int n = g.n();
    // sorted-by-wavenumber slot order: k_int = i - n/2 lives in slot (i + n/2) mod n
    std::vector<int> slot(n);
    for (int i = 0; i < n; ++i) slot[i] = (i + n / 2) % n;
    const double hstep = g.dxi();

    Symbol cur = s;
    for (int rep = 0; rep < order; ++rep) {
        Symbol nxt(g, s.label);
        nxt.time = s.time;
        cvec row(n);
        for (int h = 0; h < s.nx(); ++h) {
            for (int i = 0; i < n; ++i) row[i] = cur.at(h, slot[i]);
            cvec d(n);
            // fourth-order interior, degrading to second order at the ends
            for (int i = 2; i + 2 < n; ++i)
                d[i] = (-row[i + 2] + 8.0 * row[i + 1] - 8.0 * row[i - 1] + row[i - 2]) /
                       (12.0 * hstep);
            d[1] = (row[2] - row[0]) / (2.0 * hstep);
            d[n - 2] = (row[n - 1] - row[n - 3]) / (2.0 * hstep);
            d[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * hstep);
            d[n - 1] = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) / (2.0 * hstep);
            for (int i = 0; i < n; ++i) nxt.at(h, slot[i]) = d[i];
        }
        cur = std::move(nxt);
    }
    return cur;
}

Symbol derivative_quotients(const Symbol& p, int i, int j) {
    if (i < 0 || j < 0 || i + j > 6) throw ParamError("derivative_quotients: need i, j >= 0, i+j <= 6");
    const Symbol ep = exp_symbol(p, +1);
    const Symbol d = symbol_dxi(symbol_dx(ep, j), i);
    Symbol out(p.grid, "T^" + std::to_string(i) + "_" + std::to_string(j));
    out.time = p.time;
    for (size_t c = 0; c < d.values.size(); ++c) {
        out.values[c] = d.values[c] / ep.values[c];
        if (std::abs(out.values[c]) > 1e250)
            throw NumericError("derivative_quotients: magnitude beyond 1e250");
    }
    return out;
}

Symbol metric_h(const Symbol& phi) {
    const Grid& g = phi.grid;
    Symbol out(g, "h");
    for (int h = 0; h < out.nx(); ++h)
        for (int k = 0; k < g.n(); ++k) {
            const double ph = phi.at(h, k).real();
            if (!(ph > 0.0)) throw ParamError("metric_h: phi must be positive");
            out.at(h, k) = 1.0 / (std::sqrt(ph) * g.bracket(k));
        }
    return out;
}

// ------------------------------------------------------ class reports

SymbolClassReport symbol_class_report(const Symbol& p, const ClassSpec& spec, int k_max, int l_max,
                                      const Symbol* phi) {
    if (k_max < 0 || l_max < 0 || k_max + l_max > 8)
        throw ParamError("symbol_class_report: need k_max + l_max <= 8");
    const bool needs_phi = spec.kind == SymbolClassKind::SPhi || spec.m.phi_power != 0.0;
    if (needs_phi && phi == nullptr)
        throw ParamError("symbol_class_report: class spec references phi but none was given");

    const Grid& g = p.grid;
    const int n = g.n();
    std::vector<double> br(n);
    std::vector<int> band(n);
    int band_max = 0;
    for (int k = 0; k < n; ++k) {
        br[k] = g.bracket(k);
        band[k] = static_cast<int>(std::floor(std::log2(br[k])));
        band_max = std::max(band_max, band[k]);
    }

    SymbolClassReport rep;
    struct PairData {
        int k, l;
        std::vector<double> cmax;
        std::vector<long> cnt;
    };
    std::vector<PairData> pairs;
    for (int k = 0; k <= k_max; ++k) {
        Symbol dk = symbol_dx(p, k);
        for (int l = 0; l <= l_max; ++l) {
            if (l > 0) dk = symbol_dxi(dk, 1);
            const int kl = k + l;
            std::vector<double> cmax(band_max + 1, 0.0);
            std::vector<long> cnt(band_max + 1, 0);
            for (int h = 0; h < p.nx(); ++h)
                for (int kk = 0; kk < n; ++kk) {
                    double m = std::pow(br[kk], spec.m.xi_power);
                    if (spec.m.phi_power != 0.0)
                        m *= std::pow(phi->at(h, kk).real(), spec.m.phi_power);
                    if (spec.m.exp_coeff != 0.0)
                        m *= std::exp(-spec.m.exp_coeff * std::pow(br[kk], spec.m.exp_kappa));
                    double env = m;
                    switch (spec.kind) {
                        case SymbolClassKind::SDeltaGevrey:
                            if (kl > 0)
                                env *= std::pow(std::pow(kl, 1.0 + spec.eps) +
                                                    std::pow(kl, spec.s) *
                                                        std::pow(br[kk], -spec.delta),
                                                kl);
                            env *= std::pow(br[kk], -l + k * spec.delta);
                            break;
                        case SymbolClassKind::S00Gevrey:
                            if (kl > 0) env *= std::pow(kl, spec.s * kl);
                            break;
                        case SymbolClassKind::SPhi:
                            env *= std::pow(phi->at(h, kk).real(), -k / 2.0) * std::pow(br[kk], -l);
                            break;
                    }
                    const double ratio = std::abs(dk.at(h, kk)) / env;
                    cmax[band[kk]] = std::max(cmax[band[kk]], ratio);
                    ++cnt[band[kk]];
                }

            pairs.push_back({k, l, std::move(cmax), std::move(cnt)});
        }
    }

    for (const auto& pd : pairs)
        for (int b = 0; b <= band_max; ++b) {
            if (pd.cnt[b] == 0) continue;
            rep.rows.push_back(
                {pd.k, pd.l, b, std::pow(2.0, b), std::pow(2.0, b + 1), pd.cmax[b]});
            rep.max_constant = std::max(rep.max_constant, pd.cmax[b]);
        }

    // Pairs whose constants sit at roundoff level relative to the leading
    // ones (exactly vanishing mixed derivatives, say) carry no slope
    // information.
    const double floor = 1e-7 * rep.max_constant;
    for (const auto& pd : pairs) {
        std::vector<double> lx, ly;
        double kmaxc = 0.0;
        for (int b = 0; b <= band_max; ++b) {
            if (pd.cnt[b] == 0) continue;
            kmaxc = std::max(kmaxc, pd.cmax[b]);
            if (b < band_max && pd.cmax[b] > 0.0) {  // top band holds boundary stencils
                lx.push_back(std::log(std::pow(2.0, b + 0.5)));
                ly.push_back(std::log(pd.cmax[b]));
            }
        }
        double slope = 0.0;
        if (lx.size() >= 2 && kmaxc > floor) slope = linear_fit(lx, ly).slope;
        rep.summary.push_back({pd.k, pd.l, kmaxc, slope});
        rep.max_band_slope = std::max(rep.max_band_slope, slope);
    }
    return rep;
}

std::vector<BandSup> band_sups(const Symbol& s) {
    const Grid& g = s.grid;
    const int n = g.n();
    int band_max = 0;
    std::vector<int> band(n);
    for (int k = 0; k < n; ++k) {
        band[k] = static_cast<int>(std::floor(std::log2(g.bracket(k))));
        band_max = std::max(band_max, band[k]);
    }
    std::vector<BandSup> out(band_max + 1);
    for (int b = 0; b <= band_max; ++b) out[b] = {b, std::pow(2.0, b), std::pow(2.0, b + 1), 0.0, 0};
    for (int h = 0; h < s.nx(); ++h)
        for (int k = 0; k < n; ++k) {
            auto& bs = out[band[k]];
            bs.sup = std::max(bs.sup, std::abs(s.at(h, k)));
            ++bs.count;
        }
    out.erase(std::remove_if(out.begin(), out.end(), [](const BandSup& b) { return b.count == 0; }),
              out.end());
    return out;
}

double band_decay_slope(const std::vector<BandSup>& bands, double lo, double hi) {
    std::vector<double> xs, ys;
    for (const auto& b : bands) {
        const double center = std::sqrt(b.lo * b.hi);
        if (center < lo || center > hi || b.sup <= 0.0) continue;
        xs.push_back(std::log(center));
        ys.push_back(std::log(b.sup));
    }
    if (xs.size() < 2) throw ParamError("band_decay_slope: fewer than two usable bands");
    return linear_fit(xs, ys).slope;
}

}  // namespace gwl
