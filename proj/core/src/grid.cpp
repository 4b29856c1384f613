#include "gwl/grid.hpp"

#include <cmath>
#include <string>

#include "gwl/errors.hpp"

namespace gwl {

double bracket_xi(double xi, double mu) {
    if (!(mu > 0.0)) throw ParamError("bracket_xi: mu must be positive");
    return std::sqrt(1.0 / (mu * mu) + xi * xi);
}

Grid::Grid(int n_points, double period, double mu) : n_(n_points), period_(period), mu_(mu) {
    if (n_points < 8 || (n_points & (n_points - 1)) != 0)
        throw ParamError("Grid: n_points must be a power of two >= 8, got " +
                         std::to_string(n_points));
    if (!(period > 0.0)) throw ParamError("Grid: period must be positive");
    if (!(mu > 0.0) || mu > 1.0) throw ParamError("Grid: mu must lie in (0, 1]");
}

std::vector<double> Grid::xi_nodes() const {
    std::vector<double> out(n_);
    for (int k = 0; k < n_; ++k) out[k] = xi_node(k);
    return out;
}

std::vector<double> Grid::x_nodes() const {
    std::vector<double> out(n_);
    for (int j = 0; j < n_; ++j) out[j] = x_node(j);
    return out;
}

double Grid::wrap_diff(double a, double b) const {
    double d = std::fmod(a - b, period_);
    if (d <= -period_ / 2) d += period_;
    if (d > period_ / 2) d -= period_;
    return d;
}

double Grid::norm(const GridFunction& u) const {
    double s = 0.0;
    for (const auto& z : u) s += std::norm(z);
    return std::sqrt(s * period_ / n_);
}

cplx Grid::inner(const GridFunction& u, const GridFunction& v) const {
    cplx s = 0.0;
    for (size_t j = 0; j < u.size(); ++j) s += u[j] * std::conj(v[j]);
    return s * (period_ / n_);
}

SpectralFunction Grid::to_spectral(const GridFunction& u) const {
    if (static_cast<int>(u.size()) != n_) throw ParamError("to_spectral: size mismatch");
    return fft_forward(u);
}

GridFunction Grid::to_grid(const SpectralFunction& c) const {
    if (static_cast<int>(c.size()) != n_) throw ParamError("to_grid: size mismatch");
    return fft_inverse(c);
}

cvec multiplier_values(const Grid& g, const std::function<cplx(double)>& m) {
    cvec vals(g.n());
    for (int k = 0; k < g.n(); ++k) {
        const cplx z = m(g.xi_node(k));
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericError("fourier_multiplier: non-finite multiplier at mode " +
                               std::to_string(g.wavenumber(k)) +
                               " (xi=" + std::to_string(g.xi_node(k)) + ")");
        if (std::abs(z) > 1e300)
            throw NumericError("fourier_multiplier: multiplier magnitude exceeds 1e300 at mode " +
                               std::to_string(g.wavenumber(k)));
        vals[k] = z;
    }
    return vals;
}

GridFunction fourier_multiplier(const Grid& g, const cvec& m_values, const GridFunction& u) {
    if (static_cast<int>(u.size()) != g.n() || m_values.size() != u.size())
        throw ParamError("fourier_multiplier: size mismatch");
    cvec c = g.to_spectral(u);
    for (int k = 0; k < g.n(); ++k) c[k] *= m_values[k];
    return g.to_grid(c);
}

GridFunction fourier_multiplier(const Grid& g, const std::function<cplx(double)>& m,
                                const GridFunction& u) {
    return fourier_multiplier(g, multiplier_values(g, m), u);
}

double weighted_norm(const Grid& g, const GridFunction& u, double ell, double tau, double kappa) {
    if (tau < 0.0) throw ParamError("weighted_norm: tau must be >= 0");
    cvec w(g.n());
    for (int k = 0; k < g.n(); ++k) {
        const double br = g.bracket(k);
        const double val = std::pow(br, ell) * std::exp(tau * std::pow(br, kappa));
        if (!std::isfinite(val) || val > 1e300)
            throw NumericError("weighted_norm: weight overflow at mode " +
                               std::to_string(g.wavenumber(k)) +
                               "; reduce tau or the grid size");
        w[k] = val;
    }
    cvec c = g.to_spectral(u);
    double s = 0.0;
    for (int k = 0; k < g.n(); ++k) s += std::norm(w[k] * c[k]);
    return std::sqrt(s * g.period() / g.n());
}

double plancherel_series(const Grid& g, const GridFunction& u, double ell, double tau,
                         double kappa, double tol) {
    if (!(tol > 0.0)) throw ParamError("plancherel_series: tol must be positive");
    constexpr int kMaxTerms = 200;
    double sum = 0.0;
    double coeff = 1.0;  // (2 tau)^m / m!
    for (int m = 0; m < kMaxTerms; ++m) {
        cvec w(g.n());
        for (int k = 0; k < g.n(); ++k) w[k] = std::pow(g.bracket(k), ell + kappa * m / 2.0);
        const GridFunction v = fourier_multiplier(g, w, u);
        const double nv = g.norm(v);
        const double term = coeff * nv * nv;
        sum += term;
        if (m >= 1 && sum > 0.0 && term / sum < tol) return std::sqrt(sum);
        if (tau == 0.0) return std::sqrt(sum);  // series collapses to the first term
        coeff *= 2.0 * tau / (m + 1);
        if (!std::isfinite(sum)) throw NumericError("plancherel_series: sum overflow");
    }
    throw NumericError("plancherel_series: no convergence within 200 terms");
}

}  // namespace gwl
