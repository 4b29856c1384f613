#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gwl/coefficients.hpp"
#include "gwl/fit.hpp"
#include "gwl/grid.hpp"

namespace gwl {

/// Parameter pack (s, s', N, kappa, delta, kappa~, mu, tau, theta) with
/// the well-posedness ordering baked in as construction invariants:
///   1 < s < s' < 1 + N/2,   kappa = 1/s',  delta = 1 - kappa,
///   kappa~ = 2 delta / N < kappa,   s kappa < 1.
struct GevreyParams {
    double s;
    double s_prime;
    double N;
    double mu;
    double tau;
    double theta;
    double kappa;
    double delta;
    double kappa_tilde;

    GevreyParams(double s_, double s_prime_, double N_, double mu_, double tau_, double theta_);
};

/// Complex field on the 2x-refined x grid times the xi lattice.
/// Storage: values[h * n + k], h in [0, 2n) refined spatial index,
/// k in [0, n) FFT frequency slot.
struct Symbol {
    Grid grid;
    cvec values;
    std::string label;
    double time = std::numeric_limits<double>::quiet_NaN();

    explicit Symbol(const Grid& g, std::string lbl = "")
        : grid(g), values(static_cast<size_t>(2 * g.n()) * g.n()), label(std::move(lbl)) {}

    int nx() const { return 2 * grid.n(); }
    int nxi() const { return grid.n(); }
    cplx& at(int h, int k) { return values[static_cast<size_t>(h) * grid.n() + k]; }
    const cplx& at(int h, int k) const { return values[static_cast<size_t>(h) * grid.n() + k]; }
};

/// Builds a symbol from a function of xi alone (Fourier multiplier).
Symbol symbol_from_xi(const Grid& g, const std::function<cplx(double)>& f,
                      const std::string& label = "multiplier");
/// Builds a symbol from a function of x alone (multiplication operator).
Symbol symbol_from_x(const Grid& g, const std::function<cplx(double)>& f,
                     const std::string& label = "function");
/// Builds a symbol from a full phase-space function.
Symbol symbol_from_xy(const Grid& g, const std::function<cplx(double, double)>& f,
                      const std::string& label = "symbol");

/// phi(x, xi) = a(x) + <xi>^{-2 delta}, positive everywhere.
Symbol build_phi(const SpaceCoefficient& a, const Grid& g, const GevreyParams& p);

/// Lambda(t,x,xi) = int_0^t |b'| phi / (b phi + <xi>^{-2 delta}) ds by
/// composite midpoint with quad_steps cells; the result must move by
/// less than 1e-6 relative under one further doubling of quad_steps,
/// otherwise a NumericError names the worst (x, xi) cell.  Returns the
/// doubled-step result, tagged with its time.
Symbol build_lambda(const TimeCoefficient& b, const Symbol& phi, double t, const GevreyParams& p,
                    long quad_steps);

/// build_lambda with automatic doubling of quad_steps until the
/// convergence contract is met.
Symbol build_lambda_auto(const TimeCoefficient& b, const Symbol& phi, double t,
                         const GevreyParams& p, long initial_steps = 256);

/// Pointwise |b'(t)| phi / (b(t) phi + <xi>^{-2 delta}).
Symbol lambda_time_derivative(const TimeCoefficient& b, const Symbol& phi, double t,
                              const GevreyParams& p);

/// The quotient of the time-derivative formula at one phase-space cell.
inline double dt_lambda_pointwise(double b_val, double db_val, double phi_val, double w_val) {
    return std::abs(db_val) * phi_val / (b_val * phi_val + w_val);
}

/// sup over the grid of Lambda / <xi>^{kappa~}.
double check_lambda_bound(const Symbol& lambda, const GevreyParams& p);

/// Pointwise e^{+p} or e^{-p}; |p| above 700 raises a range error.
Symbol exp_symbol(const Symbol& p, int sign);

/// Spectral d/dx applied `order` times (x is periodic-smooth).
Symbol symbol_dx(const Symbol& s, int order);
/// Centered-difference d/dxi applied `order` times, one-sided second
/// order at the two lattice ends.
Symbol symbol_dxi(const Symbol& s, int order);

/// T^i_j = (d_xi^i d_x^j e^p) / e^p, i + j <= 6.
Symbol derivative_quotients(const Symbol& p, int i, int j);

/// h = phi^{-1/2} <xi>^{-1}, the Planck function of the metric.
Symbol metric_h(const Symbol& phi);

// ------------------------------------------------------ class reports

enum class SymbolClassKind {
    SDeltaGevrey,  // |d_x^k d_xi^l p| <= C A^{k+l} ((k+l)^{1+eps}+(k+l)^s <xi>^{-d})^{k+l} <xi>^{-l+kd} m
    S00Gevrey,     // |d_x^k d_xi^l p| <= C A^{k+l} (k+l)^{s(k+l)} m
    SPhi           // |d_x^k d_xi^l p| <= C m phi^{-k/2} <xi>^{-l}
};

/// Weight m(x, xi) = <xi>^xi_power * phi^phi_power * e^{-exp_coeff <xi>^exp_kappa}.
struct WeightSpec {
    double xi_power = 0.0;
    double phi_power = 0.0;
    double exp_coeff = 0.0;
    double exp_kappa = 0.0;
};

struct ClassSpec {
    SymbolClassKind kind = SymbolClassKind::SDeltaGevrey;
    WeightSpec m;
    double delta = 0.0;
    double s = 1.5;
    double eps = 0.25;  // the "for any eps > 0" of the class definition, fixed for reports
};

struct ClassReportRow {
    int k;  // x-derivative order
    int l;  // xi-derivative order
    int band;
    double band_lo;
    double band_hi;
    double constant;  // minimal C on this band with A = 1
};

struct ClassSummaryEntry {
    int k;
    int l;
    double max_constant;
    double band_slope;  // log-log growth of the constant across bands (flat ~ 0)
};

struct SymbolClassReport {
    std::vector<ClassReportRow> rows;
    std::vector<ClassSummaryEntry> summary;
    double max_constant = 0.0;
    double max_band_slope = 0.0;
};

/// Falsification report: per derivative order (k <= k_max, l <= l_max,
/// k + l <= 8) and per dyadic <xi> band, the minimal constant making the
/// class inequality hold.  Growth of the constants along the band index
/// indicates the symbol falls outside the claimed class.  The highest
/// band is excluded from the slope fits (boundary stencils live there).
SymbolClassReport symbol_class_report(const Symbol& p, const ClassSpec& spec, int k_max, int l_max,
                                      const Symbol* phi = nullptr);

// ------------------------------------------------------ band utilities

struct BandSup {
    int band;
    double lo;
    double hi;
    double sup;
    long count;
};

/// sup |values| per dyadic band of <xi>_mu.
std::vector<BandSup> band_sups(const Symbol& s);

/// Least-squares slope of log(sup) against log(band center), restricted
/// to bands whose centers lie in [lo, hi].
double band_decay_slope(const std::vector<BandSup>& bands, double lo, double hi);

}  // namespace gwl
