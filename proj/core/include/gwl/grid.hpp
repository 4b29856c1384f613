#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gwl/fft.hpp"

namespace gwl {

/// Complex field sampled at the n spatial nodes x_j = j L / n.
using GridFunction = cvec;
/// Fourier coefficients indexed like xi_node(k), FFT layout.
using SpectralFunction = cvec;

/// Regularized frequency bracket <xi>_mu = (mu^-2 + xi^2)^{1/2}.
double bracket_xi(double xi, double mu);

/// Periodic lattice of n points on [0, L) together with its dual
/// frequency lattice xi_k = 2 pi k / L, k in [-n/2, n/2), and the
/// regularization parameter mu of the frequency bracket.
///
/// Frequency storage follows FFT layout: index k in [0, n/2) holds
/// wavenumber k, index k in [n/2, n) holds wavenumber k - n.  The
/// single Nyquist mode is treated as wavenumber -n/2.
class Grid {
  public:
    Grid(int n_points, double period, double mu);

    int n() const { return n_; }
    double period() const { return period_; }
    double mu() const { return mu_; }
    double dx() const { return period_ / n_; }
    double dxi() const { return two_pi_ / period_; }

    /// x_j = j L / n, j in [0, n).
    double x_node(int j) const { return j * period_ / n_; }
    /// Node of the 2x-refined spatial grid, h in [0, 2n).
    double x_half_node(int h) const { return h * period_ / (2 * n_); }
    /// Signed integer wavenumber of FFT slot k.
    int wavenumber(int k) const { return k < n_ / 2 ? k : k - n_; }
    /// xi_k = 2 pi wavenumber / L.
    double xi_node(int k) const { return two_pi_ * wavenumber(k) / period_; }
    double bracket(int k) const { return bracket_xi(xi_node(k), mu_); }

    std::vector<double> xi_nodes() const;
    std::vector<double> x_nodes() const;

    /// Shortest signed displacement from b to a on the circle, in (-L/2, L/2].
    double wrap_diff(double a, double b) const;

    /// L-scaled L2 norm: sqrt(L/n) * euclidean norm of the samples.
    double norm(const GridFunction& u) const;
    /// L-scaled inner product (u, v) = (L/n) sum_j u_j conj(v_j).
    cplx inner(const GridFunction& u, const GridFunction& v) const;

    SpectralFunction to_spectral(const GridFunction& u) const;
    GridFunction to_grid(const SpectralFunction& c) const;

  private:
    int n_;
    double period_;
    double mu_;
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
};

/// Applies the Fourier multiplier u -> F^{-1}[ m(xi_k) F u ].
/// m must be finite on every lattice mode; a NaN/inf value raises a
/// NumericError naming the offending mode.
GridFunction fourier_multiplier(const Grid& g, const std::function<cplx(double)>& m,
                                const GridFunction& u);
/// Same with precomputed multiplier values per FFT slot.
GridFunction fourier_multiplier(const Grid& g, const cvec& m_values, const GridFunction& u);

/// Evaluates m on the lattice and validates against NaN/inf and the
/// 1e300 overflow guard.
cvec multiplier_values(const Grid& g, const std::function<cplx(double)>& m);

/// || <D>^ell Op(e^{tau <xi>^kappa}) u || in the L-scaled L2 norm.
/// Weights with magnitude beyond 1e300 raise a NumericError advising a
/// smaller tau or grid.
double weighted_norm(const Grid& g, const GridFunction& u, double ell, double tau, double kappa);

/// Independent series route to weighted_norm:
///   ||<D>^ell Op(e^{tau<xi>^kappa}) u||^2
///     = sum_n (2 tau)^n / n! ||<D>^ell <D>^{kappa n/2} u||^2,
/// truncated once term / partial_sum < tol.  Hard cap of 200 terms.
double plancherel_series(const Grid& g, const GridFunction& u, double ell, double tau,
                         double kappa, double tol);

}  // namespace gwl
