#pragma once

#include <Eigen/Dense>

#include "gwl/symbols.hpp"

namespace gwl {

/// Dense realization of Op(p) on the grid; acts on GridFunction values
/// by plain matrix-vector product.
using OperatorMatrix = Eigen::MatrixXcd;

/// Discrete Weyl quantization:
///   K(x_j, x_m) = (1/n) sum_k p(mid(j,m), xi_k) e^{i xi_k d(j,m)}
/// with d the wrapped difference in (-L/2, L/2] and the midpoint taken
/// along the corresponding arc on the 2x-refined grid.  Op(f(x)) is
/// exactly diagonal and Op(m(xi)) exactly circulant.
OperatorMatrix weyl_quantize(const Symbol& p);

/// Inverse of weyl_quantize (discrete Wigner transform).  Satisfies
/// weyl_quantize(wigner_symbol(M)) == M to FFT roundoff for every
/// matrix; on x-band-limited symbols it inverts weyl_quantize.  The
/// half-grid values are filled by trigonometric interpolation of the
/// per-lag data.
Symbol wigner_symbol(const OperatorMatrix& M, const Grid& g);

GridFunction apply_operator(const OperatorMatrix& M, const GridFunction& u);
OperatorMatrix diagonal_matrix(const Grid& g, const std::function<cplx(double)>& f);
OperatorMatrix multiplier_matrix(const Grid& g, const std::function<cplx(double)>& m);

/// Symbol of Op(p) Op(q), recovered through the product kernel.
Symbol exact_sharp(const Symbol& p, const Symbol& q);

/// Truncated composition expansion
///   sum_{k+l < n_terms} (-1)^k / ((2i)^{k+l} k! l!)
///       (d_x^k d_xi^l p)(d_x^l d_xi^k q),
/// n_terms <= 6; n_terms = 1 is the pointwise product.
Symbol expansion_sharp(const Symbol& p, const Symbol& q, int n_terms);

struct ConjugationReport {
    Symbol exact;       // symbol of Op(e^{tau<xi>^k}) a(x) Op(e^{-tau<xi>^k})
    Symbol expansion;   // a - i tau a' d_xi <xi>^kappa
    Symbol remainder;   // exact - expansion
    std::vector<BandSup> remainder_bands;
    double fitted_slope;  // log-log decay of the banded remainder
};

/// Conjugation of a multiplication operator by the Gevrey weight.  The
/// constant part of a commutes and is subtracted before conjugating.
ConjugationReport conjugate_by_weight(const SpaceCoefficient& a, double tau, double kappa,
                                      const Grid& g, double band_lo = 8.0, double band_hi = 64.0);

struct IdentityResidualResult {
    double residual_norm;        // || Op(e^L) Op(e^-L) - I ||_2
    int neumann_terms;
    double reconstruction_error; // || Op(e^L) K Op(e^-L) - I ||_2
    OperatorMatrix K;            // Neumann inverse of Op(e^-L) Op(e^L)
};

/// Residual of the exponential-weight identity and its Neumann repair.
/// Throws NumericError when the Neumann series diverges (residual >= 1,
/// advice: decrease mu).
IdentityResidualResult identity_residual(const Symbol& lambda);

/// Largest singular value by power iteration on M^H M, relative
/// tolerance 1e-8, deterministic seeded start vector.
double operator_norm(const OperatorMatrix& M);

}  // namespace gwl
