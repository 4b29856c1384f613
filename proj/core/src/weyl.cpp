#include "gwl/weyl.hpp"

#include <cmath>
#include <random>

#include "gwl/errors.hpp"

namespace gwl {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Lag bookkeeping: entry (j, m) has wrapped lag l in (-n/2, n/2] and
// reads the refined midpoint 2m + l (mod 2n).
inline int lag_slot(int j, int m, int n) { return ((j - m) % n + n) % n; }
inline int lag_signed(int lw, int n) { return lw <= n / 2 ? lw : lw - n; }
inline int midpoint_index(int m, int ls, int n) { return ((2 * m + ls) % (2 * n) + 2 * n) % (2 * n); }

}  // namespace

OperatorMatrix weyl_quantize(const Symbol& p) {
    const Grid& g = p.grid;
    const int n = g.n();
    for (const auto& z : p.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e300)
            throw NumericError("weyl_quantize: symbol value out of range");

    // T(h, l) = (1/n) sum_k p(h, xi_k) e^{2 pi i k l / n}, one inverse
    // transform per refined midpoint row.
    std::vector<cvec> T(2 * n);
    cvec row(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int h = 0; h < 2 * n; ++h) {
        for (int k = 0; k < n; ++k) row[k] = p.at(h, k);
        T[h] = fft_inverse(row);
        for (auto& z : T[h]) z *= inv_sqrt_n;
    }

    OperatorMatrix K(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            const int lw = lag_slot(j, m, n);
            const int h = midpoint_index(m, lag_signed(lw, n), n);
            K(j, m) = T[h][lw];
        }
    return K;
}

Symbol wigner_symbol(const OperatorMatrix& M, const Grid& g) {
    const int n = g.n();
    if (M.rows() != n || M.cols() != n) throw ParamError("wigner_symbol: matrix/grid mismatch");

    // Per-lag data c(h, l) on the parity class h = l (mod 2); the other
    // parity is filled by half-cell trigonometric interpolation.
    std::vector<cvec> c(2 * n, cvec(n, cplx(0.0)));
    cvec f(n);
    for (int lw = 0; lw < n; ++lw) {
        const int ls = lag_signed(lw, n);
        const int par = ((lw % 2) + 2) % 2;
        // gather: f(q) = c(par + 2q, lw)
        for (int m = 0; m < n; ++m) {
            const int j = (m + lw) % n;
            const int h = midpoint_index(m, ls, n);
            f[(h - par + 2 * n) % (2 * n) / 2] = M(j, m);
        }
        cvec fh = fft_forward(f);
        // half-cell shift: +1/2 fills par+2q+1, -1/2 fills par+2q-1
        const double shift = par == 0 ? 0.5 : -0.5;
        cvec sh(n);
        for (int fr = 0; fr < n; ++fr) {
            const int fi = fr < n / 2 ? fr : fr - n;
            if (fi == -n / 2) {
                sh[fr] = 0.0;  // symmetrized Nyquist vanishes at half-cells
                continue;
            }
            sh[fr] = fh[fr] * std::exp(cplx(0.0, 2.0 * kPi * fi * shift / n));
        }
        cvec gq = fft_inverse(sh);
        for (int q = 0; q < n; ++q) {
            const int h_own = (par + 2 * q) % (2 * n);
            const int h_other = ((par == 0 ? par + 2 * q + 1 : par + 2 * q - 1) + 2 * n) % (2 * n);
            c[h_own][lw] = f[q];
            c[h_other][lw] = gq[q];
        }
    }

    Symbol p(g, "wigner");
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (int h = 0; h < 2 * n; ++h) {
        cvec ph = fft_forward(c[h]);
        for (int k = 0; k < n; ++k) p.at(h, k) = ph[k] * sqrt_n;
    }
    return p;
}

GridFunction apply_operator(const OperatorMatrix& M, const GridFunction& u) {
    if (M.cols() != static_cast<Eigen::Index>(u.size()))
        throw ParamError("apply_operator: size mismatch");
    Eigen::Map<const Eigen::VectorXcd> uv(u.data(), u.size());
    Eigen::VectorXcd r = M * uv;
    return GridFunction(r.data(), r.data() + r.size());
}

OperatorMatrix diagonal_matrix(const Grid& g, const std::function<cplx(double)>& f) {
    OperatorMatrix D = OperatorMatrix::Zero(g.n(), g.n());
    for (int j = 0; j < g.n(); ++j) D(j, j) = f(g.x_node(j));
    return D;
}

OperatorMatrix multiplier_matrix(const Grid& g, const std::function<cplx(double)>& m) {
    return weyl_quantize(symbol_from_xi(g, m));
}

Symbol exact_sharp(const Symbol& p, const Symbol& q) {
    if (p.grid.n() != q.grid.n()) throw ParamError("exact_sharp: grid mismatch");
    const OperatorMatrix prod = weyl_quantize(p) * weyl_quantize(q);
    Symbol s = wigner_symbol(prod, p.grid);
    s.label = p.label + "#" + q.label;
    return s;
}

Symbol expansion_sharp(const Symbol& p, const Symbol& q, int n_terms) {
    if (n_terms < 1 || n_terms > 6) throw ParamError("expansion_sharp: n_terms must be in [1, 6]");
    if (p.grid.n() != q.grid.n()) throw ParamError("expansion_sharp: grid mismatch");
    Symbol acc(p.grid, p.label + "#~" + q.label);
    for (int k = 0; k < n_terms; ++k) {
        const Symbol dxk_p = symbol_dx(p, k);
        const Symbol dxl_q_base = symbol_dxi(q, k);  // d_xi^k q
        for (int l = 0; k + l < n_terms; ++l) {
            const Symbol dp = symbol_dxi(dxk_p, l);        // d_x^k d_xi^l p
            const Symbol dq = symbol_dx(dxl_q_base, l);    // d_x^l d_xi^k q
            double kfact = 1.0, lfact = 1.0;
            for (int i = 2; i <= k; ++i) kfact *= i;
            for (int i = 2; i <= l; ++i) lfact *= i;
            const cplx coeff = ((k % 2 == 0) ? 1.0 : -1.0) /
                               (std::pow(cplx(0.0, 2.0), k + l) * kfact * lfact);
            for (size_t c = 0; c < acc.values.size(); ++c)
                acc.values[c] += coeff * dp.values[c] * dq.values[c];
        }
    }
    return acc;
}

ConjugationReport conjugate_by_weight(const SpaceCoefficient& a, double tau, double kappa,
                                      const Grid& g, double band_lo, double band_hi) {
    for (int k = 0; k < g.n(); ++k) {
        const double e = tau * std::pow(g.bracket(k), kappa);
        if (e > 690.0) throw NumericError("conjugate_by_weight: weight overflow; reduce tau");
    }
    const double c_inf = a.constant_part();
    const OperatorMatrix Wp =
        multiplier_matrix(g, [&](double xi) { return std::exp(tau * std::pow(bracket_xi(xi, g.mu()), kappa)); });
    const OperatorMatrix Wm =
        multiplier_matrix(g, [&](double xi) { return std::exp(-tau * std::pow(bracket_xi(xi, g.mu()), kappa)); });
    const OperatorMatrix D = diagonal_matrix(g, [&](double x) { return a.a(x) - c_inf; });

    ConjugationReport rep{Symbol(g), Symbol(g), Symbol(g), {}, 0.0};
    rep.exact = wigner_symbol(Wp * (D * Wm), g);
    for (auto& z : rep.exact.values) z += c_inf;  // the constant commutes with the weight
    rep.exact.label = "conjugated(a)";

    rep.expansion = symbol_from_xy(
        g,
        [&](double x, double xi) {
            const double br = bracket_xi(xi, g.mu());
            const double dxi_bracket_pow = kappa * xi * std::pow(br, kappa - 2.0);
            return cplx(a.a(x), 0.0) - cplx(0.0, tau) * a.da(x) * dxi_bracket_pow;
        },
        "a - i tau a' d_xi<xi>^kappa");

    rep.remainder = Symbol(g, "conjugation remainder");
    for (size_t c = 0; c < rep.remainder.values.size(); ++c)
        rep.remainder.values[c] = rep.exact.values[c] - rep.expansion.values[c];
    rep.remainder_bands = band_sups(rep.remainder);
    int usable = 0;
    for (const auto& bs : rep.remainder_bands) {
        const double center = std::sqrt(bs.lo * bs.hi);
        if (center >= band_lo && center <= band_hi && bs.sup > 0.0) ++usable;
    }
    // an identically vanishing remainder (constant a) has no decay to fit
    rep.fitted_slope = usable >= 2 ? band_decay_slope(rep.remainder_bands, band_lo, band_hi) : 0.0;
    return rep;
}

IdentityResidualResult identity_residual(const Symbol& lambda) {
    const Grid& g = lambda.grid;
    const int n = g.n();
    const OperatorMatrix A = weyl_quantize(exp_symbol(lambda, +1));
    const OperatorMatrix B = weyl_quantize(exp_symbol(lambda, -1));
    const OperatorMatrix I = OperatorMatrix::Identity(n, n);

    IdentityResidualResult out{0.0, 0, 0.0, OperatorMatrix()};
    out.residual_norm = operator_norm(A * B - I);

    const OperatorMatrix R = I - B * A;
    const double rnorm = operator_norm(R);
    if (rnorm >= 1.0)
        throw NumericError("identity_residual: Neumann series diverges (residual " +
                           std::to_string(rnorm) + " >= 1); choose a smaller mu");
    OperatorMatrix K = I;
    OperatorMatrix P = R;
    int terms = 0;
    while (P.norm() >= 1e-12) {
        K += P;
        P = R * P;
        if (++terms > 2000)
            throw NumericError("identity_residual: Neumann series too slow (residual " +
                               std::to_string(rnorm) + ")");
    }
    out.neumann_terms = terms;
    out.K = K;
    out.reconstruction_error = operator_norm(A * K * B - I);
    return out;
}

double operator_norm(const OperatorMatrix& M) {
    for (Eigen::Index i = 0; i < M.size(); ++i)
        if (!std::isfinite(M.data()[i].real()) || !std::isfinite(M.data()[i].imag()))
            throw NumericError("operator_norm: non-finite entry");
    const Eigen::Index n = M.cols();
    // fixed seeded start vector, recorded for reproducibility
    std::mt19937 rng(0x9e3779b9u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(dist(rng), dist(rng));
    double nv = v.norm();
    if (nv == 0.0) return 0.0;
    v /= nv;

    double sigma = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXcd w = M * v;
        Eigen::VectorXcd z = M.adjoint() * w;
        const double zn = z.norm();
        if (zn == 0.0) return 0.0;
        const double sigma_new = std::sqrt(w.squaredNorm());
        v = z / zn;
        if (it > 0 && std::abs(sigma_new - sigma) <= 1e-8 * std::max(sigma_new, 1e-300))
            return sigma_new;
        sigma = sigma_new;
    }
    throw NumericError("operator_norm: power iteration did not converge in 10^4 iterations");
}

}  // namespace gwl
