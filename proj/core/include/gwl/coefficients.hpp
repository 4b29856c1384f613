#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "gwl/grid.hpp"

namespace gwl {

/// Nonnegative time coefficient b(t) on [0, T] with closed-form
/// derivatives.  Families:
///   constant     b = c
///   monomial     b = |t - t0|^N
///   smooth_osc   b = eps0 + A sin^2(omega t)
///   weierstrass  b = A sum_{j=0}^{J} lambda^{-jN} (1 - cos(lambda^j t))
/// The truncated Weierstrass sum has term-wise derivatives of every
/// order; its effective regularity is C^{n,alpha} with N = n + alpha.
class TimeCoefficient {
  public:
    static TimeCoefficient constant(double c, double T);
    static TimeCoefficient monomial(double t0, double N, double T);
    static TimeCoefficient smooth_osc(double eps0, double amp, double omega, double T);
    static TimeCoefficient weierstrass(int lambda, double N, int truncation, double T,
                                       double amplitude = 1.0);

    double b(double t) const;
    double db(double t) const;
    /// m-th derivative, closed form per family.  m <= 8.
    double deriv(int m, double t) const;

    double T() const { return T_; }
    /// N = n + alpha; infinity for the C^inf families.
    double regularity() const { return N_; }
    int holder_n() const { return n_; }
    double holder_alpha() const { return alpha_; }
    double sup_b() const { return sup_b_; }
    double sup_abs_db() const { return sup_abs_db_; }
    const std::string& family() const { return family_; }

    /// Estimated C^{n,alpha} norm: sup|b| + sup|b^(n)| plus the Hoelder
    /// seminorm of b^(n) maximized over a dyadic pair sample.
    double holder_norm() const;

    /// Highest angular frequency present (resolution hint for quadrature).
    double max_frequency() const { return max_freq_; }

  private:
    TimeCoefficient() = default;
    void finalize();

    std::string family_;
    double T_ = 1.0;
    double N_ = std::numeric_limits<double>::infinity();
    int n_ = 0;
    double alpha_ = 0.0;
    // family parameters
    double c_ = 0.0, t0_ = 0.0, eps0_ = 0.0, amp_ = 0.0, omega_ = 0.0;
    int lambda_ = 2, J_ = 0;
    double sup_b_ = 0.0, sup_abs_db_ = 0.0, max_freq_ = 0.0;
};

/// Nonnegative L-periodic space coefficient a(x), a sum of primitive
/// terms:
///   constant         a = c
///   trig_degenerate  a = c0 (1 - cos(2 pi x / L))
///   gevrey_bump      A exp(-(1 - ((x-xc)/R)^2)^{-1/(s-1)}) inside
///                    |x - xc| < R (wrapped), identically 0 outside
class SpaceCoefficient {
  public:
    static SpaceCoefficient constant(double c, double period);
    static SpaceCoefficient trig_degenerate(double c0, double period);
    static SpaceCoefficient gevrey_bump(double order_s, double radius, double center,
                                        double amplitude, double period);
    static SpaceCoefficient sum(const std::vector<SpaceCoefficient>& parts);

    double a(double x) const;
    double da(double x) const;
    double dda(double x) const;

    double period() const { return period_; }
    /// Gevrey order: max over terms (1 for the analytic families).
    double gevrey_order() const { return order_; }
    /// Sum of the constant terms (what the coefficient equals outside
    /// all bumps when no trig term is present).
    double constant_part() const;
    double sup_a() const { return sup_a_; }
    double sup_abs_da() const { return sup_abs_da_; }
    /// Signed supremum of a'' over the audit grid.
    double sup_dda() const { return sup_dda_; }
    const std::string& family() const { return family_; }

  private:
    struct Term {
        enum class Kind { Constant, Trig, Bump } kind;
        double c = 0.0;       // constant / c0 / amplitude
        double s = 1.0;       // bump order
        double R = 0.0;       // bump radius
        double xc = 0.0;      // bump center
    };
    SpaceCoefficient() = default;
    void finalize();
    double term_a(const Term& t, double x) const;
    double term_da(const Term& t, double x) const;
    double term_dda(const Term& t, double x) const;

    std::string family_;
    double period_ = 1.0;
    double order_ = 1.0;
    std::vector<Term> terms_;
    double sup_a_ = 0.0, sup_abs_da_ = 0.0, sup_dda_ = 0.0;
};

struct GevreyFitRow {
    int k;
    double max_abs_deriv;   // max_x |d^k a| from the spectral derivative
    double envelope;        // C A^k k!^s
};

struct GevreyFit {
    double C;
    double A;
    double s;
    std::vector<GevreyFitRow> rows;
};

/// Least A such that max|d^k a| <= C A^k k!^s for all k <= k_max with
/// C = max|a| + 1.  Derivatives are spectral; k_max <= n/4.
GevreyFit estimate_gevrey_constants(const SpaceCoefficient& a, const Grid& g, int k_max);

struct GlaeserResult {
    double c_star;       // 2 sup_t b sup_x a''
    double min_slack;    // min over (t, x) of c* a - b (a')^2
    double tolerance;    // -1e-10 (1 + c* sup a)
    bool passed;         // min_slack >= tolerance
    bool convexity_ok;   // sup a'' >= 0 or a constant
};

GlaeserResult glaeser_constant(const TimeCoefficient& b, const SpaceCoefficient& a);

struct CjsResult {
    double integral;        // int_0^t |b'| / (b + r) ds
    double ratio;           // integral * r^{1/N}
    double sup_integrand;   // max over quadrature nodes of |b'|/(b+r)
};

/// Composite-midpoint quadrature of |b'|/(b+r) on [0, t], refined until
/// two successive levels differ by < 1e-8 relative (error after 22
/// levels).
CjsResult cjs_integral_bound(const TimeCoefficient& f, double r, double t);

struct CjsSlopes {
    double integral_slope;       // d log(integral) / d log(r)
    double sup_integrand_slope;  // d log(sup integrand) / d log(r)
    std::vector<CjsResult> samples;
};

/// Log-log regression of the quadrature outputs against r.
CjsSlopes cjs_slope_fit(const TimeCoefficient& f, const std::vector<double>& rs, double t);

}  // namespace gwl
