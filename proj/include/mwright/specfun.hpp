#pragma once

// Scalar special functions: gamma, the M-Wright function, the Mittag-Leffler
// function on the negative real axis and the Kolmogorov distribution tail.

#include <numbers>

namespace mwright {

namespace constants {
inline constexpr double euler_gamma = std::numbers::egamma;  // 0.5772156649015329
inline constexpr double zeta3 = 1.2020569031595942853997;    // Apery's constant
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// Truncation policy for the infinite series below.
struct SeriesControl {
    int max_terms = 200;
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;

    /// Throws DomainError unless max_terms >= 1 and some tolerance is positive.
    void validate() const;
};

/// Gamma function; throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// log|Gamma(x)|; throws PoleError at 0, -1, -2, ...
double lgamma_fn(double x);

/// M-Wright function M_alpha(x), x >= 0, 0 < alpha < 1, summed with the
/// reflection form of the defining series.
///
/// alpha == 0.5 returns exp(-x^2/4)/sqrt(pi) directly. Throws NonConvergence
/// when the alternating series loses precision (peak term above 1e15) or has
/// not met tolerance after ctrl.max_terms terms; this happens for large x,
/// sooner as alpha approaches 1.
double mwright_series(double x, double alpha, const SeriesControl& ctrl = {});

/// M-Wright function over the full half line. Uses mwright_series while the
/// series is numerically clean and otherwise a quadrature of the Zolotarev
/// integral representation, which has a positive integrand.
double mwright_fn(double x, double alpha);

/// Integral-representation route for M_alpha(x), x > 0. Exposed for
/// cross-checking against the series.
double mwright_integral(double x, double alpha);

/// Mittag-Leffler function E_order(z) for z <= 0 and 0 < order <= 2.
///
/// Power series for |z| <= 5; below -5 and for order < 1 the asymptotic
/// expansion -sum z^-k / Gamma(1 - order*k) is used. Throws NonConvergence
/// when neither route is reliable (large |z| with order >= 1, other than
/// order == 1 which is exp(z)).
double mittag_leffler_neg(double z, double order, const SeriesControl& ctrl = {});

/// Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

/// Standard normal quantile, accurate to ~1e-15 after a Halley refinement step.
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace mwright
