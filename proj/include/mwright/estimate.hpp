#pragma once

// Closed-form inference for the three-parameter M-Wright families:
// log-moment estimators of (alpha, rho), their delta-method covariance and
// intervals, location estimators and intervals, percentile-bootstrap
// comparators and the full fitting pipeline.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mwright/distribution.hpp"
#include "mwright/sampling.hpp"

namespace mwright {

/// Mean and divide-by-n variance of X' = log|x| over the usable observations.
struct LogMomentStats {
    std::size_t n = 0;
    double mean_xp = 0.0;
    double var_xp = 0.0;
    std::size_t excluded = 0;  // observations dropped by the exclusion policy
};

/// With exclude_nonpositive set, values <= 0 are skipped; otherwise a zero is a
/// ZeroObservation error and negatives enter through |x|. Needs >= 2 usable
/// values.
LogMomentStats log_stats(std::span<const double> data, bool exclude_nonpositive);

struct AlphaRhoEstimate {
    double alpha = 0.0;
    double rho = 0.0;
    bool clamped = false;
};

inline constexpr double kAlphaClamp = 1e-6;

/// alpha = sqrt(1 - 6 var / pi^2), rho = exp(mean + gamma (1 - alpha)).
/// alpha is clamped into [1e-6, 1 - 1e-6] (flagged) when the sample log
/// variance leaves (0, pi^2/6).
AlphaRhoEstimate estimate_alpha_rho(const LogMomentStats& s);

/// Asymptotic covariance of sqrt(n) (alpha_hat - alpha, rho_hat - rho).
struct CovMatrix2 {
    double s_aa = 0.0;
    double s_ar = 0.0;
    double s_rr = 0.0;

    /// s_ar / sqrt(s_aa s_rr); 0 when either variance vanishes.
    double correlation() const;
};

/// Delta-method covariance at (alpha, rho), alpha in (0, 1]. Throws
/// DomainError at alpha <= 0.
CovMatrix2 asymptotic_cov(double alpha, double rho);

enum class CiMethod { DeltaMethod, OrderStatistic, MeanCLT, MedianCLT, BootstrapPercentile };
std::string_view to_string(CiMethod m);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    CiMethod method = CiMethod::DeltaMethod;

    bool contains(double v) const { return lower <= v && v <= upper; }
    double width() const { return upper - lower; }
};

/// z_{nu/2}: the (1 - nu/2) standard normal quantile for level = 1 - nu.
double two_sided_z(double level);

/// Wald intervals alpha_hat +- z sqrt(s_aa/n), rho_hat +- z sqrt(s_rr/n); the
/// alpha interval is intersected with [0, 1], the rho lower end floored at 0.
std::pair<ConfidenceInterval, ConfidenceInterval> ci_alpha_rho(double alpha_hat, double rho_hat, std::size_t n,
                                                               double level);

/// Sample minimum.
double estimate_mu_onesided(std::span<const double> data);

inline constexpr std::size_t kDefaultQuantileDraws = 1'000'000;

/// Type-8 p-quantile of m simulated M_{alpha,1,0} variates.
double mc_quantile_m(double alpha, double p, const RngStream& rng, std::size_t m = kDefaultQuantileDraws);

/// (mu_hat - q rho_hat, mu_hat) with q the (1 - nu^(1/n)) quantile of
/// M_{alpha_hat,1,0}, estimated by mc_quantile_m.
ConfidenceInterval ci_mu_onesided(double mu_hat, double rho_hat, double alpha_hat, std::size_t n, double level,
                                  const RngStream& rng, std::size_t m = kDefaultQuantileDraws);

/// Asymptotic relative efficiency of the sample mean to the sample median for
/// the symmetric law: 1 / (alpha Gamma(2 alpha) Gamma(1 - alpha)^2).
double are_mean_median(double alpha);

/// alpha at which are_mean_median == 1; the mean is preferred above it.
inline constexpr double kAreCutoff = 0.39106;

enum class LocationEstimator { Min, Mean, Median, Known };
std::string_view to_string(LocationEstimator e);

struct LocationEstimate {
    double mu = 0.0;
    LocationEstimator estimator = LocationEstimator::Median;
};

/// Location of symmetric data. With a hint the cutoff rule is applied to it
/// directly; otherwise the median is used to estimate alpha and the mean
/// replaces it when that estimate exceeds the cutoff.
LocationEstimate estimate_mu_symmetric(std::span<const double> data, std::optional<double> alpha_hint = {});

/// Mean-based: mu_hat +- z rho (alpha n Gamma(2 alpha))^(-1/2).
/// Median-based: mu_hat +- z rho Gamma(1 - alpha) / sqrt(n).
ConfidenceInterval ci_mu_symmetric(double mu_hat, double alpha_hat, double rho_hat, std::size_t n, double level,
                                   LocationEstimator which);

enum class LocationRule { Auto, Mean, Median };

struct FitOptions {
    /// Treat the location as known instead of estimating it.
    std::optional<double> known_mu;
    /// Symmetric location choice; Auto applies the two-pass cutoff rule.
    LocationRule location_rule = LocationRule::Auto;
    /// Variates used for the one-sided location quantile.
    std::size_t quantile_draws = kDefaultQuantileDraws;
};

struct PointEstimate {
    MWrightParams params;
    LocationEstimator location = LocationEstimator::Min;
    bool clamped = false;
    std::size_t n_used = 0;   // observations entering the log-moment step
    std::size_t dropped = 0;  // observations equal to the location estimate
};

/// Point estimates only; the path re-run by the bootstrap and the simulator.
PointEstimate point_estimate(std::span<const double> data, Variant variant, const FitOptions& opts = {});

struct FitResult {
    MWrightParams params;
    ConfidenceInterval ci_alpha;
    ConfidenceInterval ci_rho;
    std::optional<ConfidenceInterval> ci_mu;  // empty when the location is known
    CovMatrix2 cov;
    double corr_alpha_rho = 0.0;
    LocationEstimator location_estimator_used = LocationEstimator::Min;
    std::size_t n = 0;
    std::vector<std::string> diagnostics;
};

inline constexpr std::size_t kMinFitSize = 10;

/// Full pipeline: location, subtraction (and |.| for the symmetric law),
/// log-moment estimates, every interval and the alpha-rho correlation.
/// rng drives the one-sided location quantile.
FitResult fit(std::span<const double> data, Variant variant, double level, const RngStream& rng,
              const FitOptions& opts = {});

enum class Statistic { Alpha, Rho, Mu };

inline constexpr std::size_t kDefaultBootstrapResamples = 1000;

struct BootstrapIntervals {
    ConfidenceInterval alpha;
    ConfidenceInterval rho;
    std::optional<ConfidenceInterval> mu;  // empty when the location is known
};

/// Percentile bootstrap: b resamples with replacement, resample k drawn from
/// rng.substream(k), point_estimate re-run on each, type-8 quantiles at
/// (nu/2, 1 - nu/2) of the replicate estimates.
BootstrapIntervals bootstrap_percentile_cis(std::span<const double> data, Variant variant, double level,
                                            std::size_t b, const RngStream& rng, const FitOptions& opts = {});

ConfidenceInterval bootstrap_percentile_ci(std::span<const double> data, Variant variant, Statistic statistic,
                                           double level, std::size_t b, const RngStream& rng,
                                           const FitOptions& opts = {});

}  // namespace mwright
