#include "mwright/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mwright/errors.hpp"
#include "mwright/specfun.hpp"
#include "mwright/stats_util.hpp"

namespace mwright {

using constants::euler_gamma;
using constants::pi;
using constants::zeta3;

namespace {

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("confidence level must lie in (0, 1), got " + std::to_string(level));
    }
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// |x - centre| for every observation
std::vector<double> abs_deviations(std::span<const double> data, double centre) {
    std::vector<double> out(data.size());
    std::transform(data.begin(), data.end(), out.begin(), [centre](double x) { return std::abs(x - centre); });
    return out;
}

std::vector<double> shifted(std::span<const double> data, double centre) {
    std::vector<double> out(data.size());
    std::transform(data.begin(), data.end(), out.begin(), [centre](double x) { return x - centre; });
    return out;
}

struct ScaleShape {
    AlphaRhoEstimate est;
    LogMomentStats stats;
};

ScaleShape scale_shape(std::span<const double> magnitudes) {
    ScaleShape out;
    out.stats = log_stats(magnitudes, true);
    out.est = estimate_alpha_rho(out.stats);
    return out;
}

}  // namespace

LogMomentStats log_stats(std::span<const double> data, bool exclude_nonpositive) {
    LogMomentStats s;
    std::vector<double> logs;
    logs.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double x = data[i];
        if (exclude_nonpositive && !(x > 0.0)) {
            ++s.excluded;
            continue;
        }
        if (x == 0.0) {
            throw ZeroObservation("log_stats: zero observation at index " + std::to_string(i));
        }
        logs.push_back(std::log(std::abs(x)));
    }
    if (logs.size() < 2) {
        throw InsufficientData("log_stats: need at least 2 usable observations, have " +
                               std::to_string(logs.size()));
    }
    s.n = logs.size();
    s.mean_xp = mean_of(logs);
    double ss = 0.0;
    for (double l : logs) {
        ss += (l - s.mean_xp) * (l - s.mean_xp);
    }
    s.var_xp = ss / static_cast<double>(s.n);
    return s;
}

AlphaRhoEstimate estimate_alpha_rho(const LogMomentStats& s) {
    AlphaRhoEstimate out;
    const double ratio = 1.0 - 6.0 * s.var_xp / (pi * pi);
    double alpha = 0.0;
    if (ratio <= 0.0) {
        alpha = kAlphaClamp;
        out.clamped = true;
    } else if (s.var_xp <= 0.0) {
        alpha = 1.0 - kAlphaClamp;
        out.clamped = true;
    } else {
        alpha = std::sqrt(ratio);
        if (alpha < kAlphaClamp || alpha > 1.0 - kAlphaClamp) {
            alpha = std::clamp(alpha, kAlphaClamp, 1.0 - kAlphaClamp);
            out.clamped = true;
        }
    }
    out.alpha = alpha;
    out.rho = std::exp(s.mean_xp + euler_gamma * (1.0 - alpha));
    return out;
}

double CovMatrix2::correlation() const {
    const double d = s_aa * s_rr;
    if (!(d > 0.0)) {
        return 0.0;
    }
    return std::clamp(s_ar / std::sqrt(d), -1.0, 1.0);
}

CovMatrix2 asymptotic_cov(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("asymptotic_cov: alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (!(rho > 0.0)) {
        throw DomainError("asymptotic_cov: rho must be positive");
    }
    const double a = alpha;
    const double a2 = a * a;
    const double a4 = a2 * a2;
    const double g = euler_gamma;
    const double pi2 = pi * pi;
    CovMatrix2 c;
    c.s_aa = (11.0 - a4) / (10.0 * a2) - 1.0;
    // rho scales both terms: d rho_hat / d mu_X' = rho
    c.s_ar = rho * ((10.0 * a2 - 11.0 + a4) * g - 60.0 * a * (a2 * a - 1.0) * zeta3 / pi2) / (10.0 * a2);
    c.s_rr = rho * rho *
             (360.0 * a * (a2 * a - 1.0) * g * zeta3 - (a2 - 1.0) * pi2 * (3.0 * (11.0 + a2) * g * g + 5.0 * a2 * pi2)) /
             (30.0 * a2 * pi2);
    return c;
}

std::string_view to_string(CiMethod m) {
    switch (m) {
        case CiMethod::DeltaMethod: return "delta-method";
        case CiMethod::OrderStatistic: return "order-statistic";
        case CiMethod::MeanCLT: return "mean-clt";
        case CiMethod::MedianCLT: return "median-clt";
        case CiMethod::BootstrapPercentile: return "bootstrap-percentile";
    }
    return "unknown";
}

std::string_view to_string(LocationEstimator e) {
    switch (e) {
        case LocationEstimator::Min: return "min";
        case LocationEstimator::Mean: return "mean";
        case LocationEstimator::Median: return "median";
        case LocationEstimator::Known: return "known";
    }
    return "unknown";
}

double two_sided_z(double level) {
    check_level(level);
    return normal_quantile(0.5 + 0.5 * level);
}

std::pair<ConfidenceInterval, ConfidenceInterval> ci_alpha_rho(double alpha_hat, double rho_hat, std::size_t n,
                                                               double level) {
    if (n < 2) {
        throw InsufficientData("ci_alpha_rho: n must be >= 2");
    }
    const CovMatrix2 cov = asymptotic_cov(alpha_hat, rho_hat);
    const double z = two_sided_z(level);
    const double nn = static_cast<double>(n);
    const double ha = z * std::sqrt(std::max(cov.s_aa, 0.0) / nn);
    const double hr = z * std::sqrt(std::max(cov.s_rr, 0.0) / nn);
    ConfidenceInterval ca{std::max(alpha_hat - ha, 0.0), std::min(alpha_hat + ha, 1.0), level,
                          CiMethod::DeltaMethod};
    ConfidenceInterval cr{std::max(rho_hat - hr, 0.0), rho_hat + hr, level, CiMethod::DeltaMethod};
    return {ca, cr};
}

double estimate_mu_onesided(std::span<const double> data) {
    if (data.empty()) {
        throw InsufficientData("estimate_mu_onesided: empty sample");
    }
    return *std::min_element(data.begin(), data.end());
}

double mc_quantile_m(double alpha, double p, const RngStream& rng, std::size_t m) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("mc_quantile_m: alpha must lie in (0, 1)");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("mc_quantile_m: p must lie in (0, 1)");
    }
    if (m < 1) {
        throw DomainError("mc_quantile_m: m must be >= 1");
    }
    Engine eng(rng);
    std::vector<double> draws(m);
    for (auto& d : draws) {
        d = draw_standard_mwright(alpha, eng);
    }
    return quantile_type8_inplace(draws, p);
}

ConfidenceInterval ci_mu_onesided(double mu_hat, double rho_hat, double alpha_hat, std::size_t n, double level,
                                  const RngStream& rng, std::size_t m) {
    check_level(level);
    if (n < 1) {
        throw InsufficientData("ci_mu_onesided: n must be >= 1");
    }
    const double nu = 1.0 - level;
    // 1 - nu^(1/n) without cancellation
    const double p = -std::expm1(std::log(nu) / static_cast<double>(n));
    const double q = mc_quantile_m(alpha_hat, p, rng, m);
    return ConfidenceInterval{mu_hat - q * rho_hat, mu_hat, level, CiMethod::OrderStatistic};
}

double are_mean_median(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("are_mean_median: alpha must lie in (0, 1)");
    }
    const double g = std::tgamma(1.0 - alpha);
    return 1.0 / (alpha * std::tgamma(2.0 * alpha) * g * g);
}

LocationEstimate estimate_mu_symmetric(std::span<const double> data, std::optional<double> alpha_hint) {
    if (data.size() < 2) {
        throw InsufficientData("estimate_mu_symmetric: need at least 2 observations");
    }
    const double med = median(data);
    double alpha = 0.0;
    if (alpha_hint) {
        alpha = *alpha_hint;
    } else {
        const std::vector<double> dev = abs_deviations(data, med);
        const std::size_t nonzero = static_cast<std::size_t>(
            std::count_if(dev.begin(), dev.end(), [](double d) { return d > 0.0; }));
        if (nonzero < 2) {
            // (near-)constant data: both estimators agree
            return {med, LocationEstimator::Median};
        }
        alpha = scale_shape(dev).est.alpha;
    }
    if (alpha > kAreCutoff) {
        return {mean_of(data), LocationEstimator::Mean};
    }
    return {med, LocationEstimator::Median};
}

ConfidenceInterval ci_mu_symmetric(double mu_hat, double alpha_hat, double rho_hat, std::size_t n, double level,
                                   LocationEstimator which) {
    if (n < 1) {
        throw InsufficientData("ci_mu_symmetric: n must be >= 1");
    }
    if (!(alpha_hat > 0.0 && alpha_hat < 1.0) || !(rho_hat > 0.0)) {
        throw DomainError("ci_mu_symmetric: need alpha in (0, 1) and rho > 0");
    }
    const double z = two_sided_z(level);
    const double nn = static_cast<double>(n);
    double half = 0.0;
    CiMethod method = CiMethod::MeanCLT;
    if (which == LocationEstimator::Mean) {
        half = z * rho_hat / std::sqrt(alpha_hat * nn * std::tgamma(2.0 * alpha_hat));
    } else if (which == LocationEstimator::Median) {
        half = z * rho_hat * std::tgamma(1.0 - alpha_hat) / std::sqrt(nn);
        method = CiMethod::MedianCLT;
    } else {
        throw DomainError("ci_mu_symmetric: estimator must be mean or median");
    }
    return ConfidenceInterval{mu_hat - half, mu_hat + half, level, method};
}

PointEstimate point_estimate(std::span<const double> data, Variant variant, const FitOptions& opts) {
    if (data.size() < 3) {
        throw InsufficientData("point_estimate: need at least 3 observations, have " + std::to_string(data.size()));
    }
    PointEstimate out;
    out.params.variant = variant;
    std::vector<double> magnitudes;
    if (variant == Variant::OneSided) {
        if (opts.known_mu) {
            out.params.mu = *opts.known_mu;
            out.location = LocationEstimator::Known;
        } else {
            out.params.mu = estimate_mu_onesided(data);
            out.location = LocationEstimator::Min;
        }
        magnitudes = shifted(data, out.params.mu);
    } else {
        if (opts.known_mu) {
            out.params.mu = *opts.known_mu;
            out.location = LocationEstimator::Known;
        } else if (opts.location_rule == LocationRule::Mean) {
            out.params.mu = mean_of(data);
            out.location = LocationEstimator::Mean;
        } else if (opts.location_rule == LocationRule::Median) {
            out.params.mu = median(data);
            out.location = LocationEstimator::Median;
        } else {
            const LocationEstimate loc = estimate_mu_symmetric(data);
            out.params.mu = loc.mu;
            out.location = loc.estimator;
        }
        magnitudes = abs_deviations(data, out.params.mu);
    }
    const ScaleShape ss = scale_shape(magnitudes);
    out.params.alpha = ss.est.alpha;
    out.params.rho = ss.est.rho;
    out.clamped = ss.est.clamped;
    out.n_used = ss.stats.n;
    out.dropped = ss.stats.excluded;
    return out;
}

FitResult fit(std::span<const double> data, Variant variant, double level, const RngStream& rng,
              const FitOptions& opts) {
    check_level(level);
    if (data.size() < kMinFitSize) {
        throw InsufficientData("fit: need at least " + std::to_string(kMinFitSize) + " observations, have " +
                               std::to_string(data.size()));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw DomainError("fit: non-finite observation at index " + std::to_string(i));
        }
    }
    const PointEstimate pe = point_estimate(data, variant, opts);
    FitResult r;
    r.params = pe.params;
    r.n = data.size();
    r.location_estimator_used = pe.location;
    if (pe.dropped > 0) {
        if (pe.location == LocationEstimator::Known && variant == Variant::OneSided) {
            r.diagnostics.push_back("dropped " + std::to_string(pe.dropped) +
                                    " observation(s) at or below the known location");
        } else {
            r.diagnostics.push_back("dropped " + std::to_string(pe.dropped) +
                                    " observation(s) equal to the location estimate before the log transform");
        }
    }
    if (pe.clamped) {
        r.diagnostics.push_back("alpha estimate clamped to " + std::to_string(pe.params.alpha) +
                                " (log-variance outside (0, pi^2/6))");
    }
    const auto [ca, cr] = ci_alpha_rho(pe.params.alpha, pe.params.rho, pe.n_used, level);
    r.ci_alpha = ca;
    r.ci_rho = cr;
    r.cov = asymptotic_cov(pe.params.alpha, pe.params.rho);
    r.corr_alpha_rho = r.cov.correlation();
    if (pe.location == LocationEstimator::Min) {
        r.ci_mu = ci_mu_onesided(pe.params.mu, pe.params.rho, pe.params.alpha, data.size(), level, rng,
                                 opts.quantile_draws);
    } else if (pe.location == LocationEstimator::Mean || pe.location == LocationEstimator::Median) {
        r.ci_mu = ci_mu_symmetric(pe.params.mu, pe.params.alpha, pe.params.rho, data.size(), level, pe.location);
    }
    return r;
}

BootstrapIntervals bootstrap_percentile_cis(std::span<const double> data, Variant variant, double level,
                                            std::size_t b, const RngStream& rng, const FitOptions& opts) {
    check_level(level);
    if (b < 100) {
        throw DomainError("bootstrap: need at least 100 resamples");
    }
    if (data.size() < 3) {
        throw InsufficientData("bootstrap: need at least 3 observations");
    }
    const std::size_t n = data.size();
    std::vector<double> alphas(b), rhos(b), mus(b);
    std::vector<double> resample(n);
    for (std::size_t k = 0; k < b; ++k) {
        Engine eng(rng.substream(k));
        for (auto& x : resample) {
            x = data[eng.index(n)];
        }
        const PointEstimate pe = point_estimate(resample, variant, opts);
        alphas[k] = pe.params.alpha;
        rhos[k] = pe.params.rho;
        mus[k] = pe.params.mu;
    }
    const double nu = 1.0 - level;
    auto percentile = [&](std::vector<double>& v) {
        const double lo = quantile_type8_inplace(v, 0.5 * nu);
        const double hi = quantile_type8_inplace(v, 1.0 - 0.5 * nu);
        return ConfidenceInterval{lo, hi, level, CiMethod::BootstrapPercentile};
    };
    BootstrapIntervals out;
    out.alpha = percentile(alphas);
    out.rho = percentile(rhos);
    if (!opts.known_mu) {
        out.mu = percentile(mus);
    }
    return out;
}

ConfidenceInterval bootstrap_percentile_ci(std::span<const double> data, Variant variant, Statistic statistic,
                                           double level, std::size_t b, const RngStream& rng,
                                           const FitOptions& opts) {
    if (statistic == Statistic::Mu && opts.known_mu) {
        throw DomainError("bootstrap_percentile_ci: location is known, no interval for mu");
    }
    const BootstrapIntervals all = bootstrap_percentile_cis(data, variant, level, b, rng, opts);
    switch (statistic) {
        case Statistic::Alpha: return all.alpha;
        case Statistic::Rho: return all.rho;
        case Statistic::Mu: return *all.mu;
    }
    return all.alpha;
}

}  // namespace mwright
