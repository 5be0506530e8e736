#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mwright/distribution.hpp"
#include "mwright/sampling.hpp"

namespace mwright {

/// Sample quantile, Hyndman-Fan type 8 (approximately median-unbiased).
///
/// h = (n + 1/3) p + 1/3, linear interpolation between order statistics
/// floor(h) and floor(h) + 1 (1-based), clamped to the sample range.
double quantile_type8(std::span<const double> data, double p);

/// Type-8 quantile that partially reorders `work` in place instead of
/// copying. Linear time.
double quantile_type8_inplace(std::span<double> work, double p);

/// Sample median (midpoint of the two central order statistics for even n).
double median(std::span<const double> data);
double median_inplace(std::span<double> work);

/// Mean over replicates of 100 |est - truth| / |truth|.
double pct_bias(std::span<const double> estimates, double truth);

/// 100 median(|est - truth|) / |truth|, dispersion about the true value.
double pct_mad(std::span<const double> estimates, double truth);

struct KsResult {
    double d_stat = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q((sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D), ne = n1 n2 / (n1 + n2).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Mean KS p-value of `sims` datasets of size data.size() drawn from `fitted`,
/// each tested against the observed data. Simulation k uses rng.substream(k).
double gof_simulated(std::span<const double> data, const MWrightParams& fitted, std::size_t sims,
                     const RngStream& rng, unsigned threads = 1);

}  // namespace mwright
