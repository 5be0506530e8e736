#include "mwright/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mwright/errors.hpp"
#include "mwright/parallel.hpp"
#include "mwright/specfun.hpp"

namespace mwright {

namespace {

void check_truth(double truth) {
    if (truth == 0.0 || !std::isfinite(truth)) {
        throw DomainError("percentage error needs a finite nonzero true value");
    }
}

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("quantile probability must lie in (0, 1)");
    }
}

// k-th smallest (0-based) of work; leaves work partially ordered
double select(std::span<double> work, std::size_t k) {
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), work.end());
    return work[k];
}

}  // namespace

double quantile_type8_inplace(std::span<double> work, double p) {
    check_probability(p);
    const std::size_t n = work.size();
    if (n == 0) {
        throw InsufficientData("quantile_type8: empty sample");
    }
    const double h = (static_cast<double>(n) + 1.0 / 3.0) * p + 1.0 / 3.0;
    if (h <= 1.0) {
        return *std::min_element(work.begin(), work.end());
    }
    if (h >= static_cast<double>(n)) {
        return *std::max_element(work.begin(), work.end());
    }
    const double fl = std::floor(h);
    const auto lo = static_cast<std::size_t>(fl) - 1;  // 0-based index of x_(floor h)
    const double frac = h - fl;
    const double x_lo = select(work, lo);
    // after nth_element everything right of lo is >= x_lo, so the next order
    // statistic is the minimum of that tail
    const double x_hi = *std::min_element(work.begin() + static_cast<std::ptrdiff_t>(lo) + 1, work.end());
    return x_lo + frac * (x_hi - x_lo);
}

double quantile_type8(std::span<const double> data, double p) {
    std::vector<double> work(data.begin(), data.end());
    return quantile_type8_inplace(work, p);
}

double median_inplace(std::span<double> work) {
    const std::size_t n = work.size();
    if (n == 0) {
        throw InsufficientData("median: empty sample");
    }
    const std::size_t mid = n / 2;
    const double upper = select(work, mid);
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double median(std::span<const double> data) {
    std::vector<double> work(data.begin(), data.end());
    return median_inplace(work);
}

double pct_bias(std::span<const double> estimates, double truth) {
    check_truth(truth);
    if (estimates.empty()) {
        throw InsufficientData("pct_bias: no estimates");
    }
    double s = 0.0;
    for (double e : estimates) {
        s += std::abs(e - truth);
    }
    return 100.0 * s / static_cast<double>(estimates.size()) / std::abs(truth);
}

double pct_mad(std::span<const double> estimates, double truth) {
    check_truth(truth);
    if (estimates.empty()) {
        throw InsufficientData("pct_mad: no estimates");
    }
    std::vector<double> dev(estimates.size());
    std::transform(estimates.begin(), estimates.end(), dev.begin(),
                   [truth](double e) { return std::abs(e - truth); });
    return 100.0 * median_inplace(dev) / std::abs(truth);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw InsufficientData("ks_two_sample: both samples need at least one value");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        // step past every copy of v in both samples before comparing CDFs
        while (i < x.size() && x[i] == v) {
            ++i;
        }
        while (j < y.size() && y[j] == v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    KsResult r;
    r.d_stat = d;
    r.n1 = x.size();
    r.n2 = y.size();
    const double ne = std::sqrt(n1 * n2 / (n1 + n2));
    r.p_value = kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

double gof_simulated(std::span<const double> data, const MWrightParams& fitted, std::size_t sims,
                     const RngStream& rng, unsigned threads) {
    if (sims < 1) {
        throw DomainError("gof_simulated: sims must be >= 1");
    }
    if (data.empty()) {
        throw InsufficientData("gof_simulated: empty data");
    }
    fitted.validate();
    std::vector<double> pvals(sims);
    parallel_for(sims, threads, [&](std::size_t k) {
        const std::vector<double> sim = sample_mwright(fitted, rng.substream(k), data.size());
        pvals[k] = ks_two_sample(data, sim).p_value;
    });
    double s = 0.0;
    for (double p : pvals) {
        s += p;
    }
    return s / static_cast<double>(sims);
}

}  // namespace mwright
