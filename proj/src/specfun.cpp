#include "mwright/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mwright/errors.hpp"

namespace mwright {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Peak term magnitude beyond which the alternating M-Wright series is refused.
constexpr double kSeriesPeakLimit = 1e15;

// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct SeriesOutcome {
    double value = 0.0;
    double peak = 0.0;  // largest |term| seen
    int terms = 0;
    bool converged = false;
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
}

// (1/pi) sum_{j>=1} (-x)^(j-1) / (j-1)! * Gamma(alpha j) sin(pi alpha j)
SeriesOutcome mwright_reflection_sum(double x, double alpha, const SeriesControl& ctrl) {
    SeriesOutcome out;
    CompensatedSum acc;
    const double log_x = std::log(x);
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= ctrl.max_terms; ++j) {
        const double aj = alpha * j;
        const double log_bound = (j - 1) * log_x + std::lgamma(aj) - std::lgamma(static_cast<double>(j));
        const double bound = std::exp(log_bound) / constants::pi;
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        const double term = sign * bound * std::sin(constants::pi * aj);
        acc.add(term);
        out.peak = std::max(out.peak, bound);
        out.terms = j;
        if (out.peak > kSeriesPeakLimit) {
            out.value = acc.value();
            return out;
        }
        const double sum = acc.value();
        if (bound < prev_bound && bound <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(sum))) {
            out.value = sum;
            out.converged = true;
            return out;
        }
        prev_bound = bound;
    }
    out.value = acc.value();
    return out;
}

// log of Kanter's function
// a(phi) = [sin(alpha phi) / sin(phi)]^(1/(1-alpha)) * sin((1-alpha) phi) / sin(alpha phi)
double log_kanter_a(double phi, double alpha) {
    const double s_a = std::sin(alpha * phi);
    const double s_1 = std::sin(phi);
    const double s_c = std::sin((1.0 - alpha) * phi);
    return (std::log(s_a) - std::log(s_1)) / (1.0 - alpha) + std::log(s_c) - std::log(s_a);
}

}  // namespace

void SeriesControl::validate() const {
    if (max_terms < 1) {
        throw DomainError("SeriesControl.max_terms must be >= 1");
    }
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0)) {
        throw DomainError("SeriesControl needs a non-negative tolerance, at least one positive");
    }
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("gamma_fn: pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

double lgamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("lgamma_fn: pole at " + std::to_string(x));
    }
    return std::lgamma(x);
}

double mwright_series(double x, double alpha, const SeriesControl& ctrl) {
    check_alpha(alpha);
    ctrl.validate();
    if (!(x >= 0.0)) {
        throw DomainError("mwright_series: x must be >= 0");
    }
    if (alpha == 0.5) {
        return std::exp(-0.25 * x * x) / std::sqrt(constants::pi);
    }
    if (x == 0.0) {
        return 1.0 / std::tgamma(1.0 - alpha);
    }
    const SeriesOutcome r = mwright_reflection_sum(x, alpha, ctrl);
    if (!r.converged) {
        throw NonConvergence("mwright_series: no convergence at x=" + std::to_string(x) +
                             ", alpha=" + std::to_string(alpha) + " after " + std::to_string(r.terms) +
                             " terms (peak term " + std::to_string(r.peak) + ")");
    }
    return std::max(r.value, 0.0);
}

double mwright_integral(double x, double alpha) {
    check_alpha(alpha);
    if (!(x > 0.0)) {
        throw DomainError("mwright_integral: x must be > 0");
    }
    const double c = 1.0 - alpha;
    const double k = std::pow(x, 1.0 / c);
    const double a0 = c * std::pow(alpha, alpha / c);
    // integrand a(phi) exp(-k (a(phi) - a0)); a is increasing from a0 at phi = 0
    auto integrand = [&](double phi) {
        if (phi <= 0.0) {
            return a0;
        }
        if (phi >= constants::pi) {
            return 0.0;
        }
        const double la = log_kanter_a(phi, alpha);
        const double a = std::exp(la);
        if (!std::isfinite(a)) {
            return 0.0;
        }
        return std::exp(la - k * (a - a0));
    };
    const double log_pref = (alpha / c) * std::log(x) - std::log(c * constants::pi) - k * a0;
    // the integral is at most pi * max(a0, 1/k) * exp(k a0) / e; skip work that would underflow
    if (log_pref + std::log(constants::pi * std::max(a0, 1.0 / k)) < -760.0) {
        return 0.0;
    }
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    const double integral = rule.integrate(integrand, 0.0, constants::pi, 1e-12);
    return std::exp(log_pref) * integral;
}

double mwright_fn(double x, double alpha) {
    check_alpha(alpha);
    if (!(x >= 0.0)) {
        throw DomainError("mwright_fn: x must be >= 0");
    }
    if (alpha == 0.5) {
        return std::exp(-0.25 * x * x) / std::sqrt(constants::pi);
    }
    if (x == 0.0) {
        return 1.0 / std::tgamma(1.0 - alpha);
    }
    const SeriesControl ctrl{400, 1e-300, 1e-15};
    const SeriesOutcome r = mwright_reflection_sum(x, alpha, ctrl);
    // keep the series only while cancellation costs less than ~11 digits
    if (r.converged && r.value > 0.0 && r.peak <= 1e4 * r.value) {
        return r.value;
    }
    return mwright_integral(x, alpha);
}

namespace {

// sum_{j>=0} z^j / Gamma(1 + order j)
SeriesOutcome ml_power_series(double z, double order, const SeriesControl& ctrl) {
    SeriesOutcome out;
    CompensatedSum acc;
    const double log_abs_z = std::log(std::abs(z));
    double prev_bound = std::numeric_limits<double>::infinity();
    acc.add(1.0);
    out.peak = 1.0;
    for (int j = 1; j <= ctrl.max_terms; ++j) {
        const double arg = 1.0 + order * j;
        const double bound = std::exp(j * log_abs_z - std::lgamma(arg));
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * bound);
        out.peak = std::max(out.peak, bound);
        out.terms = j;
        const double sum = acc.value();
        if (bound < prev_bound && bound <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(sum))) {
            out.value = sum;
            out.converged = true;
            return out;
        }
        prev_bound = bound;
    }
    out.value = acc.value();
    return out;
}

struct AsymptoticOutcome {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();  // first omitted term
};

// -sum_{k=1..K} z^-k / Gamma(1 - order k), truncated at the smallest term.
AsymptoticOutcome ml_asymptotic(double z, double order) {
    AsymptoticOutcome out;
    out.error = std::numeric_limits<double>::infinity();
    CompensatedSum acc;
    double prev = std::numeric_limits<double>::infinity();
    const double log_abs_z = std::log(std::abs(z));
    for (int k = 1; k <= 200; ++k) {
        const double ak = order * k;
        // |1/Gamma(1 - ak)| = Gamma(ak) |sin(pi ak)| / pi, so Gamma(ak)/pi bounds the term
        // even where a term sits next to a pole and happens to be tiny
        const double envelope = std::exp(std::lgamma(ak) - k * log_abs_z) / constants::pi;
        if (envelope > prev) {
            break;
        }
        out.error = envelope;
        const double arg = 1.0 - ak;
        double recip_gamma = 0.0;
        if (!is_nonpositive_integer(arg)) {
            recip_gamma = (arg > 0.0) ? 1.0 / std::tgamma(arg)
                                      : std::sin(constants::pi * ak) * std::exp(std::lgamma(ak)) / constants::pi;
        }
        // z < 0 so z^-k = (-1)^k |z|^-k
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc.add(-sign * std::exp(-k * log_abs_z) * recip_gamma);
        prev = envelope;
    }
    out.value = acc.value();
    return out;
}

// E_a(-t^a) = (sin(a pi)/pi) int_0^inf exp(-r t) r^(a-1) / (r^(2a) + 2 r^a cos(a pi) + 1) dr,
// valid for 0 < a < 1.
double ml_integral(double z, double order) {
    // (sin a pi / pi) int_0^inf e^{-r t} r^{a-1} / (r^{2a} + 2 r^a cos a pi + 1) dr with u = r^a
    const double t = std::pow(-z, 1.0 / order);
    const double s = std::sin(order * constants::pi);
    const double c = std::cos(order * constants::pi);
    auto integrand = [&](double u) {
        if (!(u > 0.0)) {
            return 1.0;
        }
        return std::exp(-t * std::pow(u, 1.0 / order)) / (u * u + 2.0 * u * c + 1.0);
    };
    constexpr double kSplit = 2.0;
    thread_local boost::math::quadrature::tanh_sinh<double> near_rule;
    thread_local boost::math::quadrature::exp_sinh<double> tail_rule;
    const double near = near_rule.integrate(integrand, 0.0, kSplit, 1e-13);
    const double tail = tail_rule.integrate(integrand, kSplit, std::numeric_limits<double>::infinity(), 1e-13);
    return s / (constants::pi * order) * (near + tail);
}

}  // namespace

double mittag_leffler_neg(double z, double order, const SeriesControl& ctrl) {
    ctrl.validate();
    if (!(z <= 0.0)) {
        throw DomainError("mittag_leffler_neg: z must be <= 0");
    }
    if (!(order > 0.0 && order <= 2.0)) {
        throw DomainError("mittag_leffler_neg: order must lie in (0, 2]");
    }
    if (z == 0.0) {
        return 1.0;
    }
    if (order == 1.0) {
        return std::exp(z);
    }
    // below order 1 the integral is always available, so demand the full tolerance;
    // above it the series is the only route and 8 surviving digits will do
    const double keep = order < 1.0 ? ctrl.rel_tol : 1e-8;
    auto series_ok = [&](const SeriesOutcome& r) {
        return r.converged && 4.0 * kEps * r.peak <= std::max(ctrl.abs_tol, keep * std::abs(r.value));
    };
    if (z >= -5.0) {
        const SeriesOutcome r = ml_power_series(z, order, ctrl);
        if (series_ok(r)) {
            return r.value;
        }
    }
    if (order < 1.0) {
        if (z < -5.0) {
            const AsymptoticOutcome a = ml_asymptotic(z, order);
            if (a.error <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(a.value))) {
                return a.value;
            }
        }
        return ml_integral(z, order);
    }
    if (z < -5.0) {
        const SeriesOutcome r = ml_power_series(z, order, ctrl);
        if (series_ok(r)) {
            return r.value;
        }
    }
    throw NonConvergence("mittag_leffler_neg: no reliable route at z=" + std::to_string(z) +
                         ", order=" + std::to_string(order));
}

double kolmogorov_tail(double lambda) {
    if (!(lambda >= 0.0)) {
        throw DomainError("kolmogorov_tail: lambda must be >= 0");
    }
    if (lambda == 0.0) {
        return 1.0;
    }
    double q = 0.0;
    if (lambda < 1.18) {
        // Jacobi-transformed form converges fast for small lambda
        const double w = constants::pi * constants::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double m = 2.0 * k - 1.0;
            s += std::exp(-m * m * w);
        }
        q = 1.0 - std::sqrt(2.0 * constants::pi) / lambda * s;
    } else {
        double s = 0.0;
        for (int k = 1; k <= 100; ++k) {
            const double t = std::exp(-2.0 * k * k * lambda * lambda);
            s += (k % 2 == 1) ? t : -t;
            if (t < 1e-300) {
                break;
            }
        }
        q = 2.0 * s;
    }
    return std::clamp(q, 0.0, 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal_quantile: p must lie in (0, 1)");
    }
    // Acklam's rational approximation (relative error < 1.15e-9)
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // one Halley step against erfc
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * constants::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace mwright
