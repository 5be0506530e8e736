#include "mwright/distribution.hpp"

#include <cmath>
#include <string>

#include "mwright/errors.hpp"
#include "mwright/specfun.hpp"

namespace mwright {

using constants::euler_gamma;
using constants::pi;
using constants::zeta3;

std::string_view to_string(Variant v) {
    return v == Variant::OneSided ? "one-sided" : "symmetric";
}

Variant parse_variant(std::string_view text) {
    if (text == "one-sided" || text == "onesided" || text == "one_sided") {
        return Variant::OneSided;
    }
    if (text == "symmetric") {
        return Variant::Symmetric;
    }
    throw DomainError("unknown variant '" + std::string(text) + "' (expected one-sided|symmetric)");
}

void MWrightParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError("rho must be positive and finite, got " + std::to_string(rho));
    }
    if (!std::isfinite(mu)) {
        throw DomainError("mu must be finite");
    }
}

double pdf(const MWrightParams& p, double x) {
    p.validate();
    if (p.variant == Variant::OneSided) {
        if (x < p.mu) {
            return 0.0;
        }
        return mwright_fn((x - p.mu) / p.rho, p.alpha) / p.rho;
    }
    return 0.5 * mwright_fn(std::abs(x - p.mu) / p.rho, p.alpha) / p.rho;
}

double moment(const MWrightParams& p, double kappa) {
    p.validate();
    if (!(kappa > -1.0)) {
        throw DomainError("moment: kappa must exceed -1");
    }
    if (p.mu != 0.0) {
        throw DomainError("moment: defined for the centred family (mu == 0)");
    }
    if (p.variant == Variant::Symmetric) {
        if (kappa != std::floor(kappa)) {
            throw DomainError("moment: symmetric variant needs integer kappa");
        }
        if (std::fmod(kappa, 2.0) != 0.0) {
            return 0.0;
        }
    }
    const double log_m = kappa * std::log(p.rho) + std::lgamma(1.0 + kappa) - std::lgamma(1.0 + p.alpha * kappa);
    return std::exp(log_m);
}

MomentSummary moment_summary(const MWrightParams& p) {
    p.validate();
    const double a = p.alpha;
    const double second = 1.0 / (a * std::tgamma(2.0 * a));
    MomentSummary out;
    if (p.variant == Variant::OneSided) {
        const double m1 = 1.0 / (a * std::tgamma(a));
        const double var1 = second - m1 * m1;
        out.mean = p.mu + p.rho * m1;
        out.variance = p.rho * p.rho * var1;
        // cv is a property of the unshifted law
        out.cv = std::sqrt(var1) / m1;
    } else {
        out.mean = p.mu;
        out.variance = p.rho * p.rho * second;
        out.cv = 0.0;
    }
    return out;
}

LogDomainMoments log_domain_moments(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("log_domain_moments: alpha must lie in (0, 1]");
    }
    if (!(rho > 0.0)) {
        throw DomainError("log_domain_moments: rho must be positive");
    }
    const double a2 = alpha * alpha;
    LogDomainMoments m;
    m.mean = std::log(rho) + euler_gamma * (alpha - 1.0);
    m.variance = pi * pi * (1.0 - a2) / 6.0;
    m.mu3 = 2.0 * (a2 * alpha - 1.0) * zeta3;
    m.mu4 = std::pow(pi, 4) * (a2 * a2 - 10.0 * a2 + 9.0) / 60.0;
    return m;
}

}  // namespace mwright
