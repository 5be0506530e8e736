#pragma once

#include <string>
#include <string_view>

namespace mwright {

enum class Variant { OneSided, Symmetric };

std::string_view to_string(Variant v);
/// Accepts "one-sided"/"onesided" and "symmetric"; throws DomainError otherwise.
Variant parse_variant(std::string_view text);

/// Three-parameter M-Wright law: fractional parameter alpha, scale rho,
/// location mu.
///
/// One-sided density (1/rho) M_alpha((x - mu)/rho) on x > mu; symmetric
/// density (1/(2 rho)) M_alpha(|x - mu|/rho) on the real line.
struct MWrightParams {
    double alpha = 0.5;
    double rho = 1.0;
    double mu = 0.0;
    Variant variant = Variant::OneSided;

    /// Throws DomainError unless 0 < alpha < 1, rho > 0 and mu is finite.
    void validate() const;
};

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double cv = 0.0;  // one-sided only; 0 for the symmetric variant
};

/// Moments of X' = log|X - mu| for the centred family.
struct LogDomainMoments {
    double mean = 0.0;      // log(rho) + gamma (alpha - 1)
    double variance = 0.0;  // pi^2 (1 - alpha^2) / 6
    double mu3 = 0.0;       // 2 (alpha^3 - 1) zeta(3)
    double mu4 = 0.0;       // pi^4 (alpha^4 - 10 alpha^2 + 9) / 60
};

/// Density at x. The one-sided density is 0 for x < mu and takes its right
/// limit 1/(rho Gamma(1 - alpha)) at x == mu.
double pdf(const MWrightParams& p, double x);

/// E X^kappa for the centred (mu == 0) family.
///
/// One-sided: rho^kappa Gamma(1 + kappa) / Gamma(1 + alpha kappa), kappa > -1.
/// Symmetric: the same for even integer kappa, 0 for odd; non-integer kappa is
/// a DomainError.
double moment(const MWrightParams& p, double kappa);

MomentSummary moment_summary(const MWrightParams& p);

/// Log-domain moments. Also accepts the boundary alpha == 1, where the
/// variance and higher central moments vanish.
LogDomainMoments log_domain_moments(double alpha, double rho);

}  // namespace mwright
