#pragma once

#include <cstdint>
#include <iosfwd>

#include "json.hpp"

#include "mwright/estimate.hpp"

namespace mwright {

/// Stable fit schema:
/// {"params": {"alpha", "rho", "mu", "variant"},
///  "ci": {"alpha": [lo, hi], "rho": [lo, hi], "mu": [lo, hi] | null},
///  "corr_alpha_rho", "location_estimator", "diagnostics": [...], "seed"}
/// plus "n", "level" and "ci_method".
nlohmann::json fit_to_json(const FitResult& r, std::uint64_t seed);

/// Inverse of fit_to_json for the fields the schema carries. Throws
/// InputError on a malformed document.
FitResult fit_from_json(const nlohmann::json& j, std::uint64_t* seed = nullptr);

/// Flat CSV: parameter,estimate,lower,upper,method.
void write_fit_csv(const FitResult& r, std::ostream& out);

/// Aligned plain-text summary with six significant digits.
void write_fit_text(const FitResult& r, std::ostream& out);

}  // namespace mwright
