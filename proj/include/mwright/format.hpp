#pragma once

#include <string>

namespace mwright {

/// Shortest decimal text that round-trips to the same double; locale
/// independent.
std::string format_full(double v);

/// Six significant digits for human-readable output.
std::string format_short(double v);

/// Quote a CSV field per RFC 4180 when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace mwright
