#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "mwright/distribution.hpp"

namespace mwright {

/// Identifies a reproducible random stream.
///
/// The bit source is std::mt19937_64 seeded through std::seed_seq with the
/// four 32-bit halves of (seed, stream_id). Both algorithms are fixed by the
/// C++ standard, and all conversions to real variates below are done by hand,
/// so draws are identical across conforming platforms.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Child stream for nested work (bootstrap resamples, GOF simulations).
    RngStream substream(std::uint64_t index) const;
};

class Engine {
public:
    explicit Engine(const RngStream& stream);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard exponential.
    double exponential();
    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n);
    /// +1 or -1 with equal probability.
    double sign();
    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// One draw of log S for the positive alpha-stable law with Laplace
/// transform exp(-beta^alpha), by Kanter's representation.
double draw_log_positive_stable(double alpha, Engine& eng);

/// One draw of S^(-alpha), i.e. M_{alpha,1,0}.
double draw_standard_mwright(double alpha, Engine& eng);

std::vector<double> sample_positive_stable(double alpha, const RngStream& rng, std::size_t n);

/// One-sided: mu + rho S^(-alpha). Symmetric: mu + rho U S^(-alpha) with an
/// independent Rademacher sign U.
std::vector<double> sample_mwright(const MWrightParams& p, const RngStream& rng, std::size_t n);

/// Same as sample_mwright but drawing from an existing engine.
void fill_mwright(const MWrightParams& p, Engine& eng, std::vector<double>& out);

}  // namespace mwright
