#include "mwright/sampling.hpp"

#include <cmath>

#include "mwright/errors.hpp"
#include "mwright/specfun.hpp"

namespace mwright {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(const RngStream& s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream_id), static_cast<std::uint32_t>(s.stream_id >> 32)};
    return std::mt19937_64(seq);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("sampler: alpha must lie in (0, 1)");
    }
}

// log of Kanter's A(v) with v = phi/pi; returns false when sin(pi v) underflows.
bool log_kanter(double alpha, double v, double& out) {
    const double s1 = std::sin(constants::pi * v);
    if (!(s1 > 0.0)) {
        return false;
    }
    const double c = 1.0 - alpha;
    out = std::log(std::sin(c * constants::pi * v)) + (alpha / c) * std::log(std::sin(alpha * constants::pi * v)) -
          std::log(s1) / c;
    return std::isfinite(out);
}

void check_count(std::size_t n) {
    if (n == 0) {
        throw DomainError("sample size must be >= 1");
    }
}

}  // namespace

RngStream RngStream::substream(std::uint64_t index) const {
    // the child keeps the parent's stream id in its seed so sibling
    // replicates never share children
    return RngStream{splitmix64(seed ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)), index};
}

Engine::Engine(const RngStream& stream) : gen_(make_engine(stream)) {}

double Engine::uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double Engine::exponential() { return -std::log(uniform()); }

std::size_t Engine::index(std::size_t n) {
    if (n == 0) {
        throw DomainError("Engine::index: empty range");
    }
    // Lemire's multiply-shift; the bias for n << 2^64 is negligible
    const unsigned __int128 m = static_cast<unsigned __int128>(gen_()) * n;
    return static_cast<std::size_t>(m >> 64);
}

double Engine::sign() { return (gen_() >> 63) != 0 ? 1.0 : -1.0; }

double draw_log_positive_stable(double alpha, Engine& eng) {
    // S = (A(V) / W)^((1 - alpha)/alpha)
    double log_a = 0.0;
    double v = eng.uniform();
    while (!log_kanter(alpha, v, log_a)) {
        v = eng.uniform();
    }
    const double w = eng.exponential();
    return (1.0 - alpha) / alpha * (log_a - std::log(w));
}

double draw_standard_mwright(double alpha, Engine& eng) {
    return std::exp(-alpha * draw_log_positive_stable(alpha, eng));
}

std::vector<double> sample_positive_stable(double alpha, const RngStream& rng, std::size_t n) {
    check_alpha(alpha);
    check_count(n);
    Engine eng(rng);
    std::vector<double> out(n);
    for (auto& s : out) {
        s = std::exp(draw_log_positive_stable(alpha, eng));
    }
    return out;
}

void fill_mwright(const MWrightParams& p, Engine& eng, std::vector<double>& out) {
    p.validate();
    if (p.variant == Variant::OneSided) {
        for (auto& x : out) {
            x = p.mu + p.rho * draw_standard_mwright(p.alpha, eng);
        }
    } else {
        for (auto& x : out) {
            const double mag = draw_standard_mwright(p.alpha, eng);
            x = p.mu + p.rho * eng.sign() * mag;
        }
    }
}

std::vector<double> sample_mwright(const MWrightParams& p, const RngStream& rng, std::size_t n) {
    check_count(n);
    Engine eng(rng);
    std::vector<double> out(n);
    fill_mwright(p, eng, out);
    return out;
}

}  // namespace mwright
