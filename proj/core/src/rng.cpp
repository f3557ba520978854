#include "smallmiss/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace smallmiss {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) noexcept {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * c[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> RngStream::block(std::uint64_t counter) const noexcept {
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        philox_round(c, k0, k1);
    }
    return c;
}

std::uint64_t RngStream::next_u64() noexcept {
    if (has_pending_) {
        has_pending_ = false;
        return pending_;
    }
    const auto out = block(counter_++);
    pending_ = (std::uint64_t{out[3]} << 32) | out[2];
    has_pending_ = true;
    return (std::uint64_t{out[1]} << 32) | out[0];
}

double RngStream::next_uniform_open() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double sample_normal(RngStream& rng, double mean, double sd) {
    if (!(sd >= 0.0)) {
        throw std::domain_error("sample_normal: sd must be non-negative");
    }
    const double u1 = rng.next_uniform_open();
    const double u2 = rng.next_uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * M_PI * u2);
    return mean + sd * z;
}

namespace {

// Marsaglia-Tsang gamma sampler, scale 1.  Shapes below 1 are boosted
// through Gamma(a) = Gamma(a+1) * U^(1/a).
double sample_gamma(RngStream& rng, double shape) {
    if (shape < 1.0) {
        const double g = sample_gamma(rng, shape + 1.0);
        return g * std::pow(rng.next_uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_normal(rng, 0.0, 1.0);
        double v = 1.0 + c * x;
        if (v <= 0.0) {
            continue;
        }
        v = v * v * v;
        const double u = rng.next_uniform_open();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace

double sample_chi_square(RngStream& rng, double df) {
    if (!(df > 0.0)) {
        throw std::domain_error("sample_chi_square: df must be positive");
    }
    return 2.0 * sample_gamma(rng, df / 2.0);
}

}  // namespace smallmiss
