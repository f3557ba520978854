#ifndef SMALLMISS_RNG_HPP
#define SMALLMISS_RNG_HPP

#include <array>
#include <cstdint>

namespace smallmiss {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is addressed by (master_seed, stream_index): the seed is the
/// Philox key and the stream index occupies the high counter words, so any
/// stream can be constructed directly without advancing through its
/// predecessors.  Equal (seed, index) pairs replay the same sequence
/// bit-for-bit on every platform and thread schedule; distinct indices give
/// statistically independent streams.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
        : seed_(master_seed), stream_(stream_index) {}

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    /// Next raw 64-bit word.
    std::uint64_t next_u64() noexcept;

    /// Uniform draw on (0, 1]; never returns 0, so log() is safe.
    double next_uniform_open() noexcept;

    /// Uniform draw on [0, 1).
    double next_uniform() noexcept;

private:
    std::array<std::uint32_t, 4> block(std::uint64_t counter) const noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t pending_ = 0;
    bool has_pending_ = false;
};

/// Draw from N(mean, sd^2) by Box-Muller; sd = 0 returns mean exactly.
double sample_normal(RngStream& rng, double mean, double sd);

/// Draw from the chi-square distribution with df > 0 degrees of freedom
/// (real-valued df allowed).  Throws std::domain_error for df <= 0.
double sample_chi_square(RngStream& rng, double df);

}  // namespace smallmiss

#endif
