#ifndef PCAKIT_RNG_HPP
#define PCAKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pcakit {

/// SplitMix64 generator with a Box-Muller normal transform.
///
/// State transition: state += 0x9E3779B97F4A7C15, then the output is
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// uniform() takes the top 53 bits: (z >> 11) * 2^-53, in [0, 1).
/// normal() draws u1, u2 and returns sqrt(-2 ln(1 - u1)) * cos(2 pi u2);
/// the matching sine value is cached and returned by the next call.
/// The sequence depends only on the seed, so datasets reproduce across
/// platforms and languages.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pcakit

#endif
