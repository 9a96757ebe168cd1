#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace topoproj {

// Seedable generator with stable cross-platform streams. mt19937_64 output is
// fixed by the standard; the uniform/normal transforms below are our own, so a
// given seed reproduces byte-identical results everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    // Derives an independent stream seed from a master seed, for chains,
    // partitions and experiment methods.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller, second sample cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double a = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Unbiased integer in [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % bound;
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace topoproj
