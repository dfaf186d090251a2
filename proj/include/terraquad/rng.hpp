#pragma once

#include <cstdint>
#include <random>

namespace terraquad {

/// SplitMix64 finalizer; derives independent stream seeds from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// std::mt19937_64 seeded through SplitMix64. Uniform doubles are built
/// from the top 53 bits so streams do not depend on the standard
/// library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int k) { return static_cast<int>(uniform() * k); }
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace terraquad
