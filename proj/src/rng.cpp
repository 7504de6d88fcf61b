#include "fidmom/rng.hpp"

#include <cmath>
#include <numbers>

namespace fidmom {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::complex<double> complex_gaussian(std::mt19937_64& rng) {
    double u = uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    const double v = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u));
    const double phi = 2.0 * std::numbers::pi * v;
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace fidmom
