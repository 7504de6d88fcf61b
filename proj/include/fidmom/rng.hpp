// Small deterministic RNG helpers shared by the samplers. Only the engine
// (mt19937_64) comes from the standard library; the transforms are spelled
// out so seeded streams do not vary with the standard library in use.

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace fidmom {

std::uint64_t splitmix64(std::uint64_t x);

// Uniform in [0, 1) with 53 random bits
double uniform01(std::mt19937_64& rng);

// Standard complex Gaussian: Re and Im each N(0, 1), via Box-Muller
std::complex<double> complex_gaussian(std::mt19937_64& rng);

}  // namespace fidmom
