// Monte Carlo estimation of gate-fidelity moments over Haar-random pure
// states; the independent arbiter for every analytic formula in moments.hpp.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fidmom/channels.hpp"
#include "fidmom/moments.hpp"

namespace fidmom {

struct SampleConfig {
    std::int64_t n_samples = 100000;
    std::uint64_t seed = 0;
    int shards = 1;
};

struct MomentEstimate {
    int order = 0;
    double estimate = 0.0;
    double std_error = 0.0;  // sample std of F^m over sqrt(N)
};

struct EmpiricalMoments {
    std::vector<MomentEstimate> moments;  // orders 1..m_max
    double variance_estimate = 0.0;
    double variance_std_error = 0.0;  // delta method from moments up to order 4
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    int shards = 1;
};

// Fubini-Study sample: d independent standard complex Gaussians, normalized
Vector haar_state(Index d, std::mt19937_64& rng);

// Sample means of F^m for m = 1..m_max with standard errors, plus the sample
// variance of F. Deterministic for fixed (seed, shards) within one build;
// shards accumulate independently and merge in index order.
EmpiricalMoments estimate_moments(const KrausChannel& lambda, int m_max,
                                  const SampleConfig& cfg);

struct CompareRow {
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool pass = false;
};

// Per-moment z = (analytic - empirical)/stderr, gated at |z| < z_gate;
// zero-stderr rows compare at absolute tolerance 1e-9 instead
std::vector<CompareRow> compare(const MomentReport& analytic,
                                const EmpiricalMoments& empirical,
                                double z_gate = 5.0);

}  // namespace fidmom
