#include "fidmom/mc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fidmom/rng.hpp"

namespace fidmom {

Vector haar_state(Index d, std::mt19937_64& rng) {
    if (d < 2) throw std::invalid_argument("haar_state: d must be >= 2");
    Vector v(d);
    double norm = 0.0;
    do {
        for (Index i = 0; i < d; ++i) v(i) = complex_gaussian(rng);
        norm = v.norm();
    } while (norm == 0.0);
    return v / norm;
}

EmpiricalMoments estimate_moments(const KrausChannel& lambda, int m_max,
                                  const SampleConfig& cfg) {
    if (m_max < 1) throw std::invalid_argument("estimate_moments: m_max must be >= 1");
    if (cfg.n_samples < 2)
        throw std::invalid_argument("estimate_moments: need at least 2 samples");
    if (cfg.shards < 1 || static_cast<std::int64_t>(cfg.shards) > cfg.n_samples)
        throw std::invalid_argument("estimate_moments: shards must lie in [1, n_samples]");

    const int p_max = std::max(2 * m_max, 4);
    std::vector<double> sums(static_cast<std::size_t>(p_max) + 1, 0.0);
    const std::int64_t base = cfg.n_samples / cfg.shards;
    const std::int64_t extra = cfg.n_samples % cfg.shards;
    for (int shard = 0; shard < cfg.shards; ++shard) {
        std::mt19937_64 rng(
            splitmix64(cfg.seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(shard) + 1)));
        const std::int64_t n_here = base + (shard < extra ? 1 : 0);
        std::vector<double> local(static_cast<std::size_t>(p_max) + 1, 0.0);
        for (std::int64_t i = 0; i < n_here; ++i) {
            const Vector psi = haar_state(lambda.d, rng);
            const double f = gate_fidelity(lambda, psi);
            double fp = 1.0;
            for (int p = 1; p <= p_max; ++p) {
                fp *= f;
                local[static_cast<std::size_t>(p)] += fp;
            }
        }
        // merge in shard order so the result is reduction-order independent
        for (int p = 1; p <= p_max; ++p)
            sums[static_cast<std::size_t>(p)] += local[static_cast<std::size_t>(p)];
    }

    const double N = static_cast<double>(cfg.n_samples);
    auto raw = [&](int p) { return sums[static_cast<std::size_t>(p)] / N; };

    // spreads below the cancellation-noise floor are exact zeros: a constant
    // fidelity must report a zero standard error, not rounding residue
    constexpr double kNoiseFloor = 1e-12;

    EmpiricalMoments out;
    out.n_samples = cfg.n_samples;
    out.seed = cfg.seed;
    out.shards = cfg.shards;
    for (int m = 1; m <= m_max; ++m) {
        const double est = raw(m);
        double spread = std::max(0.0, raw(2 * m) - est * est);
        if (spread < kNoiseFloor * std::max(1.0, est * est)) spread = 0.0;
        out.moments.push_back({m, est, std::sqrt(spread / N)});
    }
    const double m1 = raw(1), m2 = raw(2), m3 = raw(3), m4 = raw(4);
    double v = std::max(0.0, m2 - m1 * m1);
    const double mu4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    if (v < kNoiseFloor && mu4 < kNoiseFloor) {
        out.variance_estimate = 0.0;
        out.variance_std_error = 0.0;
    } else {
        out.variance_estimate = v;
        // delta method: Var(v-hat) ~ (mu4 - v^2)/N with mu4 the central 4th moment
        out.variance_std_error = std::sqrt(std::max(0.0, mu4 - v * v) / N);
    }
    return out;
}

std::vector<CompareRow> compare(const MomentReport& analytic,
                                const EmpiricalMoments& empirical, double z_gate) {
    std::vector<CompareRow> rows;
    auto push = [&rows, z_gate](std::string name, double a, double e, double se) {
        CompareRow row;
        row.name = std::move(name);
        row.analytic = a;
        row.empirical = e;
        row.std_error = se;
        const double diff = a - e;
        if (se > 0.0) {
            row.z = diff / se;
            row.pass = std::abs(row.z) < z_gate;
        } else {
            row.pass = std::abs(diff) <= 1e-9;
            row.z = row.pass ? 0.0
                             : std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
        rows.push_back(std::move(row));
    };

    for (const auto& m : empirical.moments) {
        if (m.order == 1) {
            push("F^1", analytic.avg, m.estimate, m.std_error);
        } else if (m.order == 2) {
            push("F^2", analytic.second_moment, m.estimate, m.std_error);
        } else {
            for (const auto& [order, value] : analytic.higher_moments)
                if (order == m.order) {
                    push("F^" + std::to_string(m.order), value, m.estimate, m.std_error);
                    break;
                }
        }
    }
    push("Var", analytic.variance, empirical.variance_estimate, empirical.variance_std_error);
    return rows;
}

}  // namespace fidmom
