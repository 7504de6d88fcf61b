// Acceptance suite: nine numbered end-to-end checks covering the exact
// fixtures, the closed-form qubit targets, Monte Carlo agreement, cross-path
// consistency, the exceptional-term identities, the coefficient bounds, the
// O(1/d) scaling sweep, unitary invariance and the conversion round trips.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fidmom/mc.hpp"
#include "fidmom/moments.hpp"
#include "fidmom/rng.hpp"

using namespace fidmom;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

KrausChannel pauli_x_channel() {
    Matrix X(2, 2);
    X << 0, 1, 1, 0;
    return unitary_channel(X);
}

void criterion_1_exact_fixtures() {
    double worst = 0.0;
    for (Index d : {2, 3, 4, 8}) {
        const KrausChannel id = unitary_channel(identity(d));
        worst = std::max(worst, std::abs(average_fidelity(id) - 1.0));
        worst = std::max(worst, std::abs(variance(id)));
    }
    for (double p : {0.1, 0.5, 0.9}) {
        const KrausChannel dep = depolarizing(2, p);
        worst = std::max(worst, std::abs(average_fidelity(dep) - (1.0 - p / 2.0)));
        worst = std::max(worst, std::abs(variance(dep)));
    }
    report(1, "identity and depolarizing fixtures exact", worst <= 1e-12,
           "worst residual " + fmt(worst) + " vs 1e-12");
}

void criterion_2_qubit_closed_forms() {
    double worst = 0.0;
    for (double p : {0.25, 0.5, 1.0}) {
        const KrausChannel deph = dephasing(p);
        worst = std::max(worst, std::abs(average_fidelity(deph) - (1.0 - 2.0 * p / 3.0)));
        worst = std::max(worst, std::abs(variance(deph) - 4.0 * p * p / 45.0));
    }
    const KrausChannel x = pauli_x_channel();
    worst = std::max(worst, std::abs(average_fidelity(x) - 1.0 / 3.0));
    worst = std::max(worst, std::abs(variance(x) - 4.0 / 45.0));
    report(2, "dephasing and Pauli-X sphere-integral targets", worst <= 1e-10,
           "worst residual " + fmt(worst) + " vs 1e-10");
}

void criterion_3_oracle_agreement() {
    double worst_z = 0.0;
    bool all_pass = true;
    int checked = 0;
    std::uint64_t seed = 20240901;
    for (Index d : {2, 3, 4}) {
        for (int trial = 0; trial < 25; ++trial) {
            const int rank = 1 + trial % 4;
            seed = splitmix64(seed);
            const KrausChannel lam = random_cptp(d, rank, seed);
            const MomentReport rep = analyze(lam, 2);
            const EmpiricalMoments emp = estimate_moments(lam, 2, {100000, seed, 1});
            for (const CompareRow& row : compare(rep, emp)) {
                if (std::isfinite(row.z)) worst_z = std::max(worst_z, std::abs(row.z));
                all_pass = all_pass && row.pass;
                ++checked;
            }
        }
    }
    report(3, "Monte Carlo z-scores for 75 random channels", all_pass && worst_z < 5.0,
           std::to_string(checked) + " comparisons, worst |z| " + fmt(worst_z) + " vs 5");
}

void criterion_4_cross_path_consistency() {
    double worst_qubit = 0.0;
    std::uint64_t seed = 777;
    for (int trial = 0; trial < 200; ++trial) {
        seed = splitmix64(seed);
        const KrausChannel lam = random_cptp(2, 1 + trial % 4, seed);
        worst_qubit =
            std::max(worst_qubit, std::abs(variance_detailed(lam).raw - variance_qubit(lam)));
    }
    double worst_moment = 0.0;
    for (Index d : {2, 3}) {
        for (int trial = 0; trial < 50; ++trial) {
            seed = splitmix64(seed);
            const KrausChannel lam = random_cptp(d, 1 + trial % 4, seed);
            worst_moment =
                std::max(worst_moment, std::abs(moment(lam, 1) - average_fidelity(lam)));
            worst_moment = std::max(worst_moment, std::abs(moment(lam, 2) - second_moment(lam)));
        }
    }
    report(4, "subtraction vs qubit closed form; permutation vs invariant moments",
           worst_qubit <= 1e-8 && worst_moment <= 1e-10,
           "qubit delta " + fmt(worst_qubit) + " vs 1e-8, moment delta " + fmt(worst_moment) +
               " vs 1e-10");
}

void criterion_5_exceptional_terms() {
    double worst_swap = 0.0;
    double worst_reduced = 0.0;
    std::uint64_t seed = 4242;
    for (Index d : {2, 3}) {
        for (int trial = 0; trial < 25; ++trial) {
            seed = splitmix64(seed);
            const KrausChannel lam = random_cptp(d, 1 + trial % 3, seed);
            worst_swap = std::max(
                worst_swap, std::abs(swap_term_invariant(lam) - swap_term_basis_sum(lam)));
            const Matrix reduced = partial_trace(jamiolkowski_state(lam), 2);
            const Matrix lam_id = apply_channel(lam, identity(d));
            worst_reduced = std::max(
                worst_reduced, std::abs(double(d * d) * (reduced * reduced).trace().real() -
                                        (lam_id * lam_id).trace().real()));
        }
    }
    report(5, "SWAP/partial-transpose and reduced-state identities",
           worst_swap <= 1e-9 && worst_reduced <= 1e-9,
           "swap delta " + fmt(worst_swap) + ", reduced delta " + fmt(worst_reduced) +
               " vs 1e-9");
}

void criterion_6_coefficient_bounds() {
    int violations = 0;
    int checked = 0;
    std::uint64_t seed = 99;
    for (Index d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; ++trial) {
            seed = splitmix64(seed);
            const int rank = 1 + trial % int(d * d);
            const BoundReport rep = bound_report(random_cptp(d, rank, seed));
            for (const BoundCheck& c : rep.checks) {
                if (!c.holds) ++violations;
                ++checked;
            }
        }
    }
    report(6, "coefficient bounds on 300 random channels", violations == 0,
           std::to_string(checked) + " bounds checked, " + std::to_string(violations) +
               " violations");
}

void criterion_7_scaling() {
    const SweepResult res = scaling_sweep({2, 4, 8, 16, 32}, 2, 20, 20240902);
    double base = 0.0;
    double worst = 0.0;
    for (const SweepRow& row : res.rows) {
        const double scaled = double(row.d) * row.max_var;
        if (row.d == 2) base = scaled;
        worst = std::max(worst, scaled);
    }
    report(7, "d * Var(F) stays bounded through d = 32", res.trend_ok,
           "max d*Var " + fmt(worst) + " vs gate " + fmt(2.0 * base));
}

void criterion_8_unitary_invariance() {
    double worst = 0.0;
    std::uint64_t seed = 31337;
    for (Index d : {2, 3}) {
        for (int trial = 0; trial < 25; ++trial) {
            seed = splitmix64(seed);
            const KrausChannel lam = random_cptp(d, 1 + trial % 3, seed);
            const Matrix V = haar_unitary(d, splitmix64(seed + 1));
            KrausChannel rotated{d, {}};
            const Matrix Vd = V.adjoint();
            for (const Matrix& K : lam.kraus) rotated.kraus.push_back(Vd * K * V);

            worst = std::max(worst, std::abs(average_fidelity(rotated) - average_fidelity(lam)));
            worst = std::max(worst, std::abs(second_moment(rotated) - second_moment(lam)));
            worst = std::max(worst, std::abs(variance(rotated) - variance(lam)));
            worst = std::max(worst, std::abs(moment(rotated, 2) - moment(lam, 2)));
        }
    }
    report(8, "moments invariant under unitary conjugation", worst <= 1e-9,
           "worst delta " + fmt(worst) + " vs 1e-9");
}

void criterion_9_conversion_round_trips() {
    double worst_chi = 0.0;
    double worst_entries = 0.0;
    std::uint64_t seed = 271828;
    for (Index d : {2, 3, 4}) {
        for (int trial = 0; trial < 17; ++trial) {
            seed = splitmix64(seed);
            const int rank = 1 + trial % int(d * d);
            const KrausChannel lam = random_cptp(d, rank, seed);
            const ChiMatrix chi = kraus_to_chi(lam);
            const ChiMatrix again = kraus_to_chi(chi_to_kraus(chi));
            worst_chi = std::max(worst_chi, (chi.matrix - again.matrix).norm());

            // Jamiolkowski entries against the definition (E (x) Id)|Psi><Psi|,
            // whose standard-basis entries are the matrix-unit-basis chi
            const Matrix proj = chi0(d).matrix;
            Matrix by_def = Matrix::Zero(d * d, d * d);
            for (const Matrix& K : lam.kraus) {
                const Matrix big = tensor_product(K, identity(d));
                by_def += big * proj * big.adjoint();
            }
            worst_entries = std::max(
                worst_entries,
                (by_def - jamiolkowski_state(lam).matrix).cwiseAbs().maxCoeff());
        }
    }
    report(9, "kraus/chi round trips and Jamiolkowski entry identity",
           worst_chi <= 1e-9 && worst_entries <= 1e-10,
           "chi delta " + fmt(worst_chi) + " vs 1e-9, entry delta " + fmt(worst_entries) +
               " vs 1e-10");
}

}  // namespace

int main() {
    criterion_1_exact_fixtures();
    criterion_2_qubit_closed_forms();
    criterion_3_oracle_agreement();
    criterion_4_cross_path_consistency();
    criterion_5_exceptional_terms();
    criterion_6_coefficient_bounds();
    criterion_7_scaling();
    criterion_8_unitary_invariance();
    criterion_9_conversion_round_trips();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
