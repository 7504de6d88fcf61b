// Exact Fubini-Study moments of the gate fidelity: average fidelity, second
// moment and variance from chi-matrix invariants, the single-qubit closed
// form, m-th moments via symmetric-group sums, coefficient bound checks and
// the large-d scaling sweep.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fidmom/channels.hpp"

namespace fidmom {

// Raised when a combinatorial sum would exceed its term budget. Signals a
// blowup guard, not a numerical failure.
class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultMomentBudget = 5'000'000;
inline constexpr int kMaxPermutationDegree = 10;

struct Permutation {
    std::vector<int> map;  // 0-based images: map[i] = sigma(i)

    int degree() const { return static_cast<int>(map.size()); }
    // Disjoint cycles, each starting from its smallest element
    std::vector<std::vector<int>> cycles() const;
};

// Lazy lexicographic enumeration of S_k; guards k <= kMaxPermutationDegree
class PermutationRange {
  public:
    explicit PermutationRange(int k);

    struct sentinel {};

    class iterator {
      public:
        explicit iterator(int k);
        const Permutation& operator*() const { return perm_; }
        iterator& operator++();
        bool operator!=(sentinel) const { return !done_; }

      private:
        Permutation perm_;
        bool done_ = false;
    };

    iterator begin() const { return iterator(k_); }
    sentinel end() const { return {}; }
    std::int64_t size() const;  // k!

  private:
    int k_;
};

PermutationRange permutations(int k);

// binom(k + d - 1, d - 1), the dimension of the symmetric subspace of k
// copies of C^d; exact integer arithmetic, throws std::overflow_error
std::int64_t sym_dim(int k, Index d);

// Product over the cycles (a_1 ... a_r) of sigma of tr(ops[a_1] ... ops[a_r]).
// Equals tr[(ops_0 (x) ... (x) ops_{k-1}) P_sigma] for the permutation
// operator under which slot t receives the state formerly in slot sigma(t).
Complex trace_product(std::span<const Matrix> ops, const Permutation& sigma);

// tr(|psi><psi| Lambda(|psi><psi|)); psi must be normalized to 1e-8
double gate_fidelity(const KrausChannel& lambda, const Vector& psi);

// (d tr(chi chi0) + 1)/(d + 1), evaluated from Kraus traces alone
double average_fidelity(const KrausChannel& lambda);

// Basis-independent evaluation of the 24-term S_4 expansion
double second_moment(const KrausChannel& lambda);

// Direct chi-basis summation over all 24 permutations (diagnostic
// cross-check; O(d^8), intended for small d)
double second_moment_direct(const KrausChannel& lambda);

// Exceptional second-moment term sum_{lm} chi_{lm} tr(P_l Lambda(P_m)),
// via the SWAP/partial-transpose identity and by direct basis summation
double swap_term_invariant(const KrausChannel& lambda);
double swap_term_basis_sum(const KrausChannel& lambda);

struct VarianceResult {
    double value = 0.0;     // clamped; equal to raw unless a tiny negative
    double raw = 0.0;       // second moment minus squared average
    double rational = 0.0;  // a4..f4 rational form over (d+1)^3 (d+2)(d+3)
    std::optional<double> qubit_closed_form;  // d = 2 only
    std::vector<std::string> flags;
};

VarianceResult variance_detailed(const KrausChannel& lambda);
double variance(const KrausChannel& lambda);

// Single-qubit closed form with constants -11/180, 4/45, -38/45, 4/15, 1/10,
// 1/5 and 1/30; throws unless d = 2
double variance_qubit(const KrausChannel& lambda);

// m-th moment of the gate fidelity via the S_{2m} Kraus sum. The term count
// (2m)! * rank^m must stay within `budget` or BudgetExceeded is thrown.
double moment(const KrausChannel& lambda, int m,
              std::int64_t budget = kDefaultMomentBudget);

// E[(F - E[F])^m] by binomial expansion in raw moments
double central_moment(const KrausChannel& lambda, int m,
                      std::int64_t budget = kDefaultMomentBudget);

struct MomentReport {
    double avg = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;  // clamped
    double variance_raw = 0.0;
    double variance_rational = 0.0;
    std::optional<double> variance_qubit;
    std::string variance_method;  // "general" | "qubit-closed-form" | "cross-checked"
    std::vector<std::pair<int, double>> higher_moments;  // orders 3..m_max
    std::vector<std::string> flags;
};

MomentReport analyze(const KrausChannel& lambda, int m_max = 2,
                     std::int64_t budget = kDefaultMomentBudget);

struct BoundCheck {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double slack = 0.0;  // distance to the nearest violated edge
    bool holds = false;
};

// Values of the Var(F) numerator coefficients r, s, u, v, w together with
// the dimension-free bounds each ingredient must satisfy
struct BoundReport {
    double r = 0.0, s = 0.0, u = 0.0, v = 0.0, w = 0.0;
    std::vector<BoundCheck> checks;
    bool all_hold = false;
};

BoundReport bound_report(const KrausChannel& lambda);

struct SweepRow {
    Index d = 0;
    double mean_var = 0.0;
    double max_var = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // max over the sweep of d * max_var is at most twice its value at the
    // smallest dimension
    bool trend_ok = false;
};

// Draw `trials` random rank-`rank` channels per dimension and tabulate the
// fidelity variance
SweepResult scaling_sweep(const std::vector<Index>& dims, int rank, int trials,
                          std::uint64_t seed);

}  // namespace fidmom
