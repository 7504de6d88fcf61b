#include "fidmom/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "fidmom/bases.hpp"
#include "fidmom/rng.hpp"

namespace fidmom {

namespace {

constexpr double kImagTolerance = 1e-9;

// X * S and S * X for the swap operator, as index permutations
Matrix right_swap(const Matrix& X, Index d) {
    Matrix out(X.rows(), X.cols());
    for (Index l = 0; l < d; ++l)
        for (Index m = 0; m < d; ++m) out.col(l * d + m) = X.col(m * d + l);
    return out;
}

Matrix left_swap(const Matrix& X, Index d) {
    Matrix out(X.rows(), X.cols());
    for (Index l = 0; l < d; ++l)
        for (Index m = 0; m < d; ++m) out.row(l * d + m) = X.row(m * d + l);
    return out;
}

// tr(A B) without forming the product
Complex trace_of_product(const Matrix& A, const Matrix& B) {
    return A.transpose().cwiseProduct(B).sum();
}

// d^4 tr[rho chi0^{T1} (chi0^{T1} rho)^{T1}] with chi0^{T1} = S/d
Complex swap_term_from_jamiolkowski(const BipartiteOperator& rho_j) {
    const Index d = rho_j.local_dim;
    const double dd = static_cast<double>(d);
    const Matrix M1 = right_swap(rho_j.matrix, d) / dd;
    const Matrix M2 =
        partial_transpose({d, Matrix(left_swap(rho_j.matrix, d) / dd)}, 1).matrix;
    return dd * dd * dd * dd * trace_of_product(M1, M2);
}

// Every chi-derived scalar entering the closed forms. Transposes act on the
// Hermitian coefficient matrix (where chi^T = conj(chi)); the exceptional
// terms come from the Jamiolkowski operator under standard partial
// operations. All of them are real up to rounding; the largest imaginary
// part discarded is tracked for diagnostics.
struct ChiScalars {
    double d = 0.0;
    double q = 0.0;     // tr(chi chi0) = chi_00
    double e2 = 0.0;    // (chi^2)_00
    double ect = 0.0;   // (chi chi^T)_00  = sum_l chi_{0l}^2
    double etc = 0.0;   // (chi^T chi)_00  = sum_l chi_{l0}^2
    double t2 = 0.0;    // tr(chi^2)
    double tct = 0.0;   // tr(chi chi^T)   = sum_{lm} chi_{lm}^2
    double exc1 = 0.0;  // tr[(Lambda(Id))^2]                       = d^2 tr[(tr_2 chi)^2]
    double exc2 = 0.0;  // sum_l (chi_{l0}+chi_{0l}) tr[P_l Lambda(Id)]
    double exc3 = 0.0;  // sum_{lm} chi_{lm} tr[P_l Lambda(P_m)]    (4-cycle term)
    double imag_residual = 0.0;
};

ChiScalars chi_scalars(const KrausChannel& lambda) {
    const Index d = lambda.d;
    const Index n = d * d;
    const OperatorBasis& basis = hermitian_basis(d);
    const Matrix chi = kraus_to_chi(lambda, basis).matrix;

    ChiScalars s;
    s.d = static_cast<double>(d);
    auto take_real = [&s](Complex z) {
        s.imag_residual = std::max(s.imag_residual, std::abs(z.imag()));
        return z.real();
    };

    s.q = take_real(chi(0, 0));
    s.e2 = take_real(chi.row(0) * chi.col(0));
    s.ect = take_real(chi.row(0).array().square().sum());
    s.etc = take_real(chi.col(0).array().square().sum());
    s.t2 = chi.squaredNorm();
    s.tct = take_real(chi.array().square().sum());

    const Matrix id = Matrix::Identity(d, d);
    const Matrix lam_id = apply_channel(lambda, id);
    s.exc1 = lam_id.squaredNorm();
    for (Index l = 0; l < n; ++l) {
        const double w = 2.0 * chi(l, 0).real();
        s.exc2 += w * take_real(hs_inner(basis.elements[static_cast<std::size_t>(l)], lam_id));
    }
    s.exc3 = take_real(swap_term_from_jamiolkowski(jamiolkowski_state(lambda)));
    return s;
}

struct SecondMomentPoly {
    double a3 = 0.0, b3 = 0.0, c3 = 0.0, d3 = 0.0;
};

SecondMomentPoly second_moment_poly(const ChiScalars& s) {
    const double d2 = s.d * s.d;
    SecondMomentPoly p;
    p.a3 = s.q * s.q + 2.0 * s.exc3 / (d2 * d2);
    p.b3 = 2.0 * s.e2 + s.ect + s.etc + 2.0 * s.q + 2.0 * s.exc2 / d2;
    p.c3 = 4.0 * s.q + s.tct + s.t2 + 1.0 + s.exc1 / d2;
    p.d3 = 3.0;
    return p;
}

double second_moment_from(const ChiScalars& s) {
    const auto p = second_moment_poly(s);
    const double d = s.d;
    return (((p.a3 * d + p.b3) * d + p.c3) * d + p.d3) /
           ((d + 1.0) * (d + 2.0) * (d + 3.0));
}

double average_fidelity_from(const ChiScalars& s) {
    return (s.q * s.d + 1.0) / (s.d + 1.0);
}

double variance_qubit_from(const ChiScalars& s) {
    const double tr2chi_sq = s.exc1 / 4.0;  // tr[(tr_2 chi)^2] at d = 2
    return -11.0 / 180.0 + (4.0 / 45.0) * s.q - (38.0 / 45.0) * s.q * s.q +
           (4.0 / 15.0) * s.e2 + (1.0 / 10.0) * s.t2 +
           (1.0 / 5.0) * (s.ect + s.etc) + (1.0 / 30.0) * (s.tct + tr2chi_sq);
}

VarianceResult variance_from(const ChiScalars& s) {
    const double d = s.d;
    const double avg = average_fidelity_from(s);
    const double f2 = second_moment_from(s);

    VarianceResult out;
    out.raw = f2 - avg * avg;

    const auto p = second_moment_poly(s);
    const double a = s.q * s.q;
    const double b = 2.0 * s.q;
    const double a4 = p.a3 - a;
    const double b4 = p.b3 + 2.0 * p.a3 - b - 6.0 * a;
    const double c4 = p.a3 + 2.0 * p.b3 + p.c3 - 11.0 * a - 6.0 * b - 1.0;
    const double d4 = p.b3 + 2.0 * p.c3 + p.d3 - 6.0 * a - 11.0 * b - 6.0;
    const double e4 = p.c3 + 2.0 * p.d3 - 11.0 - 6.0 * b;
    const double f4 = p.d3 - 6.0;
    const double den = (d + 1.0) * (d + 1.0) * (d + 1.0) * (d + 2.0) * (d + 3.0);
    out.rational = (((((a4 * d + b4) * d + c4) * d + d4) * d + e4) * d + f4) / den;

    if (std::abs(out.raw - out.rational) > 1e-8)
        out.flags.push_back("variance-paths-disagree");
    if (s.imag_residual > kImagTolerance)
        out.flags.push_back("imaginary-residual-above-tolerance");

    if (out.raw < -1e-9) {
        out.flags.push_back("variance-negative-beyond-tolerance");
        out.value = out.raw;
    } else if (out.raw < 0.0) {
        out.flags.push_back("variance-clamped-to-zero");
        out.value = 0.0;
    } else {
        out.value = out.raw;
    }

    if (s.d == 2.0) {
        out.qubit_closed_form = variance_qubit_from(s);
        if (std::abs(*out.qubit_closed_form - out.raw) > 1e-8)
            out.flags.push_back("qubit-closed-form-disagrees");
    }
    return out;
}

Complex cycle_traces(const std::vector<std::vector<int>>& cycles,
                     std::span<const Matrix* const> slots) {
    Complex out = 1.0;
    for (const auto& cycle : cycles) {
        if (cycle.size() == 1) {
            out *= slots[static_cast<std::size_t>(cycle[0])]->trace();
            continue;
        }
        Matrix prod = *slots[static_cast<std::size_t>(cycle[0])];
        for (std::size_t t = 1; t < cycle.size(); ++t)
            prod *= *slots[static_cast<std::size_t>(cycle[t])];
        out *= prod.trace();
    }
    return out;
}

double binom_double(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i)
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

}  // namespace

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(map.size(), false);
    for (int start = 0; start < degree(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cycle{start};
        seen[static_cast<std::size_t>(start)] = true;
        for (int j = map[static_cast<std::size_t>(start)]; j != start;
             j = map[static_cast<std::size_t>(j)]) {
            cycle.push_back(j);
            seen[static_cast<std::size_t>(j)] = true;
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

PermutationRange::PermutationRange(int k) : k_(k) {
    if (k < 1 || k > kMaxPermutationDegree)
        throw std::invalid_argument("permutations: degree must lie in [1, 10]");
}

PermutationRange::iterator::iterator(int k) {
    perm_.map.resize(static_cast<std::size_t>(k));
    std::iota(perm_.map.begin(), perm_.map.end(), 0);
}

PermutationRange::iterator& PermutationRange::iterator::operator++() {
    done_ = !std::next_permutation(perm_.map.begin(), perm_.map.end());
    return *this;
}

std::int64_t PermutationRange::size() const {
    std::int64_t out = 1;
    for (int i = 2; i <= k_; ++i) out *= i;
    return out;
}

PermutationRange permutations(int k) { return PermutationRange(k); }

std::int64_t sym_dim(int k, Index d) {
    if (k < 0 || d < 1)
        throw std::invalid_argument("sym_dim: k >= 0 and d >= 1 required");
    const std::int64_t n = k + static_cast<std::int64_t>(d) - 1;
    const std::int64_t r = std::min<std::int64_t>(d - 1, k);
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        const std::int64_t num = n - r + i;
        if (out > std::numeric_limits<std::int64_t>::max() / num)
            throw std::overflow_error("sym_dim: result exceeds the 64-bit range");
        out = out * num / i;  // exact: the prefix is binom(n - r + i, i)
    }
    return out;
}

Complex trace_product(std::span<const Matrix> ops, const Permutation& sigma) {
    if (static_cast<int>(ops.size()) != sigma.degree())
        throw std::invalid_argument("trace_product: arity mismatch");
    if (ops.empty()) return 1.0;
    const Index d = ops[0].rows();
    std::vector<const Matrix*> slots(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].rows() != d || ops[i].cols() != d)
            throw std::invalid_argument("trace_product: operators must share a square shape");
        slots[i] = &ops[i];
    }
    return cycle_traces(sigma.cycles(), slots);
}

double gate_fidelity(const KrausChannel& lambda, const Vector& psi) {
    if (psi.size() != lambda.d)
        throw std::invalid_argument("gate_fidelity: state dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("gate_fidelity: state is not normalized");
    double f = 0.0;
    for (const auto& K : lambda.kraus) f += std::norm(psi.dot(K * psi));
    return f;
}

double average_fidelity(const KrausChannel& lambda) {
    const double d = static_cast<double>(lambda.d);
    double s = 0.0;
    for (const auto& K : lambda.kraus) s += std::norm(K.trace());
    return (s / d + 1.0) / (d + 1.0);
}

double second_moment(const KrausChannel& lambda) {
    return second_moment_from(chi_scalars(lambda));
}

double second_moment_direct(const KrausChannel& lambda) {
    const Index d = lambda.d;
    const Index n = d * d;
    const OperatorBasis& basis = hermitian_basis(d);
    const Matrix chi = kraus_to_chi(lambda, basis).matrix;

    // Trace tables over basis elements: single, pair, triple; quadruples are
    // contracted from pair products on the fly.
    std::vector<Matrix> pair(static_cast<std::size_t>(n * n));
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m)
            pair[static_cast<std::size_t>(l * n + m)] =
                basis.elements[static_cast<std::size_t>(l)] *
                basis.elements[static_cast<std::size_t>(m)];
    std::vector<Complex> tr1(static_cast<std::size_t>(n));
    for (Index l = 0; l < n; ++l)
        tr1[static_cast<std::size_t>(l)] = basis.elements[static_cast<std::size_t>(l)].trace();
    std::vector<Complex> tr2(static_cast<std::size_t>(n * n));
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m)
            tr2[static_cast<std::size_t>(l * n + m)] =
                pair[static_cast<std::size_t>(l * n + m)].trace();
    std::vector<Complex> tr3(static_cast<std::size_t>(n * n * n));
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m)
            for (Index k = 0; k < n; ++k)
                tr3[static_cast<std::size_t>((l * n + m) * n + k)] = trace_of_product(
                    pair[static_cast<std::size_t>(l * n + m)],
                    basis.elements[static_cast<std::size_t>(k)]);

    std::vector<std::vector<std::vector<int>>> cycle_sets;
    for (const Permutation& sigma : permutations(4)) cycle_sets.push_back(sigma.cycles());

    auto cycle_value = [&](const std::vector<int>& cycle,
                           const std::array<Index, 4>& idx) -> Complex {
        switch (cycle.size()) {
            case 1:
                return tr1[static_cast<std::size_t>(idx[static_cast<std::size_t>(cycle[0])])];
            case 2:
                return tr2[static_cast<std::size_t>(
                    idx[static_cast<std::size_t>(cycle[0])] * n +
                    idx[static_cast<std::size_t>(cycle[1])])];
            case 3:
                return tr3[static_cast<std::size_t>(
                    (idx[static_cast<std::size_t>(cycle[0])] * n +
                     idx[static_cast<std::size_t>(cycle[1])]) *
                        n +
                    idx[static_cast<std::size_t>(cycle[2])])];
            default:
                return trace_of_product(
                    pair[static_cast<std::size_t>(
                        idx[static_cast<std::size_t>(cycle[0])] * n +
                        idx[static_cast<std::size_t>(cycle[1])])],
                    pair[static_cast<std::size_t>(
                        idx[static_cast<std::size_t>(cycle[2])] * n +
                        idx[static_cast<std::size_t>(cycle[3])])]);
        }
    };

    Complex acc = 0.0;
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m) {
            const Complex w1 = chi(l, m);
            if (w1 == 0.0) continue;
            for (Index nn = 0; nn < n; ++nn)
                for (Index r = 0; r < n; ++r) {
                    const Complex w = w1 * chi(nn, r);
                    if (w == 0.0) continue;
                    const std::array<Index, 4> idx{l, m, nn, r};
                    Complex perm_sum = 0.0;
                    for (const auto& cycles : cycle_sets) {
                        Complex term = 1.0;
                        for (const auto& cycle : cycles) term *= cycle_value(cycle, idx);
                        perm_sum += term;
                    }
                    acc += w * perm_sum;
                }
        }
    const double dd = static_cast<double>(d);
    return acc.real() / (dd * (dd + 1.0) * (dd + 2.0) * (dd + 3.0));
}

double swap_term_invariant(const KrausChannel& lambda) {
    return swap_term_from_jamiolkowski(jamiolkowski_state(lambda)).real();
}

double swap_term_basis_sum(const KrausChannel& lambda) {
    const Index d = lambda.d;
    const Index n = d * d;
    const OperatorBasis& basis = hermitian_basis(d);
    const Matrix chi = kraus_to_chi(lambda, basis).matrix;
    Complex acc = 0.0;
    for (Index m = 0; m < n; ++m) {
        const Matrix lpm = apply_channel(lambda, basis.elements[static_cast<std::size_t>(m)]);
        for (Index l = 0; l < n; ++l)
            acc += chi(l, m) * hs_inner(basis.elements[static_cast<std::size_t>(l)], lpm);
    }
    return acc.real();
}

VarianceResult variance_detailed(const KrausChannel& lambda) {
    return variance_from(chi_scalars(lambda));
}

double variance(const KrausChannel& lambda) { return variance_detailed(lambda).value; }

double variance_qubit(const KrausChannel& lambda) {
    if (lambda.d != 2)
        throw std::invalid_argument("variance_qubit: channel must act on a qubit");
    return variance_qubit_from(chi_scalars(lambda));
}

namespace {

double moment_impl(const KrausChannel& lambda, int m, std::int64_t budget,
                   double* imag_residual);

}  // namespace

double moment(const KrausChannel& lambda, int m, std::int64_t budget) {
    return moment_impl(lambda, m, budget, nullptr);
}

namespace {

double moment_impl(const KrausChannel& lambda, int m, std::int64_t budget,
                   double* imag_residual) {
    if (m < 1) throw std::invalid_argument("moment: order must be >= 1");
    const int k = 2 * m;
    const auto rank = static_cast<std::int64_t>(lambda.kraus.size());
    long double cost = 1.0L;
    for (int i = 2; i <= k; ++i) cost *= i;
    for (int i = 0; i < m; ++i) cost *= static_cast<long double>(rank);
    if (k > kMaxPermutationDegree || cost > static_cast<long double>(budget))
        throw BudgetExceeded("moment: (2m)! * rank^m exceeds the term budget");

    std::vector<Matrix> daggers;
    daggers.reserve(lambda.kraus.size());
    for (const auto& K : lambda.kraus) daggers.push_back(K.adjoint());

    std::vector<const Matrix*> slots(static_cast<std::size_t>(k));
    std::vector<int> tuple(static_cast<std::size_t>(m), 0);
    Complex acc = 0.0;
    for (const Permutation& sigma : permutations(k)) {
        const auto cycles = sigma.cycles();
        std::fill(tuple.begin(), tuple.end(), 0);
        while (true) {
            for (int t = 0; t < m; ++t) {
                const auto i = static_cast<std::size_t>(tuple[static_cast<std::size_t>(t)]);
                slots[static_cast<std::size_t>(2 * t)] = &lambda.kraus[i];
                slots[static_cast<std::size_t>(2 * t + 1)] = &daggers[i];
            }
            acc += cycle_traces(cycles, slots);
            int pos = 0;
            while (pos < m && ++tuple[static_cast<std::size_t>(pos)] ==
                                  static_cast<int>(rank)) {
                tuple[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == m) break;
        }
    }
    long double fact = 1.0L;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double denom =
        static_cast<double>(fact) * static_cast<double>(sym_dim(k, lambda.d));
    if (imag_residual != nullptr)
        *imag_residual = std::abs(acc.imag()) / denom;
    return acc.real() / denom;
}

}  // namespace

double central_moment(const KrausChannel& lambda, int m, std::int64_t budget) {
    if (m < 1) throw std::invalid_argument("central_moment: order must be >= 1");
    if (m == 1) return 0.0;
    const double mu = average_fidelity(lambda);
    double out = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double raw = (j == 0) ? 1.0 : moment(lambda, j, budget);
        out += binom_double(m, j) * raw * std::pow(-mu, m - j);
    }
    return out;
}

MomentReport analyze(const KrausChannel& lambda, int m_max, std::int64_t budget) {
    if (m_max < 1) throw std::invalid_argument("analyze: m_max must be >= 1");
    const ChiScalars s = chi_scalars(lambda);
    VarianceResult var = variance_from(s);

    MomentReport rep;
    rep.avg = average_fidelity_from(s);
    rep.second_moment = second_moment_from(s);
    rep.variance = var.value;
    rep.variance_raw = var.raw;
    rep.variance_rational = var.rational;
    rep.variance_qubit = var.qubit_closed_form;
    rep.variance_method = (lambda.d == 2) ? "cross-checked" : "general";
    rep.flags = std::move(var.flags);
    if (rep.avg < -1e-12 || rep.avg > 1.0 + 1e-12)
        rep.flags.push_back("average-out-of-range");
    for (int m = 3; m <= m_max; ++m) {
        double residual = 0.0;
        rep.higher_moments.emplace_back(m, moment_impl(lambda, m, budget, &residual));
        if (residual > kImagTolerance &&
            std::find(rep.flags.begin(), rep.flags.end(),
                      "imaginary-residual-above-tolerance") == rep.flags.end())
            rep.flags.push_back("imaginary-residual-above-tolerance");
    }
    return rep;
}

BoundReport bound_report(const KrausChannel& lambda) {
    const ChiScalars s = chi_scalars(lambda);
    const double d2 = s.d * s.d;

    BoundReport rep;
    rep.r = -4.0 * s.q * s.q + s.ect + s.etc + 2.0 * s.e2;
    rep.s = -6.0 * s.q * s.q + s.ect + s.etc + s.tct - 4.0 * s.q + s.t2 + 2.0 * s.e2;
    rep.u = -8.0 * s.q + s.tct + s.t2 + 2.0 * s.exc2 - 1.0;
    rep.v = 2.0 * s.exc3 + 2.0 * s.exc2 + s.exc1 - 3.0;
    rep.w = 2.0 * s.exc3 + s.exc1;

    auto add = [&rep](const char* name, double value, double lo, double hi) {
        BoundCheck c;
        c.name = name;
        c.value = value;
        c.lo = lo;
        c.hi = hi;
        c.slack = std::min(value - lo, hi - value);
        c.holds = c.slack >= -1e-12;  // fp fuzz only; the bounds are exact
        rep.checks.push_back(std::move(c));
    };
    add("chi_00", s.q, 0.0, 1.0);
    add("tr_chi_chiT", s.tct, -1.0, 1.0);
    add("tr_chi_sq", s.t2, 0.0, 1.0);
    add("lambda_id_sq", s.exc1, 0.0, d2);
    add("three_cycle_term", s.exc2, -2.0 * d2, 2.0 * d2);
    add("four_cycle_term", s.exc3, -d2, d2);
    rep.all_hold = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const BoundCheck& c) { return c.holds; });
    return rep;
}

SweepResult scaling_sweep(const std::vector<Index>& dims, int rank, int trials,
                          std::uint64_t seed) {
    if (dims.empty()) throw std::invalid_argument("scaling_sweep: dims must be nonempty");
    if (trials < 1) throw std::invalid_argument("scaling_sweep: trials must be >= 1");
    SweepResult out;
    out.rows.reserve(dims.size());
    for (const Index d : dims) {
        double sum = 0.0;
        double mx = 0.0;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t sub =
                splitmix64(seed ^ (static_cast<std::uint64_t>(d) << 20) ^
                           static_cast<std::uint64_t>(t));
            const double v = variance(random_cptp(d, rank, sub));
            sum += v;
            mx = std::max(mx, v);
        }
        out.rows.push_back({d, sum / trials, mx});
    }
    const auto smallest =
        std::min_element(out.rows.begin(), out.rows.end(),
                         [](const SweepRow& a, const SweepRow& b) { return a.d < b.d; });
    const double base = static_cast<double>(smallest->d) * smallest->max_var;
    out.trend_ok = std::all_of(out.rows.begin(), out.rows.end(), [base](const SweepRow& r) {
        return static_cast<double>(r.d) * r.max_var <= 2.0 * base + 1e-12;
    });
    return out;
}

}  // namespace fidmom
