#include "fidmom/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "fidmom/rng.hpp"

namespace fidmom {

namespace {

void check_channel(const KrausChannel& C) {
    if (C.d < 1 || C.kraus.empty())
        throw std::invalid_argument("channel: Kraus list must be nonempty");
    for (const auto& K : C.kraus)
        if (K.rows() != C.d || K.cols() != C.d)
            throw std::invalid_argument("channel: Kraus operator shape mismatch");
}

bool is_unitary(const Matrix& U, double tol) {
    if (U.rows() != U.cols() || U.rows() < 1) return false;
    return (U.adjoint() * U - Matrix::Identity(U.rows(), U.rows())).norm() <= tol;
}

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    Matrix G(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) G(i, j) = complex_gaussian(rng);
    return G;
}

}  // namespace

KrausChannel unitary_channel(const Matrix& U) {
    if (!is_unitary(U, 1e-9))
        throw std::invalid_argument("unitary_channel: input is not unitary");
    return {U.rows(), {U}};
}

KrausChannel deviation_channel(const KrausChannel& E, const Matrix& U) {
    check_channel(E);
    if (U.rows() != E.d || U.cols() != E.d)
        throw std::invalid_argument("deviation_channel: dimension mismatch");
    if (!is_unitary(U, 1e-9))
        throw std::invalid_argument("deviation_channel: ideal gate is not unitary");
    KrausChannel out{E.d, {}};
    out.kraus.reserve(E.kraus.size());
    const Matrix Ud = U.adjoint();
    for (const auto& K : E.kraus) out.kraus.push_back(Ud * K);
    return out;
}

Matrix apply_channel(const KrausChannel& C, const Matrix& rho) {
    check_channel(C);
    if (rho.rows() != C.d || rho.cols() != C.d)
        throw std::invalid_argument("apply: state shape mismatch");
    Matrix out = Matrix::Zero(C.d, C.d);
    for (const auto& K : C.kraus) out += K * rho * K.adjoint();
    return out;
}

ChiMatrix kraus_to_chi(const KrausChannel& C, const OperatorBasis& basis) {
    check_channel(C);
    if (basis.d != C.d)
        throw std::invalid_argument("kraus_to_chi: basis dimension mismatch");
    const Index n = C.d * C.d;
    Matrix chi = Matrix::Zero(n, n);
    Vector c(n);
    for (const auto& K : C.kraus) {
        for (Index l = 0; l < n; ++l)
            c(l) = hs_inner(basis.elements[static_cast<std::size_t>(l)], K) /
                   static_cast<double>(C.d);
        chi.noalias() += c * c.adjoint();
    }
    return {C.d, &basis, chi};
}

ChiMatrix kraus_to_chi(const KrausChannel& C) {
    return kraus_to_chi(C, hermitian_basis(C.d));
}

KrausChannel chi_to_kraus(const ChiMatrix& chi) {
    const Index n = chi.d * chi.d;
    if (chi.d < 1 || chi.matrix.rows() != n || chi.matrix.cols() != n)
        throw std::invalid_argument("chi_to_kraus: matrix side must equal d^2");
    const OperatorBasis& basis = chi.basis ? *chi.basis : hermitian_basis(chi.d);
    const EigHermitian eig = eig_hermitian(chi.matrix);
    const double min_eig = eig.eigenvalues(n - 1);
    if (min_eig < -1e-9 * std::max(1.0, chi.matrix.norm()))
        throw std::invalid_argument(
            "chi_to_kraus: chi has a negative eigenvalue beyond tolerance (map is not CP)");
    const double cutoff = 1e-12 * std::max(eig.eigenvalues(0), 0.0);
    KrausChannel out{chi.d, {}};
    for (Index i = 0; i < n; ++i) {
        const double lam = eig.eigenvalues(i);
        if (lam <= cutoff || lam <= 0.0) break;  // descending order
        Matrix K = Matrix::Zero(chi.d, chi.d);
        for (Index l = 0; l < n; ++l)
            K += eig.eigenvectors(l, i) * basis.elements[static_cast<std::size_t>(l)];
        out.kraus.push_back(std::sqrt(lam) * K);
    }
    if (out.kraus.empty())
        throw std::invalid_argument("chi_to_kraus: chi matrix is numerically zero");
    return out;
}

BipartiteOperator jamiolkowski_state(const KrausChannel& C) {
    check_channel(C);
    const Index n = C.d * C.d;
    Matrix rho = Matrix::Zero(n, n);
    for (const auto& K : C.kraus) {
        const Vector v = vec(K);
        rho.noalias() += v * v.adjoint();
    }
    rho /= static_cast<double>(C.d);
    return {C.d, rho};
}

ChiMatrix chi_from_jamiolkowski(const BipartiteOperator& rho_j) {
    const Index d = rho_j.local_dim;
    const Index n = d * d;
    if (rho_j.matrix.rows() != n || rho_j.matrix.cols() != n)
        throw std::invalid_argument("chi_from_jamiolkowski: matrix side must equal d^2");
    const OperatorBasis& basis = hermitian_basis(d);
    Matrix bell(n, n);
    for (Index k = 0; k < n; ++k) bell.col(k) = bell_vector(basis, k);
    return {d, &basis, bell.adjoint() * rho_j.matrix * bell};
}

CptpReport validate_cptp(const KrausChannel& C, double tol) {
    check_channel(C);
    Matrix acc = Matrix::Zero(C.d, C.d);
    for (const auto& K : C.kraus) acc.noalias() += K.adjoint() * K;
    CptpReport rep;
    rep.tp_residual = (acc - Matrix::Identity(C.d, C.d)).norm();
    const PsdReport psd = is_psd(jamiolkowski_state(C).matrix, tol);
    rep.min_choi_eig = psd.min_eig;
    rep.verdict = rep.tp_residual <= tol && psd.verdict;
    return rep;
}

KrausChannel depolarizing(Index d, double p) {
    if (d < 2) throw std::invalid_argument("depolarizing: d must be >= 2");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
    // (1-p) rho + p tr(rho) Id/d  ==  (1-p+p/d^2) rho + (p/d^2) sum_{a>=1} P_a rho P_a
    const OperatorBasis& basis = hermitian_basis(d);
    KrausChannel out{d, {}};
    out.kraus.push_back(std::sqrt(1.0 - p + p / static_cast<double>(d * d)) *
                        Matrix::Identity(d, d));
    const double w = std::sqrt(p / static_cast<double>(d * d));
    if (w > 0.0)
        for (std::size_t a = 1; a < basis.elements.size(); ++a)
            out.kraus.push_back(w * basis.elements[a]);
    return out;
}

KrausChannel dephasing(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("dephasing: p must lie in [0, 1]");
    Matrix Z(2, 2);
    Z << 1.0, 0.0, 0.0, -1.0;
    KrausChannel out{2, {}};
    if (p < 1.0) out.kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(2, 2));
    if (p > 0.0) out.kraus.push_back(std::sqrt(p) * Z);
    return out;
}

KrausChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
    Matrix K0 = Matrix::Zero(2, 2);
    K0(0, 0) = 1.0;
    K0(1, 1) = std::sqrt(1.0 - gamma);
    Matrix K1 = Matrix::Zero(2, 2);
    K1(0, 1) = std::sqrt(gamma);
    KrausChannel out{2, {K0}};
    if (gamma > 0.0) out.kraus.push_back(K1);
    return out;
}

KrausChannel random_cptp(Index d, int rank, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_cptp: d must be >= 2");
    if (rank < 1 || static_cast<Index>(rank) > d * d)
        throw std::invalid_argument("random_cptp: rank must lie in [1, d^2]");
    std::mt19937_64 rng(splitmix64(seed));
    const Index n = d * d;
    const Matrix G = gaussian_matrix(n, rank, rng);
    const Matrix W = G * G.adjoint();
    const Matrix Q = static_cast<double>(d) * partial_trace({d, W}, 1);
    // Q^{-1/2} with an eigenvalue floor guarding degenerate draws
    const EigHermitian eq = eig_hermitian(Q);
    Matrix qis = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        const double lam = std::max(eq.eigenvalues(i), 1e-12);
        qis.noalias() +=
            (1.0 / std::sqrt(lam)) * (eq.eigenvectors.col(i) * eq.eigenvectors.col(i).adjoint());
    }
    const Matrix conj = tensor_product(Matrix::Identity(d, d), qis);
    const BipartiteOperator rho_j{d, conj * W * conj.adjoint()};
    return chi_to_kraus(chi_from_jamiolkowski(rho_j));
}

Matrix haar_unitary(Index d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
    std::mt19937_64 rng(splitmix64(seed ^ 0xC2B2AE3D27D4EB4Full));
    const Matrix G = gaussian_matrix(d, d, rng);
    const Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < d; ++i) {
        const Complex r = R(i, i);
        const double a = std::abs(r);
        Q.col(i) *= (a > 0.0) ? r / a : Complex(1.0, 0.0);
    }
    return Q;
}

}  // namespace fidmom
