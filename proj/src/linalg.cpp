#include "fidmom/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace fidmom {

namespace {

void check_bipartite(const BipartiteOperator& A) {
    const Index d = A.local_dim;
    if (d < 1 || A.matrix.rows() != d * d || A.matrix.cols() != d * d)
        throw std::invalid_argument("bipartite operator: matrix side must equal local_dim^2");
}

void check_subsystem(int subsystem) {
    if (subsystem != 1 && subsystem != 2)
        throw std::invalid_argument("subsystem index must be 1 or 2");
}

}  // namespace

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix tensor_product(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Index i = 0; i < A.rows(); ++i)
        for (Index k = 0; k < A.cols(); ++k)
            out.block(i * B.rows(), k * B.cols(), B.rows(), B.cols()) = A(i, k) * B;
    return out;
}

Complex hs_inner(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("hs_inner: shape mismatch");
    return A.conjugate().cwiseProduct(B).sum();
}

Matrix partial_trace(const BipartiteOperator& A, int subsystem) {
    check_bipartite(A);
    check_subsystem(subsystem);
    const Index d = A.local_dim;
    Matrix out = Matrix::Zero(d, d);
    if (subsystem == 1) {
        for (Index j = 0; j < d; ++j)
            for (Index l = 0; l < d; ++l) {
                Complex s = 0.0;
                for (Index i = 0; i < d; ++i) s += A.matrix(i * d + j, i * d + l);
                out(j, l) = s;
            }
    } else {
        for (Index i = 0; i < d; ++i)
            for (Index k = 0; k < d; ++k) {
                Complex s = 0.0;
                for (Index j = 0; j < d; ++j) s += A.matrix(i * d + j, k * d + j);
                out(i, k) = s;
            }
    }
    return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& A, int subsystem) {
    check_bipartite(A);
    check_subsystem(subsystem);
    const Index d = A.local_dim;
    BipartiteOperator out{d, Matrix(d * d, d * d)};
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
                for (Index l = 0; l < d; ++l) {
                    const Complex v = (subsystem == 1) ? A.matrix(k * d + j, i * d + l)
                                                       : A.matrix(i * d + l, k * d + j);
                    out.matrix(i * d + j, k * d + l) = v;
                }
    return out;
}

BipartiteOperator swap_operator(Index d) {
    if (d < 2) throw std::invalid_argument("swap_operator: d must be >= 2");
    BipartiteOperator out{d, Matrix::Zero(d * d, d * d)};
    for (Index l = 0; l < d; ++l)
        for (Index m = 0; m < d; ++m) out.matrix(m * d + l, l * d + m) = 1.0;
    return out;
}

EigHermitian eig_hermitian(const Matrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    const Matrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    const Index n = H.rows();
    EigHermitian out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

PsdReport is_psd(const Matrix& A, double tol) {
    const EigHermitian eig = eig_hermitian(A);
    const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
    const double scale = std::max(1.0, A.norm());
    return {min_eig >= -tol * scale, min_eig};
}

Vector vec(const Matrix& K) {
    const Index d = K.rows();
    Vector v(d * K.cols());
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < K.cols(); ++j) v(i * K.cols() + j) = K(i, j);
    return v;
}

Matrix unvec(const Vector& v, Index d) {
    if (v.size() != d * d) throw std::invalid_argument("unvec: length must be d^2");
    Matrix K(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) K(i, j) = v(i * d + j);
    return K;
}

}  // namespace fidmom
