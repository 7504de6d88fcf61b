// Dense complex linear algebra for bipartite operators: Kronecker products,
// Hilbert-Schmidt inner products, partial trace/transpose, SWAP, Hermitian
// eigensystems and PSD tests.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fidmom {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Operator on C^d (x) C^d. Bipartite row index is i*d + j with i the first
// (system-1) factor; every partial operation below derives from this layout.
struct BipartiteOperator {
    Index local_dim = 0;
    Matrix matrix;  // d^2 x d^2
};

Matrix identity(Index d);

// (A (x) B)[(i,j),(k,l)] = A(i,k) * B(j,l)
Matrix tensor_product(const Matrix& A, const Matrix& B);

// tr(A^dag B); throws on shape mismatch
Complex hs_inner(const Matrix& A, const Matrix& B);

// Trace out subsystem 1 or 2, leaving a d x d matrix
Matrix partial_trace(const BipartiteOperator& A, int subsystem);

// Transpose a single tensor factor; an involution that preserves the trace
BipartiteOperator partial_transpose(const BipartiteOperator& A, int subsystem);

// S |l>|m> = |m>|l>; unitary with S^2 = Id and tr(S) = d
BipartiteOperator swap_operator(Index d);

struct EigHermitian {
    Eigen::VectorXd eigenvalues;  // descending
    Matrix eigenvectors;          // orthonormal columns matching the order above
};

// Eigendecomposition of the symmetrized input (A + A^dag)/2
EigHermitian eig_hermitian(const Matrix& A);

struct PsdReport {
    bool verdict = false;
    double min_eig = 0.0;
};

// verdict is true iff the smallest eigenvalue of the symmetrized input is
// >= -tol * max(1, ||A||_F)
PsdReport is_psd(const Matrix& A, double tol = 1e-9);

// Row-major vectorization, vec(K)[i*d + j] = K(i,j), and its inverse.
// With this layout (K (x) Id)|Psi> = vec(K)/sqrt(d).
Vector vec(const Matrix& K);
Matrix unvec(const Vector& v, Index d);

}  // namespace fidmom
