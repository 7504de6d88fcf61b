// Quantum channel representations (Kraus, chi matrix, Jamiolkowski state),
// conversions between them, CPTP validation and channel constructors.

#pragma once

#include <cstdint>
#include <vector>

#include "fidmom/bases.hpp"
#include "fidmom/linalg.hpp"

namespace fidmom {

// CP(TP) map on d-dimensional states as a nonempty list of Kraus operators.
struct KrausChannel {
    Index d = 0;
    std::vector<Matrix> kraus;
};

// d^2 x d^2 coefficient matrix of a channel in an operator basis:
// E(rho) = sum_{l,m} chi_{l,m} P_l rho P_m^dag. Hermitian with unit trace for
// a trace-preserving channel; PSD iff the map is completely positive.
struct ChiMatrix {
    Index d = 0;
    const OperatorBasis* basis = nullptr;  // cached bases outlive all users
    Matrix matrix;
};

// Single-Kraus channel rho -> U rho U^dag; throws if U is not unitary
KrausChannel unitary_channel(const Matrix& U);

// Lambda = U^dag o E, the deviation of an implementation E from the ideal U
KrausChannel deviation_channel(const KrausChannel& E, const Matrix& U);

// E(rho) = sum_i K_i rho K_i^dag
Matrix apply_channel(const KrausChannel& C, const Matrix& rho);

// Expand K_i = sum_l c_{il} P_l with c_{il} = tr(P_l^dag K_i)/d and accumulate
// chi_{lm} = sum_i c_{il} conj(c_{im})
ChiMatrix kraus_to_chi(const KrausChannel& C, const OperatorBasis& basis);
ChiMatrix kraus_to_chi(const KrausChannel& C);  // canonical hermitian_basis(d)

// Eigendecomposition route K_i = sqrt(lambda_i) sum_l v_{il} P_l; eigenvalues
// below 1e-12 * lambda_max are dropped. Throws if chi has a negative
// eigenvalue beyond tolerance (the map is not CP).
KrausChannel chi_to_kraus(const ChiMatrix& chi);

// rho_J = (E (x) Id)|Psi><Psi| = (1/d) sum_i vec(K_i) vec(K_i)^dag
BipartiteOperator jamiolkowski_state(const KrausChannel& C);

// Bell-basis matrix elements <psi_j| rho_J |psi_k> of a Jamiolkowski state;
// the inverse of jamiolkowski_state up to numerical noise
ChiMatrix chi_from_jamiolkowski(const BipartiteOperator& rho_j);

struct CptpReport {
    double tp_residual = 0.0;  // ||sum_i K_i^dag K_i - Id||_F
    double min_choi_eig = 0.0;
    bool verdict = false;
};

CptpReport validate_cptp(const KrausChannel& C, double tol = 1e-8);

// rho -> (1-p) rho + p tr(rho) Id/d
KrausChannel depolarizing(Index d, double p);
// qubit phase damping {sqrt(1-p) I, sqrt(p) Z}
KrausChannel dephasing(double p);
// qubit amplitude damping with decay probability gamma
KrausChannel amplitude_damping(double gamma);

// Ginibre-Choi sample with `rank` Kraus operators: W = G G^dag for a
// d^2 x rank complex Gaussian G, normalized by conjugation with
// (Id (x) Q^{-1/2}), Q = d tr_1(W), so the system-1 partial trace is Id/d.
// Deterministic for a fixed seed within one build.
KrausChannel random_cptp(Index d, int rank, std::uint64_t seed);

// Haar-distributed unitary (QR of a Ginibre matrix with phase correction)
Matrix haar_unitary(Index d, std::uint64_t seed);

}  // namespace fidmom
