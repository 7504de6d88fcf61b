// Supernormalized Hermitian operator bases (generalized Gell-Mann), the
// maximally entangled state and the generalized Bell basis built from it.

#pragma once

#include <vector>

#include "fidmom/linalg.hpp"

namespace fidmom {

// d^2 Hermitian matrices with tr(P_a P_b) = d delta_ab and P_0 = Id (so every
// other element is traceless).
struct OperatorBasis {
    Index d = 0;
    std::vector<Matrix> elements;
};

// Canonical basis for dimension d, cached after first construction (safe for
// concurrent callers). Element order: identity, symmetric off-diagonal pairs
// in (row, col) order, antisymmetric pairs, then diagonal elements. For d = 2
// this is exactly {I, X, Y, Z}.
const OperatorBasis& hermitian_basis(Index d);

// |Psi> = d^{-1/2} sum_a |a>|a>
Vector max_entangled(Index d);

// Rank-1 projector |Psi><Psi|: the chi representation of the identity channel
BipartiteOperator chi0(Index d);

// |psi_k> = (P_k (x) Id)|Psi>; an orthonormal basis of C^d (x) C^d
Vector bell_vector(const OperatorBasis& basis, Index k);

}  // namespace fidmom
