#include "fidmom/bases.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fidmom {

namespace {

// Standard generalized Gell-Mann family (Gram 2*delta) rescaled by sqrt(d/2)
// so that tr(P_a P_b) = d*delta_ab.
std::vector<Matrix> build_gellmann(Index d) {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(d * d));
    out.push_back(Matrix::Identity(d, d));
    const double scale = std::sqrt(static_cast<double>(d) / 2.0);
    const Complex iu(0.0, 1.0);
    for (Index j = 0; j < d; ++j)
        for (Index k = j + 1; k < d; ++k) {
            Matrix M = Matrix::Zero(d, d);
            M(j, k) = 1.0;
            M(k, j) = 1.0;
            out.push_back(scale * M);
        }
    for (Index j = 0; j < d; ++j)
        for (Index k = j + 1; k < d; ++k) {
            Matrix M = Matrix::Zero(d, d);
            M(j, k) = -iu;
            M(k, j) = iu;
            out.push_back(scale * M);
        }
    for (Index l = 1; l < d; ++l) {
        Matrix M = Matrix::Zero(d, d);
        for (Index j = 0; j < l; ++j) M(j, j) = 1.0;
        M(l, l) = -static_cast<double>(l);
        M *= std::sqrt(2.0 / (static_cast<double>(l) * static_cast<double>(l + 1)));
        out.push_back(scale * M);
    }
    return out;
}

}  // namespace

const OperatorBasis& hermitian_basis(Index d) {
    if (d < 2) throw std::invalid_argument("hermitian_basis: d must be >= 2");
    static std::mutex mutex;
    static std::map<Index, OperatorBasis> cache;
    const std::scoped_lock lock(mutex);
    auto it = cache.find(d);
    if (it == cache.end())
        it = cache.emplace(d, OperatorBasis{d, build_gellmann(d)}).first;
    return it->second;
}

Vector max_entangled(Index d) {
    if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
    Vector v = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index a = 0; a < d; ++a) v(a * d + a) = amp;
    return v;
}

BipartiteOperator chi0(Index d) {
    const Vector psi = max_entangled(d);
    return {d, psi * psi.adjoint()};
}

Vector bell_vector(const OperatorBasis& basis, Index k) {
    if (k < 0 || k >= static_cast<Index>(basis.elements.size()))
        throw std::out_of_range("bell_vector: index out of range");
    // (P_k (x) Id)|Psi> has component (i,j) equal to P_k(i,j)/sqrt(d)
    return vec(basis.elements[static_cast<std::size_t>(k)]) /
           std::sqrt(static_cast<double>(basis.d));
}

}  // namespace fidmom
