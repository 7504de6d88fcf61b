#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fidmom/channels.hpp"
#include "fidmom/rng.hpp"

using namespace fidmom;

namespace {

Matrix pauli(int a) {
    return hermitian_basis(2).elements[static_cast<std::size_t>(a)];
}

Matrix ket_proj(Index d, Index i) {
    Matrix M = Matrix::Zero(d, d);
    M(i, i) = 1.0;
    return M;
}

Matrix random_density(Index d, std::mt19937_64& rng) {
    Matrix G(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) G(i, j) = complex_gaussian(rng);
    Matrix rho = G * G.adjoint();
    return rho / rho.trace();
}

}  // namespace

TEST_CASE("unitary and deviation channels") {
    const KrausChannel id2 = unitary_channel(identity(2));
    std::mt19937_64 rng(3);
    const Matrix rho = random_density(2, rng);
    CHECK((apply_channel(id2, rho) - rho).norm() < 1e-14);

    const KrausChannel x = unitary_channel(pauli(1));
    CHECK((apply_channel(x, ket_proj(2, 0)) - ket_proj(2, 1)).norm() < 1e-14);

    Matrix H(2, 2);
    H << 1, 1, 1, -1;
    H /= std::sqrt(2.0);
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((apply_channel(unitary_channel(H), ket_proj(2, 0)) - plus).norm() < 1e-14);

    CHECK_THROWS_AS(unitary_channel(Matrix(2.0 * identity(2))), std::invalid_argument);

    // perfect implementation deviates by the identity channel
    const Matrix U = haar_unitary(3, 17);
    const KrausChannel lam = deviation_channel(unitary_channel(U), U);
    CHECK(std::abs(kraus_to_chi(lam).matrix(0, 0) - Complex(1, 0)) < 1e-12);

    // deviation against the identity leaves the channel unchanged
    const KrausChannel dep = depolarizing(2, 0.3);
    const KrausChannel same = deviation_channel(dep, identity(2));
    for (std::size_t i = 0; i < dep.kraus.size(); ++i)
        CHECK((same.kraus[i] - dep.kraus[i]).norm() < 1e-14);

    // tr(Z X) = 0 so the X-vs-Z deviation has chi_00 = 0
    const KrausChannel xz = deviation_channel(unitary_channel(pauli(1)), pauli(3));
    CHECK(std::abs(kraus_to_chi(xz).matrix(0, 0)) < 1e-14);

    CHECK_THROWS_AS(deviation_channel(dep, identity(3)), std::invalid_argument);
}

TEST_CASE("apply fixtures") {
    std::mt19937_64 rng(5);
    const Matrix rho = random_density(2, rng);

    CHECK((apply_channel(depolarizing(2, 1.0), rho) - Matrix(identity(2) / 2.0)).norm() < 1e-12);

    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((apply_channel(dephasing(0.5), plus) - Matrix(identity(2) / 2.0)).norm() < 1e-14);

    // trace and hermiticity preservation on random CPTP channels
    for (int rep = 0; rep < 5; ++rep) {
        const KrausChannel C = random_cptp(3, 3, rng());
        const Matrix in = random_density(3, rng);
        const Matrix out = apply_channel(C, in);
        CHECK(std::abs(out.trace() - in.trace()) < 1e-10);
        CHECK((out - out.adjoint()).norm() < 1e-12);
    }
}

TEST_CASE("kraus_to_chi fixtures") {
    const Matrix chi_id = kraus_to_chi(unitary_channel(identity(2))).matrix;
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = 1.0;
    CHECK((chi_id - expect).norm() < 1e-14);

    for (double p : {0.25, 0.5, 0.9}) {
        const Matrix chi = kraus_to_chi(dephasing(p)).matrix;
        Matrix diag = Matrix::Zero(4, 4);
        diag(0, 0) = 1.0 - p;
        diag(3, 3) = p;
        CHECK((chi - diag).norm() < 1e-12);
    }

    for (double p : {0.2, 0.8}) {
        const Matrix chi = kraus_to_chi(depolarizing(2, p)).matrix;
        Matrix diag = Matrix::Zero(4, 4);
        diag(0, 0) = 1.0 - 3.0 * p / 4.0;
        diag(1, 1) = diag(2, 2) = diag(3, 3) = p / 4.0;
        CHECK((chi - diag).norm() < 1e-12);
    }
}

TEST_CASE("chi properties for random channels") {
    std::mt19937_64 rng(31);
    for (Index d : {2, 3}) {
        const OperatorBasis& basis = hermitian_basis(d);
        const KrausChannel C = random_cptp(d, 2, rng());
        const Matrix chi = kraus_to_chi(C, basis).matrix;

        CHECK((chi - chi.adjoint()).norm() < 1e-10);
        CHECK(std::abs(chi.trace() - Complex(1, 0)) < 1e-9);
        CHECK(is_psd(chi, 1e-9).verdict);

        // trace preservation: sum_{lm} chi_{lm} P_m P_l = Id
        Matrix tp = Matrix::Zero(d, d);
        for (Index l = 0; l < d * d; ++l)
            for (Index m = 0; m < d * d; ++m)
                tp += chi(l, m) * basis.elements[static_cast<std::size_t>(m)] *
                      basis.elements[static_cast<std::size_t>(l)];
        CHECK((tp - identity(d)).norm() < 1e-9);

        // applying the channel through chi agrees with the Kraus form
        const Matrix rho = random_density(d, rng);
        Matrix via_chi = Matrix::Zero(d, d);
        for (Index l = 0; l < d * d; ++l)
            for (Index m = 0; m < d * d; ++m)
                via_chi += chi(l, m) * basis.elements[static_cast<std::size_t>(l)] * rho *
                           basis.elements[static_cast<std::size_t>(m)];
        CHECK((via_chi - apply_channel(C, rho)).norm() < 1e-10);
    }
}

TEST_CASE("kraus gauge invariance of chi") {
    std::mt19937_64 rng(37);
    const KrausChannel C = random_cptp(2, 2, rng());
    const Matrix u = haar_unitary(2, rng());
    KrausChannel mixed{C.d, {}};
    for (Index i = 0; i < 2; ++i) {
        Matrix K = Matrix::Zero(2, 2);
        for (Index j = 0; j < 2; ++j) K += u(i, j) * C.kraus[static_cast<std::size_t>(j)];
        mixed.kraus.push_back(K);
    }
    CHECK((kraus_to_chi(C).matrix - kraus_to_chi(mixed).matrix).norm() < 1e-10);
}

TEST_CASE("chi_to_kraus") {
    // chi0-structured chi gives back the identity channel
    Matrix chi_id = Matrix::Zero(4, 4);
    chi_id(0, 0) = 1.0;
    const KrausChannel id = chi_to_kraus({2, &hermitian_basis(2), chi_id});
    REQUIRE(id.kraus.size() == 1);
    CHECK((id.kraus[0] - identity(2)).norm() < 1e-12);

    // diag(0.7, 0, 0, 0.3) gives {sqrt(0.7) I, sqrt(0.3) Z} up to order/phase
    Matrix chi_deph = Matrix::Zero(4, 4);
    chi_deph(0, 0) = 0.7;
    chi_deph(3, 3) = 0.3;
    const KrausChannel deph = chi_to_kraus({2, &hermitian_basis(2), chi_deph});
    REQUIRE(deph.kraus.size() == 2);
    std::mt19937_64 rng(43);
    const Matrix rho = random_density(2, rng);
    CHECK((apply_channel(deph, rho) - apply_channel(dephasing(0.3), rho)).norm() < 1e-12);

    // a chi with a genuinely negative eigenvalue is rejected
    Matrix bad = Matrix::Zero(4, 4);
    bad(0, 0) = 1.2;
    bad(1, 1) = -0.2;
    CHECK_THROWS_AS(chi_to_kraus({2, &hermitian_basis(2), bad}), std::invalid_argument);

    // round trip on random CPTP channels
    for (Index d : {2, 3}) {
        for (int rep = 0; rep < 25; ++rep) {
            const KrausChannel C = random_cptp(d, 1 + int(rng() % std::uint64_t(d * d)), rng());
            const ChiMatrix chi = kraus_to_chi(C);
            const ChiMatrix again = kraus_to_chi(chi_to_kraus(chi));
            CHECK((chi.matrix - again.matrix).norm() < 1e-9);
        }
    }
}

TEST_CASE("jamiolkowski state") {
    CHECK((jamiolkowski_state(unitary_channel(identity(3))).matrix - chi0(3).matrix).norm() <
          1e-14);
    CHECK((jamiolkowski_state(depolarizing(2, 1.0)).matrix - Matrix(identity(4) / 4.0)).norm() <
          1e-12);

    // agreement with the definition (E (x) Id) |Psi><Psi|
    std::mt19937_64 rng(53);
    for (Index d : {2, 3}) {
        const KrausChannel C = random_cptp(d, 2, rng());
        const Matrix proj = chi0(d).matrix;
        Matrix by_def = Matrix::Zero(d * d, d * d);
        for (const Matrix& K : C.kraus) {
            const Matrix big = tensor_product(K, identity(d));
            by_def += big * proj * big.adjoint();
        }
        CHECK((by_def - jamiolkowski_state(C).matrix).norm() < 1e-12);

        // partial trace over system 2 applies the channel to Id/d
        const Matrix lhs = partial_trace(jamiolkowski_state(C), 2);
        const Matrix id_over_d = identity(d) / double(d);
        CHECK((lhs - apply_channel(C, id_over_d)).norm() < 1e-10);
    }
}

TEST_CASE("validate_cptp") {
    const CptpReport ok = validate_cptp(unitary_channel(identity(2)));
    CHECK(ok.verdict);
    CHECK(ok.tp_residual < 1e-14);
    CHECK(std::abs(ok.min_choi_eig) < 1e-14);

    // {I, I} violates trace preservation by ||I||_F
    const KrausChannel twice{2, {identity(2), identity(2)}};
    const CptpReport bad = validate_cptp(twice);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.tp_residual == doctest::Approx(identity(2).norm()));

    std::mt19937_64 rng(61);
    for (Index d : {2, 3, 4})
        for (int rep = 0; rep < 33; ++rep) {
            const int rank = 1 + int(rng() % std::uint64_t(d * d));
            CHECK(validate_cptp(random_cptp(d, rank, rng()), 1e-8).verdict);
        }
}

TEST_CASE("fixture parameter validation") {
    CHECK_THROWS_AS(depolarizing(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(dephasing(2.0), std::invalid_argument);
    CHECK_THROWS_AS(amplitude_damping(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(random_cptp(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_cptp(2, 5, 1), std::invalid_argument);

    // depolarizing at p = 0 acts as the identity
    std::mt19937_64 rng(71);
    const Matrix rho = random_density(3, rng);
    CHECK((apply_channel(depolarizing(3, 0.0), rho) - rho).norm() < 1e-12);

    // full damping sends |1><1| to |0><0|
    CHECK((apply_channel(amplitude_damping(1.0), ket_proj(2, 1)) - ket_proj(2, 0)).norm() < 1e-14);
}

TEST_CASE("random_cptp determinism and rank") {
    const KrausChannel a = random_cptp(3, 2, 12345);
    const KrausChannel b = random_cptp(3, 2, 12345);
    REQUIRE(a.kraus.size() == b.kraus.size());
    for (std::size_t i = 0; i < a.kraus.size(); ++i)
        CHECK((a.kraus[i] - b.kraus[i]).norm() == 0.0);

    CHECK(a.kraus.size() == 2);

    // rank-1 draws are unitary channels
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const KrausChannel u = random_cptp(3, 1, seed);
        REQUIRE(u.kraus.size() == 1);
        CHECK((u.kraus[0].adjoint() * u.kraus[0] - identity(3)).norm() < 1e-8);
    }
}

TEST_CASE("haar unitary") {
    for (Index d : {2, 3, 5}) {
        const Matrix U = haar_unitary(d, 9);
        CHECK((U.adjoint() * U - identity(d)).norm() < 1e-12);
    }
}
