#include <algorithm>
#include <cmath>

#include "qcap/linalg.hpp"
#include "qcap/rng.hpp"
#include "test_util.hpp"

using namespace qcap;
using tutil::fdist;
using tutil::mat2;

namespace {

Matrix eig_reconstruct(const EigenDecomposition& e) {
    Matrix lam(e.vectors.rows(), e.vectors.cols());
    for (int i = 0; i < lam.rows(); ++i) lam(i, i) = e.eigenvalues[static_cast<std::size_t>(i)];
    return e.vectors * lam * e.vectors.adjoint();
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("herm_eig on fixed matrices") {
    SUBCASE("diagonal") {
        const EigenDecomposition e = herm_eig(tutil::diag({3.0, 1.0}));
        CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("pauli x") {
        const EigenDecomposition e = herm_eig(tutil::pauli_x());
        CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
        // Eigenvectors are (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase.
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(e.vectors(0, k)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
            CHECK(std::abs(e.vectors(1, k)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
        }
    }
    SUBCASE("complex off-diagonal") {
        // [[2, i], [-i, 2]] has eigenvalues 2 -+ 1.
        const EigenDecomposition e = herm_eig(mat2(2.0, Cx(0, 1), Cx(0, -1), 2.0));
        CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
    }
    SUBCASE("degenerate spectra") {
        const EigenDecomposition z = herm_eig(Matrix::zero(3, 3));
        for (double v : z.eigenvalues) CHECK(std::abs(v) <= 1e-14);
        const EigenDecomposition e = herm_eig(kron(Matrix::identity(2), tutil::pauli_x()));
        CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(e.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(e.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(e.eigenvalues[3] == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("non-hermitian rejected") {
        CHECK_THROWS(herm_eig(mat2(0.0, 1.0, 0.0, 0.0)));
    }
}

TEST_CASE("herm_eig reconstructs random matrices at every dimension") {
    Rng rng(101);
    for (int d : {2, 3, 4, 6, 8, 12, 16}) {
        for (int rep = 0; rep < 4; ++rep) {
            const Matrix a = random_hermitian(rng, d);
            const EigenDecomposition e = herm_eig(a);
            const double scale = std::max(1.0, a.frobenius_norm());
            CAPTURE(d);
            CHECK(fdist(eig_reconstruct(e), a) <= 1e-10 * scale);
            CHECK(fdist(e.vectors.adjoint() * e.vectors, Matrix::identity(d)) <= 1e-11 * d);
            CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
        }
    }
}

TEST_CASE("mat_func spectral identities") {
    Rng rng(102);
    SUBCASE("sqrt undoes squaring on psd input") {
        const Matrix a = random_psd(rng, 4);
        const Matrix root = mat_func(a * a, [](double x) { return std::sqrt(x); }, false);
        CHECK(fdist(root, a) <= 1e-9 * std::max(1.0, a.frobenius_norm()));
    }
    SUBCASE("exp of log recovers a full-rank matrix") {
        const Matrix p = random_psd(rng, 3) + Matrix::identity(3) * Cx(0.5, 0);
        const Matrix lg = mat_func(p, [](double x) { return std::log(x); }, false);
        const Matrix back = mat_func(lg, [](double x) { return std::exp(x); }, false);
        CHECK(fdist(back, p) <= 1e-9 * p.frobenius_norm());
    }
    SUBCASE("support_only pins the kernel at zero") {
        const Matrix m = mat_func(tutil::diag({2.0, 0.0}), [](double x) { return std::log(x); }, true);
        CHECK(m(0, 0).real() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(std::abs(m(1, 1)) <= 1e-14);
    }
    SUBCASE("non-finite values are rejected without support_only") {
        CHECK_THROWS_AS(
            mat_func(tutil::diag({2.0, 0.0}), [](double x) { return std::log(x); }, false),
            std::domain_error);
    }
}

TEST_CASE("trace_norm equals the absolute spectrum sum") {
    CHECK(trace_norm(tutil::pauli_z()) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(trace_norm(tutil::diag({0.5, -0.25})) == doctest::Approx(0.75).epsilon(1e-13));
    Rng rng(103);
    const Matrix a = random_hermitian(rng, 5);
    double direct = 0.0;
    for (double v : herm_eig(a).eigenvalues) direct += std::abs(v);
    CHECK(trace_norm(a) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(trace_norm(a) >= std::abs(a.trace().real()) - 1e-12);
}

TEST_CASE("support_projector is an idempotent range projector") {
    const Matrix p = support_projector(tutil::diag({5.0, 0.0, 1.0}));
    CHECK(fdist(p, tutil::diag({1.0, 0.0, 1.0})) <= 1e-12);
    Rng rng(104);
    Matrix g(3, 2);
    for (auto& x : g.data()) x = rng.cnormal();
    const Matrix low = g * g.adjoint();  // rank 2 in dimension 3
    const Matrix q = support_projector(low);
    CHECK(fdist(q * q, q) <= 1e-10);
    CHECK(q.trace().real() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fdist(q * low, low) <= 1e-10 * std::max(1.0, low.frobenius_norm()));
}

TEST_CASE("kron satisfies the mixed product rule") {
    Rng rng(105);
    Matrix a(2, 2), b(3, 3), c(2, 2), d(3, 3);
    for (Matrix* m : {&a, &b, &c, &d})
        for (auto& x : m->data()) x = rng.cnormal();
    CHECK(fdist(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12 * 100);
    CHECK(kron(a, b).rows() == 6);
    Matrix r(2, 3);
    for (auto& x : r.data()) x = rng.cnormal();
    CHECK(kron(r, b).rows() == 6);
    CHECK(kron(r, b).cols() == 9);
}

TEST_CASE("partial_trace collapses either tensor factor") {
    Rng rng(106);
    const Matrix a = random_hermitian(rng, 2);
    const Matrix b = random_hermitian(rng, 3);
    const Matrix ab = kron(a, b);
    CHECK(fdist(partial_trace(ab, {2, 3}, 0), a * b.trace()) <= 1e-12 * 10);
    CHECK(fdist(partial_trace(ab, {2, 3}, 1), b * a.trace()) <= 1e-12 * 10);
    const Matrix m = random_hermitian(rng, 6);
    CHECK(partial_trace(m, {2, 3}, 0).trace().real() ==
          doctest::Approx(m.trace().real()).epsilon(1e-12));
}

TEST_CASE("partial_transpose involution and entangled spectrum") {
    Rng rng(107);
    const Matrix m = random_hermitian(rng, 6);
    CHECK(fdist(partial_transpose(partial_transpose(m, {2, 3}), {2, 3}), m) <= 1e-13 * 10);

    // Transposing one side of Phi_2 yields eigenvalues {-1/2, 1/2, 1/2, 1/2}.
    Matrix phi(4, 4);
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    const std::vector<double> ev = herm_eig(partial_transpose(phi, {2, 2})).eigenvalues;
    CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx(0.5).epsilon(1e-12));

    // Product operators keep their spectrum under partial transposition.
    const Matrix prod = kron(random_psd(rng, 2), random_psd(rng, 3));
    const double low = herm_eig(partial_transpose(prod, {2, 3})).eigenvalues.front();
    CHECK(low >= -1e-10);
}

TEST_CASE("permute_systems agrees between vectors and matrices") {
    Rng rng(108);
    const std::vector<int> dims = {2, 3};
    const std::vector<Cx> v = random_pure(rng, 6);
    const std::vector<Cx> w = permute_systems(v, dims, {1, 0});
    CHECK(fdist(outer(w, w), permute_systems(outer(v, v), dims, {1, 0})) <= 1e-13);

    const Matrix a = random_hermitian(rng, 2);
    const Matrix b = random_hermitian(rng, 3);
    CHECK(fdist(permute_systems(kron(a, b), dims, {1, 0}), kron(b, a)) <= 1e-13 * 10);

    // Swapping twice is the identity.
    const Matrix m = random_hermitian(rng, 6);
    CHECK(fdist(permute_systems(permute_systems(m, dims, {1, 0}), {3, 2}, {1, 0}), m) <= 1e-13 * 10);
}

}  // TEST_SUITE
