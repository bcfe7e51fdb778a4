#include <cmath>
#include <stdexcept>

#include "qcap/rng.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

using namespace qcap;
using tutil::fdist;
using tutil::h2;

TEST_SUITE("zoo") {

TEST_CASE("clock and shift unitaries") {
    for (int d : {2, 3}) {
        const Matrix z = clock_unitary(d);
        const Matrix x = shift_unitary(d);
        CHECK(fdist(z * z.adjoint(), Matrix::identity(d)) <= 1e-12);
        CHECK(fdist(x * x.adjoint(), Matrix::identity(d)) <= 1e-12);
        Matrix zp = Matrix::identity(d);
        Matrix xp = Matrix::identity(d);
        for (int k = 0; k < d; ++k) {
            zp = zp * z;
            xp = xp * x;
        }
        CHECK(fdist(zp, Matrix::identity(d)) <= 1e-12);
        CHECK(fdist(xp, Matrix::identity(d)) <= 1e-12);
    }
    // Weyl commutation: Z X = omega X Z.
    const Matrix z = clock_unitary(3);
    const Matrix x = shift_unitary(3);
    const Cx omega = std::exp(Cx(0, 2.0 * M_PI / 3.0));
    CHECK(fdist(z * x, x * z * omega) <= 1e-12);
    CHECK(fdist(clock_unitary(3, 2), z * z) <= 1e-12);
    CHECK(fdist(shift_unitary(3, 2), x * x) <= 1e-12);
}

TEST_CASE("identity family") {
    const QuantumChannel n = make_identity(3);
    CHECK(n.kraus().size() == 1);
    CHECK(n.covariant(Covariance::dephasing_diagonal));
    CHECK(n.covariant(Covariance::full_unitary_group));
    Rng rng(501);
    const Matrix rho = random_density(rng, 3);
    CHECK(fdist(n.apply_matrix(rho), rho) <= 1e-13);
    CHECK_THROWS_AS(make_identity(0), std::invalid_argument);
    CHECK_THROWS_AS(make_identity(65), std::invalid_argument);
}

TEST_CASE("qubit dephasing damps coherences by 1 - 2p") {
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
        const QuantumChannel n = make_qubit_dephasing(p);
        CHECK(n.covariant(Covariance::dephasing_diagonal));
        Matrix plus(2, 2);
        plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
        const Matrix out = n.apply_matrix(plus);
        CHECK(out(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(out(0, 1).real() == doctest::Approx(0.5 * (1.0 - 2.0 * p)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_qubit_dephasing(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_qubit_dephasing(1.1), std::invalid_argument);
}

TEST_CASE("generalized dephasing from explicit environment states") {
    const double s = std::sqrt(0.5);
    const QuantumChannel n =
        make_generalized_dephasing({{Cx(1, 0), Cx(0, 0)}, {Cx(s, 0), Cx(s, 0)}});
    CHECK(n.d_in() == 2);
    CHECK(n.covariant(Covariance::dephasing_diagonal));
    Matrix plus(2, 2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    const Matrix out = n.apply_matrix(plus);
    // Coherence scales by the environment overlap <psi_1|psi_0> = 1/sqrt(2).
    CHECK(out(0, 1).real() == doctest::Approx(0.5 * s).epsilon(1e-12));
    CHECK(out(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

    const Matrix g = dephasing_gram(n);
    CHECK(g(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(g(0, 1) - Cx(s, 0)) <= 1e-10);

    CHECK_THROWS_AS(make_generalized_dephasing({{Cx(1, 0), Cx(1, 0)}, {Cx(1, 0), Cx(0, 0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_generalized_dephasing({{Cx(1, 0)}, {Cx(1, 0), Cx(0, 0)}}),
                    std::invalid_argument);
}

TEST_CASE("symmetric generalized dephasing matches the qubit family at d = 2") {
    for (double c : {0.0, 0.4, 1.0}) {
        const QuantumChannel g = make_generalized_dephasing_symmetric(2, c);
        const QuantumChannel q = make_qubit_dephasing((1.0 - c) / 2.0);
        CHECK(fdist(g.choi(), q.choi()) <= 1e-10);
    }
    const QuantumChannel g3 = make_generalized_dephasing_symmetric(3, 0.5);
    const Matrix gram = dephasing_gram(g3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(gram(i, j) - Cx(i == j ? 1.0 : 0.5, 0)) <= 1e-10);
    CHECK_THROWS_AS(make_generalized_dephasing_symmetric(3, -0.6), std::invalid_argument);
    CHECK_THROWS_AS(make_generalized_dephasing_symmetric(1, 0.5), std::invalid_argument);
}

TEST_CASE("erasure family") {
    const QuantumChannel n = make_erasure(3, 0.25);
    CHECK(n.d_in() == 3);
    CHECK(n.d_out() == 4);
    CHECK(n.covariant(Covariance::full_unitary_group));
    Rng rng(502);
    const Matrix rho = random_density(rng, 3);
    const Matrix out = n.apply_matrix(rho);
    CHECK(out(3, 3).real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(out(0, 0).real() == doctest::Approx(0.75 * rho(0, 0).real()).epsilon(1e-12));
    CHECK(out.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    const AnalyticReference ref = analytic_reference({"erasure", {{"d", 3}, {"p", 0.25}}});
    CHECK(ref.rains_info.value() == doctest::Approx(0.75 * std::log2(3.0)).epsilon(1e-12));
    CHECK(ref.pp_quantum_capacity.value() == doctest::Approx(0.75 * std::log2(3.0)).epsilon(1e-12));
    CHECK(ref.coherent_info.value() == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    const AnalyticReference deep = analytic_reference({"erasure", {{"d", 2}, {"p", 0.75}}});
    CHECK(deep.coherent_info.value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(deep.rains_info.value() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("depolarizing family") {
    const double q = 0.3;
    const QuantumChannel n = make_depolarizing(2, q);
    CHECK(n.covariant(Covariance::full_unitary_group));
    Rng rng(503);
    const Matrix rho = random_density(rng, 2);
    const Matrix want = rho * Cx(1.0 - q, 0) + Matrix::identity(2) * Cx(q / 2.0, 0);
    CHECK(fdist(n.apply_matrix(rho), want) <= 1e-11);
    // Entangled-input overlap with Phi: f = 1 - 3q/4.
    const PureState phi = max_entangled(2);
    double f = 0.0;
    const Matrix j = n.choi();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            f += (std::conj(phi.amplitudes[static_cast<std::size_t>(i)]) * j(i, k) *
                  phi.amplitudes[static_cast<std::size_t>(k)])
                     .real();
    CHECK(f == doctest::Approx(1.0 - 0.75 * q).epsilon(1e-11));
    CHECK_THROWS_AS(make_depolarizing(9, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_depolarizing(2, 1.5), std::invalid_argument);
}

TEST_CASE("family dispatch and analytic references") {
    const QuantumChannel a = make_from_family({"dephasing", {{"p", 0.3}}});
    CHECK(fdist(a.choi(), make_qubit_dephasing(0.3).choi()) <= 1e-12);
    const QuantumChannel b = make_from_family({"identity", {{"d", 4}}});
    CHECK(b.d_in() == 4);
    const QuantumChannel c = make_from_family({"gdephasing", {{"d", 3}, {"c", 0.5}}});
    CHECK(c.d_in() == 3);
    CHECK_THROWS_AS(make_from_family({"nonsense", {}}), std::invalid_argument);
    CHECK_THROWS_AS(make_from_family({"dephasing", {}}), std::invalid_argument);  // p required

    const AnalyticReference deph = analytic_reference({"dephasing", {{"p", 0.3}}});
    CHECK(deph.coherent_info.value() == doctest::Approx(1.0 - h2(0.3)).epsilon(1e-12));
    CHECK(deph.rains_info.value() == doctest::Approx(1.0 - h2(0.3)).epsilon(1e-12));
    CHECK(deph.quantum_capacity.value() == doctest::Approx(deph.pp_quantum_capacity.value()));

    const AnalyticReference ident = analytic_reference({"identity", {{"d", 4}}});
    CHECK(ident.rains_info.value() == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_FALSE(analytic_reference({"depolarizing", {{"d", 2}, {"q", 0.1}}}).rains_info.has_value());
}

TEST_CASE("dephasing_gram rejects undeclared or inconsistent channels") {
    CHECK_THROWS_AS(dephasing_gram(make_erasure(2, 0.3)), std::invalid_argument);
    QuantumChannel depol = make_depolarizing(2, 0.3);
    depol.declare_covariance(Covariance::dephasing_diagonal);  // declaration is a lie
    CHECK_THROWS_AS(dephasing_gram(depol), std::invalid_argument);
}

}  // TEST_SUITE
