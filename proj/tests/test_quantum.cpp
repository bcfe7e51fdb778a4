#include <cmath>
#include <stdexcept>

#include "qcap/channels.hpp"
#include "qcap/rng.hpp"
#include "qcap/states.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

using namespace qcap;
using tutil::fdist;

TEST_SUITE("quantum") {

TEST_CASE("density operator construction validates") {
    CHECK_NOTHROW(DensityOperator(Matrix::identity(2) * Cx(0.5, 0), {2}));
    CHECK_NOTHROW(DensityOperator(tutil::diag({0.25, 0.75}), {2}));
    CHECK_THROWS_AS(DensityOperator(Matrix::identity(2), {2}), std::invalid_argument);  // trace 2
    CHECK_THROWS_AS(DensityOperator(tutil::diag({1.5, -0.5}), {2}), std::invalid_argument);
    CHECK_THROWS_AS(DensityOperator(tutil::mat2(0.5, 0.3, 0.1, 0.5), {2}), std::invalid_argument);
    CHECK_THROWS_AS(DensityOperator(tutil::diag({0.5, 0.5}), {3}), std::invalid_argument);
}

TEST_CASE("pure state construction validates the norm") {
    const double s = std::sqrt(0.5);
    CHECK_NOTHROW(PureState({Cx(s, 0), Cx(0, s)}, {2}));
    CHECK_THROWS_AS(PureState({Cx(1, 0), Cx(1, 0)}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(PureState({Cx(1, 0), Cx(0, 0)}, {3}), std::invalid_argument);
    const PureState p({Cx(s, 0), Cx(0, s)}, {2});
    CHECK(p.projector().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.to_density().dims == std::vector<int>{2});
}

TEST_CASE("max_entangled has uniform aligned amplitudes and mixed marginals") {
    for (int d : {2, 3}) {
        const PureState phi = max_entangled(d);
        CHECK(phi.dims == std::vector<int>{d, d});
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                const Cx amp = phi.amplitudes[static_cast<std::size_t>(x * d + y)];
                const double want = x == y ? 1.0 / std::sqrt(double(d)) : 0.0;
                CHECK(std::abs(amp - want) <= 1e-14);
            }
        const Matrix marg = partial_trace(phi.projector(), {d, d}, 0);
        CHECK(fdist(marg, Matrix::identity(d) * Cx(1.0 / d, 0)) <= 1e-12);
    }
}

TEST_CASE("purify recovers the input when the reference is traced out") {
    Rng rng(201);
    const DensityOperator rho(random_density(rng, 3), {3});
    const PureState psi = purify(rho);
    CHECK(psi.dims == std::vector<int>{3, 3});
    CHECK(fdist(partial_trace(psi.projector(), {3, 3}, 1), rho.op) <= 1e-9);
}

TEST_CASE("fidelity matches closed forms and invariances") {
    Rng rng(202);
    const Matrix rho = random_density(rng, 3);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

    // Pure states: squared overlap.
    const Matrix zero = tutil::diag({1.0, 0.0});
    Matrix plus(2, 2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fidelity(zero, Matrix::identity(2) * Cx(0.5, 0)) == doctest::Approx(0.5).epsilon(1e-10));

    const Matrix sig = random_density(rng, 3);
    const double f = fidelity(rho, sig);
    CHECK(fidelity(sig, rho) == doctest::Approx(f).epsilon(1e-9));
    CHECK(f >= -1e-12);
    CHECK(f <= 1.0 + 1e-12);
    const Matrix u = random_unitary(rng, 3);
    CHECK(fidelity(u * rho * u.adjoint(), u * sig * u.adjoint()) ==
          doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("validate_kraus reports completeness honestly") {
    const ChannelValidationReport ok = validate_kraus({Matrix::identity(2)});
    CHECK(ok.valid);
    CHECK(ok.completeness_residual <= 1e-12);
    CHECK(ok.choi_min_eig >= -1e-12);
    CHECK(ok.choi_marginal_residual <= 1e-12);

    const ChannelValidationReport bad = validate_kraus({Matrix::identity(2), Matrix::identity(2)});
    CHECK_FALSE(bad.valid);
    CHECK(bad.completeness_residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // Rectangular isometry |0> -> |0>, |1> -> |2| on a 3-dim output.
    Matrix v(3, 2);
    v(0, 0) = 1.0;
    v(2, 1) = 1.0;
    CHECK(validate_kraus({v}).valid);

    CHECK_THROWS_AS(QuantumChannel("bad", {Matrix::identity(2), Matrix::identity(2)}),
                    std::invalid_argument);
}

TEST_CASE("choi operator carries the defining properties") {
    for (double p : {0.0, 0.3}) {
        const QuantumChannel n = make_qubit_dephasing(p);
        const Matrix j = n.choi();
        CHECK(j.rows() == 4);
        CHECK(fdist(partial_trace(j, {2, 2}, 0), Matrix::identity(2) * Cx(0.5, 0)) <= 1e-12);
        CHECK(herm_eig(j).eigenvalues.front() >= -1e-12);
        CHECK(j(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(j(0, 3).real() == doctest::Approx((1.0 - 2.0 * p) / 2.0).epsilon(1e-12));
    }
    const QuantumChannel e = make_erasure(2, 0.25);
    CHECK(fdist(partial_trace(e.choi(), {2, 3}, 0), Matrix::identity(2) * Cx(0.5, 0)) <= 1e-12);
}

TEST_CASE("apply_matrix agrees with the choi contraction") {
    Rng rng(203);
    for (const QuantumChannel& n :
         {make_qubit_dephasing(0.3), make_erasure(2, 0.4), make_depolarizing(2, 0.2)}) {
        const Matrix rho = random_density(rng, n.d_in());
        CHECK(fdist(n.apply_matrix(rho), n.apply_via_choi(rho)) <= 1e-11);
        CHECK(n.apply_matrix(rho).trace().real() == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("apply_on_subsystem acts on one slot of a product") {
    Rng rng(204);
    const QuantumChannel n = make_erasure(2, 0.3);
    const Matrix r0 = random_density(rng, 2);
    const Matrix r1 = random_density(rng, 2);
    const Matrix r2 = random_density(rng, 3);
    const Matrix state = kron(kron(r0, r1), r2);
    std::vector<int> dims_out;
    const Matrix out = apply_on_subsystem(n, state, {2, 2, 3}, 1, &dims_out);
    CHECK(dims_out == std::vector<int>{2, 3, 3});
    CHECK(fdist(out, kron(kron(r0, n.apply_matrix(r1)), r2)) <= 1e-11);

    const DensityOperator d0(state, {2, 2, 3});
    const DensityOperator d1 = apply_channel(n, d0, 1);
    CHECK(d1.dims == std::vector<int>{2, 3, 3});
    CHECK(fdist(d1.op, out) <= 1e-12);
}

TEST_CASE("channel_tensor_power multiplies the action") {
    Rng rng(205);
    const QuantumChannel n = make_qubit_dephasing(0.25);
    const QuantumChannel n2 = channel_tensor_power(n, 2);
    CHECK(n2.d_in() == 4);
    CHECK(n2.d_out() == 4);
    CHECK(n2.kraus().size() == 4);
    CHECK(n2.covariant(Covariance::dephasing_diagonal));
    const Matrix a = random_density(rng, 2);
    const Matrix b = random_density(rng, 2);
    CHECK(fdist(n2.apply_matrix(kron(a, b)), kron(n.apply_matrix(a), n.apply_matrix(b))) <= 1e-11);
    CHECK_THROWS_AS(channel_tensor_power(make_identity(4), 4), std::length_error);
}

TEST_CASE("erasure keeps the input block and routes weight to the flag") {
    const double p = 0.3;
    const QuantumChannel n = make_erasure(2, p);
    Rng rng(206);
    const Matrix rho = random_density(rng, 2);
    const Matrix out = n.apply_matrix(rho);
    CHECK(out.rows() == 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(out(i, j) - rho(i, j) * (1.0 - p)) <= 1e-12);
    CHECK(out(2, 2).real() == doctest::Approx(p).epsilon(1e-12));
    CHECK(std::abs(out(0, 2)) <= 1e-12);

    // Input unitaries lift to the output with the flag direction untouched.
    const Matrix u = random_unitary(rng, 2);
    const Matrix lifted = n.output_unitary(u);
    CHECK(lifted.rows() == 3);
    CHECK(std::abs(lifted(2, 2) - Cx(1, 0)) <= 1e-12);
    CHECK(std::abs(lifted(0, 2)) <= 1e-12);
    CHECK(fdist(lifted * lifted.adjoint(), Matrix::identity(3)) <= 1e-12);
}

}  // TEST_SUITE
