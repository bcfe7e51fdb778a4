#include <cmath>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/ppt_prime.hpp"
#include "qcap/rng.hpp"
#include "qcap/states.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

using namespace qcap;
using tutil::fdist;
using tutil::h2;

namespace {

Matrix phi_projector(int d) { return max_entangled(d).projector(); }

// rho_RB of the qubit dephasing channel fed with the maximally entangled input.
Matrix dephasing_rb(double p) {
    Matrix rho(4, 4);
    rho(0, 0) = rho(3, 3) = 0.5;
    rho(0, 3) = rho(3, 0) = (1.0 - 2.0 * p) / 2.0;
    return rho;
}

}  // namespace

TEST_SUITE("ppt-prime") {

TEST_CASE("is_ppt_prime on fixed operators") {
    const Matrix phi = phi_projector(2);
    const PptMembership half = is_ppt_prime(phi * Cx(0.5, 0), {2, 2});
    CHECK(half.member);
    CHECK(half.pt_trace_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(half.trace == doctest::Approx(0.5).epsilon(1e-12));

    const PptMembership full = is_ppt_prime(phi, {2, 2});
    CHECK_FALSE(full.member);  // ||T_B(Phi)||_1 = 2
    CHECK(full.pt_trace_norm == doctest::Approx(2.0).epsilon(1e-10));

    CHECK(is_ppt_prime(Matrix::identity(4) * Cx(0.25, 0), {2, 2}).member);
    CHECK(is_ppt_prime(Matrix::zero(4, 4), {2, 2}).member);
    CHECK_FALSE(is_ppt_prime(tutil::diag({0.5, -0.1, 0.1, 0.1}), {2, 2}).member);
}

TEST_CASE("project_l1_ball fixed points and clipping") {
    const auto same = project_l1_ball({0.5, 0.4});
    CHECK(same[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(same[1] == doctest::Approx(0.4).epsilon(1e-14));

    const auto spike = project_l1_ball({2.0, 0.0});
    CHECK(spike[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(spike[1]) <= 1e-14);

    const auto sym = project_l1_ball({1.0, 1.0});
    CHECK(sym[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sym[1] == doctest::Approx(0.5).epsilon(1e-12));

    const auto sgn = project_l1_ball({0.8, -0.6});
    CHECK(sgn[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(sgn[1] == doctest::Approx(-0.4).epsilon(1e-12));

    Rng rng(401);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> v(5);
        for (double& x : v) x = rng.uniform(-2.0, 2.0);
        const auto w = project_l1_ball(v);
        double norm = 0.0;
        for (double x : w) norm += std::abs(x);
        CHECK(norm <= 1.0 + 1e-12);
        const auto w2 = project_l1_ball(w);  // idempotence
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(w2[i] - w[i]) <= 1e-12);
    }
}

TEST_CASE("project_subsimplex fixed points and constraints") {
    const auto inside = project_subsimplex({0.2, 0.3});
    CHECK(inside[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(inside[1] == doctest::Approx(0.3).epsilon(1e-14));

    const auto neg = project_subsimplex({-1.0, 0.5});
    CHECK(std::abs(neg[0]) <= 1e-14);
    CHECK(neg[1] == doctest::Approx(0.5).epsilon(1e-12));

    const auto big = project_subsimplex({0.8, 0.8});
    CHECK(big[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(big[1] == doctest::Approx(0.5).epsilon(1e-12));

    Rng rng(402);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> v(4);
        for (double& x : v) x = rng.uniform(-1.0, 1.5);
        const auto q = project_subsimplex(v);
        double sum = 0.0;
        for (double x : q) {
            CHECK(x >= -1e-14);
            sum += x;
        }
        CHECK(sum <= 1.0 + 1e-12);
    }
}

TEST_CASE("project_ppt_prime always lands inside the set") {
    Rng rng(403);
    const std::vector<std::array<int, 2>> dim_list = {{2, 2}, {2, 3}, {3, 3}};
    for (const auto& dims : dim_list) {
        const int d = dims[0] * dims[1];
        for (int rep = 0; rep < 8; ++rep) {
            Matrix x = random_hermitian(rng, d) * Cx(rng.uniform(0.2, 2.0), 0);
            if (rep % 3 == 0) x = random_psd(rng, d);  // PSD but PT-norm violating inputs too
            const ProjectResult res = project_ppt_prime(x, dims);
            CHECK(res.converged);
            CHECK(is_ppt_prime(res.element.op, dims, 1e-8).member);
            CHECK(res.element.trace <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("project_ppt_prime fixes members") {
    const Matrix half_phi = phi_projector(2) * Cx(0.5, 0);
    const ProjectResult a = project_ppt_prime(half_phi, {2, 2});
    CHECK(fdist(a.element.op, half_phi) <= 1e-9);
    const Matrix mixed = Matrix::identity(4) * Cx(0.25, 0);
    const ProjectResult b = project_ppt_prime(mixed, {2, 2});
    CHECK(fdist(b.element.op, mixed) <= 1e-9);
}

TEST_CASE("projected elements respect the entangled-overlap cap") {
    Rng rng(404);
    for (int rep = 0; rep < 60; ++rep) {
        const Matrix x = random_hermitian(rng, 4) * Cx(rng.uniform(0.2, 2.0), 0);
        const Matrix tau = project_ppt_prime(x, {2, 2}).element.op;
        CHECK(max_entangled_overlap(tau, {2, 2}, 2) <= 0.5 + 1e-8);
    }
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix x = random_hermitian(rng, 9) * Cx(rng.uniform(0.2, 2.0), 0);
        const Matrix tau = project_ppt_prime(x, {3, 3}).element.op;
        CHECK(max_entangled_overlap(tau, {3, 3}, 3) <= 1.0 / 3.0 + 1e-8);
    }
}

TEST_CASE("max_entangled_overlap fixed values") {
    CHECK(max_entangled_overlap(phi_projector(2) * Cx(0.5, 0), {2, 2}, 2) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(max_entangled_overlap(Matrix::identity(4) * Cx(0.25, 0), {2, 2}, 2) ==
          doctest::Approx(0.25).epsilon(1e-12));
    Matrix corner(4, 4);
    corner(0, 0) = 1.0;
    CHECK(max_entangled_overlap(corner, {2, 2}, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rains_rel_entropy returns a certificate it satisfies") {
    Rng rng(405);
    RainsOpts opts;
    for (int rep = 0; rep < 3; ++rep) {
        const Matrix rho = random_density(rng, 4);
        const RainsStateResult r = rains_rel_entropy(rho, {2, 2}, opts);
        CHECK(r.converged);
        CHECK_FALSE(r.value_infinite);
        CHECK(is_ppt_prime(r.tau, {2, 2}, 1e-8).member);
        // Reported value is the divergence evaluated at the returned element.
        const DivergenceValue at_tau = rel_entropy(rho, r.tau);
        CHECK_FALSE(at_tau.is_infinite);
        CHECK(std::abs(at_tau.bits - r.value) <= 1e-10);
        CHECK(r.value >= -1e-10);
    }
}

TEST_CASE("rains_rel_entropy known minima") {
    RainsOpts opts;
    // Maximally entangled state: min = log2 d at tau = Phi/d.
    const RainsStateResult phi = rains_rel_entropy(phi_projector(2), {2, 2}, opts);
    CHECK(std::abs(phi.value - 1.0) <= 1e-6);

    // Isotropic state with singlet fraction f: min = 1 - h2(f).
    const double f = 0.9;
    const Matrix p2 = phi_projector(2);
    const Matrix iso = p2 * Cx(f, 0) + (Matrix::identity(4) - p2) * Cx((1.0 - f) / 3.0, 0);
    const RainsStateResult r = rains_rel_entropy(iso, {2, 2}, opts);
    CHECK(std::abs(r.value - (1.0 - h2(f))) <= 1e-6);

    // Product states are already in PPT': min = 0 at tau = rho.
    Rng rng(406);
    const Matrix prod = kron(random_density(rng, 2), random_density(rng, 2));
    const RainsStateResult z = rains_rel_entropy(prod, {2, 2}, opts);
    CHECK(std::abs(z.value) <= 1e-6);
}

TEST_CASE("warm starts converge to the same value") {
    RainsOpts opts;
    const Matrix rho = dephasing_rb(0.2);
    const RainsStateResult cold = rains_rel_entropy(rho, {2, 2}, opts);
    RainsOpts warm = opts;
    warm.warm_start = &cold.tau;
    const RainsStateResult again = rains_rel_entropy(rho, {2, 2}, warm);
    CHECK(std::abs(again.value - cold.value) <= 1e-7);
}

TEST_CASE("aligned solver matches the closed dephasing value") {
    const double p = 0.2;
    Matrix corr(2, 2);
    corr(0, 0) = corr(1, 1) = 0.5;
    corr(0, 1) = corr(1, 0) = (1.0 - 2.0 * p) / 2.0;
    RainsOpts opts;
    const AlignedRainsResult a = rains_rel_entropy_aligned(corr, opts);
    CHECK(a.converged);
    CHECK(std::abs(a.value - (1.0 - h2(p))) <= 1e-9);
    double qsum = 0.0;
    for (double q : a.q) {
        CHECK(q >= -1e-12);
        qsum += q;
    }
    CHECK(qsum <= 1.0 + 1e-9);

    // The embedded tau is a feasible certificate for the full solver's problem.
    const PptPrimeElement tau = embed_aligned_tau(a.q);
    CHECK(is_ppt_prime(tau.op, tau.dims, 1e-8).member);
    const DivergenceValue full = rel_entropy(dephasing_rb(p), tau.op);
    CHECK(std::abs(full.bits - a.value) <= 1e-9);

    // Full bipartite solver lands on the same minimum.
    const RainsStateResult general = rains_rel_entropy(dephasing_rb(p), {2, 2}, opts);
    CHECK(std::abs(general.value - a.value) <= 1e-6);
}

TEST_CASE("aligned solver orders in alpha") {
    Matrix corr(2, 2);
    corr(0, 0) = corr(1, 1) = 0.5;
    corr(0, 1) = corr(1, 0) = 0.3;
    RainsOpts lim;
    RainsOpts a2;
    a2.alpha = Alpha::of(2.0);
    const AlignedRainsResult r1 = rains_rel_entropy_aligned(corr, lim);
    const AlignedRainsResult r2 = rains_rel_entropy_aligned(corr, a2);
    CHECK(r1.value <= r2.value + 1e-8);

    // alpha = 2 value is certified by the embedded element as well.
    const PptPrimeElement tau = embed_aligned_tau(r2.q);
    const DivergenceValue dv = sandwiched_renyi(dephasing_rb(0.2), tau.op, Alpha::of(2.0));
    CHECK(std::abs(dv.bits - r2.value) <= 1e-9);
}

TEST_CASE("embed_aligned_tau lays weights on the aligned diagonal") {
    const PptPrimeElement t = embed_aligned_tau({0.25, 0.5});
    CHECK(t.dims == std::array<int, 2>{2, 2});
    CHECK(t.op(0, 0).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(t.op(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(t.op(1, 1)) + std::abs(t.op(2, 2)) <= 1e-14);
    CHECK(std::abs(t.op(0, 3)) <= 1e-14);
    CHECK(t.trace == doctest::Approx(0.75).epsilon(1e-12));
}

}  // TEST_SUITE
