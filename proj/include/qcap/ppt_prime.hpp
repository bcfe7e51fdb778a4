// The PPT' set and Rains relative entropy solvers.
//
// PPT'(A:B) = { tau >= 0, ||T_B(tau)||_1 <= 1 }; membership implies
// tr(tau) <= 1.  Projection onto the set runs Dykstra's alternating scheme
// between the PSD cone (eigenvalue clipping) and the partial-transpose
// trace-norm ball (l1-ball projection of the T_B spectrum; valid spectrally
// because T_B is a Frobenius isometry).
//
// rains_rel_entropy minimizes a divergence over PPT' by projected gradient
// descent with exact eigenbasis gradients.  Optimization evaluates against the
// full-rank safeguard (1-eps_floor) tau + eps_floor I/d, which stays inside
// the feasible set; the reported value is the plain divergence at the returned
// feasible element, so it is always a certified upper bound on the true
// minimum (within ~1.5 eps_floor bits of it).

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcap/divergences.hpp"
#include "qcap/parallel.hpp"
#include "qcap/rng.hpp"

namespace qcap {

struct PptPrimeElement {
    Matrix op;
    std::array<int, 2> dims;
    double min_eig = 0.0;
    double pt_trace_norm = 0.0;
    double trace = 0.0;
};

struct PptMembership {
    double min_eig = 0.0;
    double pt_trace_norm = 0.0;
    double trace = 0.0;
    bool member = false;
};

PptMembership is_ppt_prime(const Matrix& tau, std::array<int, 2> dims, double tol = 1e-8);

struct ProjectOpts {
    // Inputs that land on the PSD-boundary / PT-sphere corner need tens of
    // thousands of alternating steps to reach the movement tolerance.
    int max_iters = 50000;
    double tol = 1e-11;  // iterate movement, relative to max(1, ||x||_F)
};

struct ProjectResult {
    PptPrimeElement element;
    int iterations = 0;
    bool converged = false;
};

ProjectResult project_ppt_prime(const Matrix& x, std::array<int, 2> dims, const ProjectOpts& opts = {});

// Euclidean projection of a real vector onto the l1 ball of radius 1.
std::vector<double> project_l1_ball(const std::vector<double>& lam);
// Euclidean projection onto { q >= 0, sum q <= 1 }.
std::vector<double> project_subsimplex(const std::vector<double>& q);

struct RainsOpts {
    Alpha alpha = Alpha::limit1();
    std::uint64_t seed = 42;
    int max_iters = 5000;
    double tol = 1e-8;        // relative objective change
    int random_restarts = 4;  // on top of the projected-input start
    double eps_floor = 1e-9;  // weight of the maximally mixed safeguard component
    Exec exec = Exec::serial;
    const Matrix* warm_start = nullptr;  // when set: single run from project(warm_start)
};

struct RainsStateResult {
    double value = 0.0;  // bits; unfloored evaluation at tau
    bool value_infinite = false;
    Matrix tau;
    std::array<int, 2> dims{};
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

RainsStateResult rains_rel_entropy(const Matrix& rho, std::array<int, 2> dims, const RainsOpts& opts);

// Aligned variant for states supported on the correlated subspace
// span{|xx>}: corr_block is the d x d block matrix of the state and tau is
// restricted to sum_x q_x |xx><xx| (PT-invariant, so feasibility is just
// q >= 0, sum q <= 1).  Exact for the generalized-dephasing family at
// limit-1; an upper-bound certificate otherwise.
struct AlignedRainsResult {
    double value = 0.0;
    bool value_infinite = false;
    std::vector<double> q;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

AlignedRainsResult rains_rel_entropy_aligned(const Matrix& corr_block, const RainsOpts& opts);

// Embed aligned weights back into the full bipartite space as
// sum_x q_x |xx><xx| on dims {d, d}.
PptPrimeElement embed_aligned_tau(const std::vector<double>& q);

// Re tr(Phi_M tau) for the rank-M maximally entangled state embedded on the
// first M basis vectors of each factor.
double max_entangled_overlap(const Matrix& tau, std::array<int, 2> dims, int m);

}  // namespace qcap
