// Channel-level quantities: coherent information, (Renyi) Rains information,
// strong-converse formula bounds and the capacity hierarchy report.
//
// Outer maximizations run multi-start projected-gradient ascent over an
// unnormalized input vector (or over the probability simplex for the reduced
// dephasing path) with central finite differences.  Inner Rains solves during
// the ascent are warm-started from the current center's tau; probe solves
// never chain off each other, so results do not depend on evaluation order.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/ppt_prime.hpp"
#include "qcap/zoo.hpp"

namespace qcap {

struct BoundReport {
    std::string quantity;  // coherent_info | rains_info | renyi_rains_info
    std::string channel;
    Alpha alpha = Alpha::limit1();
    double value = 0.0;  // bits
    bool value_infinite = false;
    std::string method;
    std::optional<PureState> input_state;  // optimizing phi_RA, reference dim = d_in
    std::optional<PptPrimeElement> tau;    // inner certificate
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
    std::uint64_t seed = 0;
};

using ChannelQuantityResult = BoundReport;

struct AscentOpts {
    int restarts = 8;  // maximally entangled, product, rest random
    int max_iters = 500;
    double tol = 1e-6;
    double fd_step = 1e-6;
    std::uint64_t seed = 42;
    Exec exec = Exec::serial;
};

enum class RainsMethod { automatic, general, covariant };

struct RainsInfoOpts {
    AscentOpts ascent;
    RainsOpts inner;        // standalone / final certification solves
    RainsOpts probe_inner;  // warm-started solves inside the ascent
    RainsMethod method = RainsMethod::automatic;

    RainsInfoOpts() {
        inner.tol = 1e-8;
        probe_inner.tol = 1e-7;
        probe_inner.max_iters = 300;
        probe_inner.random_restarts = 0;
    }
};

BoundReport coherent_info_channel(const QuantumChannel& n, const AscentOpts& opts = {});

BoundReport rains_info_channel(const QuantumChannel& n, Alpha alpha, const RainsInfoOpts& opts = {});

BoundReport covariant_rains_reduction(const QuantumChannel& n, Covariance kind, Alpha alpha,
                                      const RainsInfoOpts& opts = {});

// F <= 2^(-((alpha-1)/alpha)(log_M - renyi_rains)), clamped to [0, 1].
double fidelity_upper_bound(double log_m, double renyi_rains, double alpha);

// n R~_alpha(N) + (alpha d_in^2 / (alpha - 1)) log2 n, an upper bound on
// R~_alpha(N^(x)n).
double weak_subadd_bound(double single_copy_renyi_rains, int n, double alpha, int d_in);

// log2(1/(1-delta)) + 4 delta (log2(2 + sqrt(d_in d_out / delta)))^2, the
// uniform gap between R~_(1+delta) and R.
double continuity_gap(double delta, int d_in, int d_out);

// Rate bound at block length n with delta = 1/sqrt(n):
// R + ((1+delta)/delta) d_in^2 log2(n)/n + continuity_gap(delta, d_in, d_out).
double corollary1_bound(double single_copy_rains, int n, int d_in, int d_out);

struct ScExponentResult {
    double exponent = 0.0;
    double best_alpha = 0.0;
    std::vector<std::pair<double, double>> grid;  // (alpha, renyi_rains)
};

// max over the alpha grid of ((alpha-1)/alpha)(rate - R~_alpha(N)).
ScExponentResult sc_exponent(double rate, const QuantumChannel& n,
                             const std::vector<double>& alpha_grid,
                             const RainsInfoOpts& opts = {});

struct HierarchyReport {
    std::string channel;
    double coherent_info = 0.0;
    double rains_info = 0.0;
    std::vector<std::pair<double, double>> renyi_grid;  // (alpha, value), alpha ascending
    bool ic_le_rains = false;
    bool grid_monotone = false;
    bool consistent = false;
    std::vector<int> l_grid = {1};  // declared truncation of the inf over tensor powers
    std::optional<double> two_copy_rate;  // R(N^(x)2)/2 when l = 2 included
    std::optional<double> inf_l_value;
};

HierarchyReport hierarchy_report(const QuantumChannel& n, const std::vector<double>& alpha_grid,
                                 const RainsInfoOpts& opts = {}, bool include_two_copy = false,
                                 const AscentOpts& ic_opts = {});

}  // namespace qcap
