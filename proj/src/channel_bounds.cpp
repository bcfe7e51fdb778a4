#include "qcap/channel_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcap {

// ===== Shared ascent helpers =====

namespace {

std::vector<Cx> normalized(std::vector<Cx> v) {
    const double n = vec_norm(v);
    if (n < 1e-300) throw std::runtime_error("ascent: zero vector");
    for (auto& x : v) x /= n;
    return v;
}

std::vector<Cx> restart_vector(int d, int r, Rng& rng) {
    if (r == 0) return max_entangled(d).amplitudes;
    if (r == 1) {
        std::vector<Cx> v(static_cast<std::size_t>(d) * d, Cx(0.0, 0.0));
        v[0] = 1.0;  // |00>
        return v;
    }
    Rng rr = rng.fork(static_cast<std::uint64_t>(r));
    return random_pure(rr, d * d);
}

// Projection onto the probability simplex (sum = 1, entries >= 0).
std::vector<double> project_simplex(const std::vector<double>& p) {
    std::vector<double> sorted = p;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cum += sorted[k];
        const double t = (cum - 1.0) / static_cast<double>(k + 1);
        if (k + 1 == sorted.size() || sorted[k + 1] <= t) {
            theta = t;
            break;
        }
    }
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = std::max(p[i] - theta, 0.0);
    return out;
}

Matrix rho_rb_from_psi(const QuantumChannel& n, const std::vector<Cx>& psi_normalized) {
    const int d = n.d_in();
    const Matrix phi = outer(psi_normalized, psi_normalized);
    return apply_on_subsystem(n, phi, {d, d}, 1);
}

struct AscentRun {
    std::vector<Cx> psi;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

// Multi-start finite-difference ascent over an unnormalized complex vector.
// objective(psi_normalized) must be scale-invariant in psi; higher is better.
template <class F>
AscentRun ascend_over_states(int d, const AscentOpts& opts, F&& objective) {
    Rng rng = Rng(opts.seed).fork(0x415343ull);
    AscentRun best;
    bool have = false;
    int total_iters = 0;
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<Cx> psi = normalized(restart_vector(d, r, rng));
        double cur = objective(psi);
        bool converged = false;
        double residual = 0.0;
        const std::size_t ncoord = 2 * psi.size();
        std::vector<double> grad(ncoord);
        for (int it = 0; it < opts.max_iters; ++it) {
            ++total_iters;
            parallel_for(ncoord, opts.exec, [&](std::size_t k) {
                std::vector<Cx> plus = psi, minus = psi;
                const std::size_t idx = k / 2;
                const Cx bump = (k % 2 == 0) ? Cx(opts.fd_step, 0.0) : Cx(0.0, opts.fd_step);
                plus[idx] += bump;
                minus[idx] -= bump;
                grad[k] = (objective(normalized(std::move(plus))) -
                           objective(normalized(std::move(minus)))) /
                          (2.0 * opts.fd_step);
            });
            double step = 0.1;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                std::vector<Cx> cand = psi;
                for (std::size_t k = 0; k < ncoord; ++k) {
                    const std::size_t idx = k / 2;
                    if (k % 2 == 0)
                        cand[idx] += Cx(step * grad[k], 0.0);
                    else
                        cand[idx] += Cx(0.0, step * grad[k]);
                }
                cand = normalized(std::move(cand));
                const double fc = objective(cand);
                if (fc > cur) {
                    residual = (fc - cur) / std::max(1.0, std::abs(fc));
                    psi = std::move(cand);
                    cur = fc;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                converged = true;
                residual = 0.0;
                break;
            }
            if (residual < opts.tol) {
                converged = true;
                break;
            }
        }
        if (!have || cur > best.value) {
            best.psi = psi;
            best.value = cur;
            best.converged = converged;
            best.residual = residual;
            have = true;
        }
    }
    best.iterations = total_iters;
    return best;
}

}  // namespace

// ===== Coherent information =====

BoundReport coherent_info_channel(const QuantumChannel& n, const AscentOpts& opts) {
    if (n.d_in() > 8) throw std::invalid_argument("coherent_info_channel: d_in > 8");
    const int d = n.d_in();
    auto objective = [&](const std::vector<Cx>& psi) {
        return coherent_info_state(rho_rb_from_psi(n, psi), {d, n.d_out()});
    };
    const AscentRun run = ascend_over_states(d, opts, objective);

    BoundReport r;
    r.quantity = "coherent_info";
    r.channel = n.name();
    r.alpha = Alpha::limit1();
    r.value = run.value;
    r.method = "ascent";
    r.input_state = PureState(run.psi, {d, d});
    r.iterations = run.iterations;
    r.converged = run.converged;
    r.residual = run.residual;
    r.seed = opts.seed;
    return r;
}

// ===== Covariant reductions =====

namespace {

void check_full_unitary_covariance(const QuantumChannel& n, std::uint64_t seed) {
    const Matrix& j = n.choi();
    const double scale = std::max(1.0, j.frobenius_norm());
    Rng rng = Rng(seed).fork(0x434F56ull);
    for (int k = 0; k < 3; ++k) {
        Rng rk = rng.fork(static_cast<std::uint64_t>(k));
        const Matrix u = random_unitary(rk, n.d_in());
        const Matrix w = kron(u.conjugate(), n.output_unitary(u));
        const double resid = (w * j * w.adjoint() - j).frobenius_norm();
        if (resid > 1e-8 * scale)
            throw std::invalid_argument("covariant_rains_reduction: declared full-unitary covariance violated");
    }
}

std::string quantity_name(Alpha a) { return a.is_limit1() ? "rains_info" : "renyi_rains_info"; }

BoundReport reduce_full_unitary(const QuantumChannel& n, Alpha alpha, const RainsInfoOpts& opts) {
    check_full_unitary_covariance(n, opts.inner.seed);
    const int d = n.d_in();
    const PureState phi = max_entangled(d);
    const Matrix rho_rb = rho_rb_from_psi(n, phi.amplitudes);
    RainsOpts io = opts.inner;
    io.alpha = alpha;
    const RainsStateResult res = rains_rel_entropy(rho_rb, {d, n.d_out()}, io);

    BoundReport r;
    r.quantity = quantity_name(alpha);
    r.channel = n.name();
    r.alpha = alpha;
    r.value = res.value;
    r.value_infinite = res.value_infinite;
    r.method = "covariant-full-unitary-group";
    r.input_state = phi;
    PptPrimeElement tau;
    tau.op = res.tau;
    tau.dims = res.dims;
    const PptMembership m = is_ppt_prime(res.tau, res.dims);
    tau.min_eig = m.min_eig;
    tau.pt_trace_norm = m.pt_trace_norm;
    tau.trace = m.trace;
    r.tau = std::move(tau);
    r.iterations = res.iterations;
    r.converged = res.converged;
    r.residual = res.residual;
    r.seed = io.seed;
    return r;
}

BoundReport reduce_dephasing_diagonal(const QuantumChannel& n, Alpha alpha, const RainsInfoOpts& opts) {
    const Matrix gamma = dephasing_gram(n);
    const int d = n.d_in();
    RainsOpts io = opts.inner;
    io.alpha = alpha;

    auto aligned_value = [&](const std::vector<double>& p) {
        Matrix m(d, d);
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                m(x, y) = std::sqrt(std::max(p[static_cast<std::size_t>(x)], 0.0) *
                                    std::max(p[static_cast<std::size_t>(y)], 0.0)) *
                          gamma(x, y);
        return rains_rel_entropy_aligned(m, io);
    };

    // Outer ascent over the simplex: uniform start plus two seeded random starts.
    std::vector<std::vector<double>> starts;
    starts.emplace_back(static_cast<std::size_t>(d), 1.0 / d);
    Rng rng = Rng(opts.ascent.seed).fork(0x534D504Cull);
    for (int r = 0; r < 2; ++r) {
        Rng rr = rng.fork(static_cast<std::uint64_t>(r));
        std::vector<double> p(static_cast<std::size_t>(d));
        double s = 0.0;
        for (auto& x : p) {
            x = 0.05 + rr.uniform();
            s += x;
        }
        for (auto& x : p) x /= s;
        starts.push_back(std::move(p));
    }

    const double h = opts.ascent.fd_step;
    std::vector<double> best_p;
    double best_val = 0.0;
    bool best_conv = false;
    double best_resid = 0.0;
    bool have = false;
    int total_iters = 0;
    for (const auto& start : starts) {
        std::vector<double> p = start;
        double cur = aligned_value(p).value;
        bool converged = false;
        double residual = 0.0;
        std::vector<double> grad(static_cast<std::size_t>(d));
        for (int it = 0; it < opts.ascent.max_iters; ++it) {
            ++total_iters;
            parallel_for(static_cast<std::size_t>(d), opts.ascent.exec, [&](std::size_t k) {
                std::vector<double> pp = p, pm = p;
                pp[k] += h;
                pm[k] -= h;
                grad[k] = (aligned_value(project_simplex(pp)).value -
                           aligned_value(project_simplex(pm)).value) /
                          (2.0 * h);
            });
            double step = 0.1;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                std::vector<double> cand(static_cast<std::size_t>(d));
                for (int x = 0; x < d; ++x)
                    cand[static_cast<std::size_t>(x)] =
                        p[static_cast<std::size_t>(x)] + step * grad[static_cast<std::size_t>(x)];
                cand = project_simplex(cand);
                const double fc = aligned_value(cand).value;
                if (fc > cur) {
                    residual = (fc - cur) / std::max(1.0, std::abs(fc));
                    p = std::move(cand);
                    cur = fc;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                converged = true;
                residual = 0.0;
                break;
            }
            if (residual < opts.ascent.tol) {
                converged = true;
                break;
            }
        }
        if (!have || cur > best_val) {
            best_p = p;
            best_val = cur;
            best_conv = converged;
            best_resid = residual;
            have = true;
        }
    }

    const AlignedRainsResult fin = aligned_value(best_p);

    BoundReport r;
    r.quantity = quantity_name(alpha);
    r.channel = n.name();
    r.alpha = alpha;
    r.value = fin.value;
    r.value_infinite = fin.value_infinite;
    r.method = "covariant-dephasing-diagonal";
    std::vector<Cx> psi(static_cast<std::size_t>(d) * d, Cx(0.0, 0.0));
    for (int x = 0; x < d; ++x)
        psi[static_cast<std::size_t>(x) * d + x] = std::sqrt(std::max(best_p[static_cast<std::size_t>(x)], 0.0));
    r.input_state = PureState(normalized(std::move(psi)), {d, d});
    r.tau = embed_aligned_tau(fin.q);
    r.iterations = total_iters + fin.iterations;
    r.converged = best_conv && fin.converged;
    r.residual = std::max(best_resid, fin.residual);
    r.seed = opts.ascent.seed;
    return r;
}

BoundReport rains_general(const QuantumChannel& n, Alpha alpha, const RainsInfoOpts& opts) {
    if (n.d_in() * n.d_out() > 16)
        throw std::invalid_argument("rains_info_channel: general path limited to d_in*d_out <= 16");
    const int d = n.d_in();
    const std::array<int, 2> dims = {d, n.d_out()};
    RainsOpts full = opts.inner;
    full.alpha = alpha;
    RainsOpts probe = opts.probe_inner;
    probe.alpha = alpha;
    probe.eps_floor = opts.inner.eps_floor;

    // Per-restart warm tau: probes warm-start from the accepted center only.
    Rng rng = Rng(opts.ascent.seed).fork(0x415343ull);
    AscentRun best;
    RainsStateResult best_cert;
    bool have = false;
    int total_iters = 0;
    for (int r = 0; r < opts.ascent.restarts; ++r) {
        std::vector<Cx> psi = normalized(restart_vector(d, r, rng));
        const std::vector<Cx> psi0 = psi;
        RainsStateResult center = rains_rel_entropy(rho_rb_from_psi(n, psi), dims, full);
        double cur = center.value_infinite ? 60.0 : center.value;
        Matrix warm = center.tau;
        bool converged = false;
        double residual = 0.0;
        const std::size_t ncoord = 2 * psi.size();
        std::vector<double> grad(ncoord);
        for (int it = 0; it < opts.ascent.max_iters; ++it) {
            ++total_iters;
            parallel_for(ncoord, opts.ascent.exec, [&](std::size_t k) {
                std::vector<Cx> plus = psi, minus = psi;
                const std::size_t idx = k / 2;
                const Cx bump = (k % 2 == 0) ? Cx(opts.ascent.fd_step, 0.0) : Cx(0.0, opts.ascent.fd_step);
                plus[idx] += bump;
                minus[idx] -= bump;
                RainsOpts po = probe;
                po.warm_start = &warm;
                const RainsStateResult rp =
                    rains_rel_entropy(rho_rb_from_psi(n, normalized(std::move(plus))), dims, po);
                const RainsStateResult rm =
                    rains_rel_entropy(rho_rb_from_psi(n, normalized(std::move(minus))), dims, po);
                const double vp = rp.value_infinite ? 60.0 : rp.value;
                const double vm = rm.value_infinite ? 60.0 : rm.value;
                grad[k] = (vp - vm) / (2.0 * opts.ascent.fd_step);
            });
            double step = 0.1;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                std::vector<Cx> cand = psi;
                for (std::size_t k = 0; k < ncoord; ++k) {
                    const std::size_t idx = k / 2;
                    if (k % 2 == 0)
                        cand[idx] += Cx(step * grad[k], 0.0);
                    else
                        cand[idx] += Cx(0.0, step * grad[k]);
                }
                cand = normalized(std::move(cand));
                RainsOpts po = probe;
                po.warm_start = &warm;
                const RainsStateResult rc = rains_rel_entropy(rho_rb_from_psi(n, cand), dims, po);
                const double fc = rc.value_infinite ? 60.0 : rc.value;
                if (fc > cur) {
                    residual = (fc - cur) / std::max(1.0, std::abs(fc));
                    psi = std::move(cand);
                    cur = fc;
                    warm = rc.tau;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                converged = true;
                residual = 0.0;
                break;
            }
            if (residual < opts.ascent.tol) {
                converged = true;
                break;
            }
        }
        // Probe values steer the search but can overestimate the inner
        // minimum; rank restarts by certified standalone solves only.  The
        // pre-ascent center is kept as a candidate so a drifting ascent can
        // never lose ground against its own starting input.
        struct Candidate {
            const std::vector<Cx>* psi;
            const RainsStateResult* cert;
            bool conv;
            double resid;
        };
        RainsStateResult end_cert;
        const bool moved = psi != psi0;
        if (moved) end_cert = rains_rel_entropy(rho_rb_from_psi(n, psi), dims, full);
        const Candidate cands[] = {
            {&psi0, &center, center.converged, center.residual},
            {&psi, moved ? &end_cert : &center, converged && end_cert.converged, residual},
        };
        for (int ci = 0; ci < (moved ? 2 : 1); ++ci) {
            const Candidate& cc = cands[ci];
            const double cv = cc.cert->value_infinite ? 60.0 : cc.cert->value;
            if (!have || cv > best.value) {
                best.psi = *cc.psi;
                best.value = cv;
                best.converged = cc.conv;
                best.residual = cc.resid;
                best_cert = *cc.cert;
                have = true;
            }
        }
        if (moved) total_iters += end_cert.iterations;
    }

    BoundReport r;
    r.quantity = quantity_name(alpha);
    r.channel = n.name();
    r.alpha = alpha;
    r.value = best_cert.value;
    r.value_infinite = best_cert.value_infinite;
    r.method = "general";
    r.input_state = PureState(best.psi, {d, d});
    PptPrimeElement tau;
    tau.op = best_cert.tau;
    tau.dims = best_cert.dims;
    const PptMembership m = is_ppt_prime(best_cert.tau, best_cert.dims);
    tau.min_eig = m.min_eig;
    tau.pt_trace_norm = m.pt_trace_norm;
    tau.trace = m.trace;
    r.tau = std::move(tau);
    r.iterations = total_iters;
    r.converged = best.converged;
    r.residual = best.residual;
    r.seed = opts.ascent.seed;
    return r;
}

}  // namespace

BoundReport covariant_rains_reduction(const QuantumChannel& n, Covariance kind, Alpha alpha,
                                      const RainsInfoOpts& opts) {
    if (!n.covariant(kind))
        throw std::invalid_argument("covariant_rains_reduction: kind not declared for channel");
    if (kind == Covariance::dephasing_diagonal) return reduce_dephasing_diagonal(n, alpha, opts);
    return reduce_full_unitary(n, alpha, opts);
}

BoundReport rains_info_channel(const QuantumChannel& n, Alpha alpha, const RainsInfoOpts& opts) {
    switch (opts.method) {
        case RainsMethod::general:
            return rains_general(n, alpha, opts);
        case RainsMethod::covariant:
            if (n.covariant(Covariance::dephasing_diagonal))
                return reduce_dephasing_diagonal(n, alpha, opts);
            if (n.covariant(Covariance::full_unitary_group))
                return reduce_full_unitary(n, alpha, opts);
            throw std::invalid_argument("rains_info_channel: no covariance declared");
        case RainsMethod::automatic:
        default:
            if (n.covariant(Covariance::dephasing_diagonal))
                return reduce_dephasing_diagonal(n, alpha, opts);
            if (n.covariant(Covariance::full_unitary_group))
                return reduce_full_unitary(n, alpha, opts);
            return rains_general(n, alpha, opts);
    }
}

// ===== Formula bounds =====

double fidelity_upper_bound(double log_m, double renyi_rains, double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("fidelity_upper_bound: alpha must exceed 1");
    const double expo = ((alpha - 1.0) / alpha) * (log_m - renyi_rains);
    return std::clamp(std::exp2(-expo), 0.0, 1.0);
}

double weak_subadd_bound(double single_copy_renyi_rains, int n, double alpha, int d_in) {
    if (n < 1) throw std::invalid_argument("weak_subadd_bound: n must be >= 1");
    if (!(alpha > 1.0)) throw std::invalid_argument("weak_subadd_bound: alpha must exceed 1");
    return n * single_copy_renyi_rains +
           (alpha * d_in * d_in / (alpha - 1.0)) * std::log2(static_cast<double>(n));
}

double continuity_gap(double delta, int d_in, int d_out) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("continuity_gap: delta outside (0,1)");
    const double inner = 2.0 + std::sqrt(static_cast<double>(d_in) * d_out / delta);
    const double l = std::log2(inner);
    return std::log2(1.0 / (1.0 - delta)) + 4.0 * delta * l * l;
}

double corollary1_bound(double single_copy_rains, int n, int d_in, int d_out) {
    if (n < 2) throw std::invalid_argument("corollary1_bound: n must be >= 2");
    const double delta = 1.0 / std::sqrt(static_cast<double>(n));
    return single_copy_rains +
           ((1.0 + delta) / delta) * d_in * d_in * std::log2(static_cast<double>(n)) / n +
           continuity_gap(delta, d_in, d_out);
}

ScExponentResult sc_exponent(double rate, const QuantumChannel& n,
                             const std::vector<double>& alpha_grid, const RainsInfoOpts& opts) {
    if (alpha_grid.empty()) throw std::invalid_argument("sc_exponent: empty alpha grid");
    ScExponentResult r;
    bool have = false;
    for (double a : alpha_grid) {
        const BoundReport b = rains_info_channel(n, Alpha::of(a), opts);
        r.grid.emplace_back(a, b.value);
        const double term = ((a - 1.0) / a) * (rate - b.value);
        if (!have || term > r.exponent) {
            r.exponent = term;
            r.best_alpha = a;
            have = true;
        }
    }
    return r;
}

HierarchyReport hierarchy_report(const QuantumChannel& n, const std::vector<double>& alpha_grid,
                                 const RainsInfoOpts& opts, bool include_two_copy,
                                 const AscentOpts& ic_opts) {
    HierarchyReport h;
    h.channel = n.name();
    h.coherent_info = coherent_info_channel(n, ic_opts).value;
    h.rains_info = rains_info_channel(n, Alpha::limit1(), opts).value;
    std::vector<double> grid = alpha_grid;
    std::sort(grid.begin(), grid.end());
    for (double a : grid) h.renyi_grid.emplace_back(a, rains_info_channel(n, Alpha::of(a), opts).value);

    constexpr double kTol = 2e-3;
    h.ic_le_rains = h.coherent_info <= h.rains_info + kTol;
    h.grid_monotone = true;
    double prev = h.rains_info;
    for (const auto& [a, v] : h.renyi_grid) {
        if (v + kTol < prev) h.grid_monotone = false;
        prev = v;
    }
    if (include_two_copy) {
        const QuantumChannel n2 = channel_tensor_power(n, 2);
        h.l_grid = {1, 2};
        h.two_copy_rate = rains_info_channel(n2, Alpha::limit1(), opts).value / 2.0;
        h.inf_l_value = std::min(h.rains_info, *h.two_copy_rate);
    } else {
        h.inf_l_value = h.rains_info;
    }
    h.consistent = h.ic_le_rains && h.grid_monotone;
    return h;
}

}  // namespace qcap
