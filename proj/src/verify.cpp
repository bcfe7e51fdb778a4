#include "qcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qcap/channel_bounds.hpp"
#include "qcap/eg_codes.hpp"
#include "qcap/io_json.hpp"
#include "qcap/ppt_prime.hpp"
#include "qcap/zoo.hpp"

namespace qcap {

namespace {

struct Check {
    CheckResult r;
    explicit Check(std::string name) { r.name = std::move(name); }

    void sample(double violation, const std::function<json()>& cx = nullptr) {
        ++r.samples;
        if (violation > 0.0) {
            ++r.violations;
            if (violation > r.max_violation) {
                r.max_violation = violation;
                if (cx) r.counterexample = cx();
            }
        }
    }

    CheckResult done() {
        r.pass = r.violations == 0;
        return r;
    }
};

int pick(int override_n, int def) { return override_n > 0 ? override_n : def; }

double min_eigenvalue(const Matrix& m) { return herm_eig(m).eigenvalues.front(); }

json sample_cx(int i, double residual) {
    json c;
    c["sample"] = i;
    c["residual"] = residual;
    return c;
}

std::vector<QuantumChannel> channel_pool() {
    std::vector<QuantumChannel> pool;
    pool.push_back(make_qubit_dephasing(0.3));
    pool.push_back(make_erasure(2, 0.25));
    pool.push_back(make_depolarizing(2, 0.2));
    pool.push_back(make_generalized_dephasing_symmetric(3, 0.5));
    pool.push_back(make_identity(3));
    return pool;
}

// ===== linalg =====

SuiteReport suite_linalg(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "linalg";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x4C41ull);
    const int dims_cycle[] = {2, 3, 4, 6, 8, 12, 16};

    {
        Check rec("herm-eig-reconstruction");
        Check orth("herm-eig-orthonormality");
        const int n = pick(cfg.samples, 100);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const int d = dims_cycle[i % 7];
            const Matrix m = random_hermitian(rng, d);
            const EigenDecomposition e = herm_eig(m);
            Matrix lam(d, d);
            for (int k = 0; k < d; ++k) lam(k, k) = e.eigenvalues[static_cast<std::size_t>(k)];
            const double scale = std::max(1.0, m.frobenius_norm());
            const double resid = (e.vectors * lam * e.vectors.adjoint() - m).frobenius_norm();
            rec.sample(resid - 1e-9 * scale, [&] { return sample_cx(i, resid); });
            const double oresid = (e.vectors.adjoint() * e.vectors - Matrix::identity(d)).frobenius_norm();
            orth.sample(oresid - 1e-9, [&] { return sample_cx(i, oresid); });
        }
        rep.checks.push_back(rec.done());
        rep.checks.push_back(orth.done());
    }
    {
        Check c("trace-norm-vs-trace");
        const int n = pick(cfg.samples, 60);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const int d = dims_cycle[i % 7];
            double v;
            if (i % 2 == 0) {
                const Matrix m = random_hermitian(rng, d);
                v = std::abs(m.trace()) - trace_norm(m) - 1e-10;
            } else {
                const Matrix m = random_psd(rng, d);
                v = std::abs(trace_norm(m) - m.trace().real()) -
                    1e-9 * std::max(1.0, m.trace().real());
            }
            c.sample(v, [&] { return sample_cx(i, v); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check tr("partial-transpose-trace");
        Check fro("partial-transpose-frobenius");
        Check inv("partial-transpose-involution");
        const std::array<int, 2> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3}};
        const int n = pick(cfg.samples, 60);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(2000 + static_cast<std::uint64_t>(i));
            const std::array<int, 2> dd = shapes[i % 6];
            const Matrix m = random_hermitian(rng, dd[0] * dd[1]);
            const Matrix pt = partial_transpose(m, dd);
            tr.sample(std::abs(pt.trace() - m.trace()) - 1e-12,
                      [&] { return sample_cx(i, std::abs(pt.trace() - m.trace())); });
            const double fd = std::abs(pt.frobenius_norm() - m.frobenius_norm());
            fro.sample(fd - 1e-12 * std::max(1.0, m.frobenius_norm()),
                       [&] { return sample_cx(i, fd); });
            const double idf = (partial_transpose(pt, dd) - m).max_abs();
            inv.sample(idf, [&] {
                json c = sample_cx(i, idf);
                c["matrix"] = to_json(m);
                return c;
            });
        }
        rep.checks.push_back(tr.done());
        rep.checks.push_back(fro.done());
        rep.checks.push_back(inv.done());
    }
    {
        Check ident("mat-func-identity");
        Check sq("mat-func-sqrt-composition");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(3000 + static_cast<std::uint64_t>(i));
            const int d = dims_cycle[i % 7];
            const Matrix h = random_hermitian(rng, d);
            const double idr = (mat_func(h, [](double x) { return x; }, false) - h).max_abs();
            ident.sample(idr - 1e-10 * std::max(1.0, h.max_abs()), [&] { return sample_cx(i, idr); });
            const Matrix p = random_psd(rng, d);
            const Matrix s = mat_func(p, [](double x) { return std::sqrt(std::max(x, 0.0)); }, false);
            const double sqr = (s * s - p).frobenius_norm();
            sq.sample(sqr - 1e-8 * std::max(1.0, p.frobenius_norm()), [&] { return sample_cx(i, sqr); });
        }
        rep.checks.push_back(ident.done());
        rep.checks.push_back(sq.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== quantum =====

SuiteReport suite_quantum(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "quantum";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x5155ull);
    const std::vector<QuantumChannel> pool = channel_pool();

    {
        Check c("apply-channel-trace-positivity");
        const int n = pick(cfg.samples, 60);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const QuantumChannel& ch = pool[static_cast<std::size_t>(i) % pool.size()];
            const Matrix rho = random_density(rng, ch.d_in());
            const Matrix out = ch.apply_matrix(rho);
            const double tdef = std::abs(out.trace() - Cx(1.0, 0.0));
            const double nege = -min_eigenvalue(out);
            const double v = std::max(tdef - 1e-9, nege - 1e-9);
            c.sample(v, [&] {
                json cx = sample_cx(i, v);
                cx["channel"] = ch.name();
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("fidelity-unitary-invariance");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 3;
            const Matrix rho = random_density(rng, d);
            const Matrix sig = random_density(rng, d);
            const Matrix u = random_unitary(rng, d);
            const double f1 = fidelity(rho, sig);
            const double f2 = fidelity(u * rho * u.adjoint(), u * sig * u.adjoint());
            c.sample(std::abs(f1 - f2) - 1e-9, [&] { return sample_cx(i, std::abs(f1 - f2)); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("choi-consistency");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(2000 + static_cast<std::uint64_t>(i));
            const QuantumChannel& ch = pool[static_cast<std::size_t>(i) % pool.size()];
            const Matrix rho = random_density(rng, ch.d_in());
            const double dmax = (ch.apply_matrix(rho) - ch.apply_via_choi(rho)).max_abs();
            c.sample(dmax - 1e-9, [&] {
                json cx = sample_cx(i, dmax);
                cx["channel"] = ch.name();
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("purification-roundtrip");
        const int n = pick(cfg.samples, 30);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(3000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 3;
            const DensityOperator rho(random_density(rng, d), {d});
            const PureState phi = purify(rho);
            const Matrix back = partial_trace(phi.projector(), {d, d}, 1);
            const double resid = (back - rho.op).frobenius_norm();
            c.sample(resid - 1e-8, [&] { return sample_cx(i, resid); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("max-entangled-marginal");
        for (int d = 2; d <= 4; ++d) {
            const Matrix marg = partial_trace(max_entangled(d).projector(), {d, d}, 0);
            const double resid = (marg - Matrix::identity(d) * Cx(1.0 / d, 0.0)).max_abs();
            c.sample(resid - 1e-12, [&] { return sample_cx(d, resid); });
        }
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== divergences =====

SuiteReport suite_divergences(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "divergences";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x4456ull);
    const Alpha alphas[] = {Alpha::limit1(), Alpha::of(1.5), Alpha::of(2.0)};

    {
        Check c("unitary-invariance");
        const int n = pick(cfg.samples, 50);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const int d = 2 + i % 3;
            const Matrix rho = random_density(rng, d);
            const Matrix sig = random_density(rng, d);
            const Matrix u = random_unitary(rng, d);
            for (const Alpha& a : alphas) {
                const DivergenceValue d1 = sandwiched_renyi(rho, sig, a);
                const DivergenceValue d2 =
                    sandwiched_renyi(u * rho * u.adjoint(), u * sig * u.adjoint(), a);
                if (d1.is_infinite || d2.is_infinite) {
                    c.sample(d1.is_infinite == d2.is_infinite ? 0.0 : 1.0);
                    continue;
                }
                const double diff = std::abs(d1.bits - d2.bits);
                c.sample(diff - 1e-8 * std::max(1.0, std::abs(d1.bits)), [&] {
                    json cx = sample_cx(i, diff);
                    cx["alpha"] = a.str();
                    return cx;
                });
            }
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("tensor-with-state-invariance");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 2;
            const Matrix rho = random_density(rng, d);
            const Matrix sig = random_density(rng, d);
            const Matrix omega = random_density(rng, 2);
            for (const Alpha& a : alphas) {
                const DivergenceValue d1 = sandwiched_renyi(rho, sig, a);
                const DivergenceValue d2 = sandwiched_renyi(kron(rho, omega), kron(sig, omega), a);
                if (d1.is_infinite || d2.is_infinite) {
                    c.sample(d1.is_infinite == d2.is_infinite ? 0.0 : 1.0);
                    continue;
                }
                const double diff = std::abs(d1.bits - d2.bits);
                c.sample(diff - 1e-7, [&] {
                    json cx = sample_cx(i, diff);
                    cx["alpha"] = a.str();
                    return cx;
                });
            }
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("quasi-convexity");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(2000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 2;
            const Matrix r1 = random_density(rng, d);
            const Matrix r2 = random_density(rng, d);
            const Matrix sig = random_density(rng, d);
            const double lam = rng.uniform();
            const Matrix mix = r1 * Cx(lam, 0.0) + r2 * Cx(1.0 - lam, 0.0);
            for (const Alpha& a : alphas) {
                const DivergenceValue dm = sandwiched_renyi(mix, sig, a);
                const DivergenceValue da = sandwiched_renyi(r1, sig, a);
                const DivergenceValue db = sandwiched_renyi(r2, sig, a);
                if (dm.is_infinite || da.is_infinite || db.is_infinite) {
                    c.sample(0.0);
                    continue;
                }
                const double v = dm.bits - std::max(da.bits, db.bits) - 1e-7;
                c.sample(v, [&] {
                    json cx = sample_cx(i, v);
                    cx["alpha"] = a.str();
                    cx["lambda"] = lam;
                    return cx;
                });
            }
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("entropy-range");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(3000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 3;
            const Matrix rho = random_density(rng, d);
            const double h = vn_entropy(rho);
            const double v = std::max(-h - 1e-10, h - std::log2(static_cast<double>(d)) - 1e-10);
            c.sample(v, [&] { return sample_cx(i, h); });
        }
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== dpi =====

SuiteReport suite_dpi(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "dpi";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x4450ull);
    const std::vector<QuantumChannel> pool = channel_pool();
    const Alpha alphas[] = {Alpha::limit1(), Alpha::of(1.5), Alpha::of(2.0)};

    Check c("data-processing");
    const int n = pick(cfg.samples, 60);
    for (int i = 0; i < n; ++i) {
        Rng rng = root.fork(static_cast<std::uint64_t>(i));
        const QuantumChannel& ch = pool[static_cast<std::size_t>(i) % pool.size()];
        const Matrix rho = random_density(rng, ch.d_in());
        const Matrix sig = random_density(rng, ch.d_in());
        const Matrix nrho = ch.apply_matrix(rho);
        const Matrix nsig = ch.apply_matrix(sig);
        for (const Alpha& a : alphas) {
            const DivergenceValue before = sandwiched_renyi(rho, sig, a);
            const DivergenceValue after = sandwiched_renyi(nrho, nsig, a);
            if (before.is_infinite) {
                c.sample(0.0);
                continue;
            }
            const double v = after.is_infinite ? 1.0 : after.bits - before.bits - 1e-7;
            c.sample(v, [&] {
                json cx = sample_cx(i, v);
                cx["channel"] = ch.name();
                cx["alpha"] = a.str();
                cx["before_bits"] = before.bits;
                cx["after_bits"] = after.is_infinite ? -1.0 : after.bits;
                return cx;
            });
        }
    }
    rep.checks.push_back(c.done());
    rep.pass = rep.checks.front().pass;
    return rep;
}

// ===== alpha-mono =====

SuiteReport suite_alpha_mono(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "alpha-mono";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x414Dull);
    const Alpha grid[] = {Alpha::limit1(), Alpha::of(1.1), Alpha::of(1.5),
                          Alpha::of(2.0),  Alpha::of(3.0), Alpha::of(4.0)};

    Check c("alpha-monotonicity");
    const int n = pick(cfg.samples, 60);
    for (int i = 0; i < n; ++i) {
        Rng rng = root.fork(static_cast<std::uint64_t>(i));
        const int d = 2 + i % 3;
        const Matrix rho = random_density(rng, d);
        const Matrix sig = random_density(rng, d);
        double prev = 0.0;
        bool have = false;
        for (const Alpha& a : grid) {
            const DivergenceValue dv = sandwiched_renyi(rho, sig, a);
            if (dv.is_infinite) {
                have = false;
                continue;
            }
            if (have) {
                const double v = prev - dv.bits - 1e-7;
                c.sample(v, [&] {
                    json cx = sample_cx(i, v);
                    cx["alpha"] = a.str();
                    cx["previous_bits"] = prev;
                    cx["current_bits"] = dv.bits;
                    return cx;
                });
            }
            prev = dv.bits;
            have = true;
        }
    }
    rep.checks.push_back(c.done());
    rep.pass = rep.checks.front().pass;
    return rep;
}

// ===== overlap-cap =====

SuiteReport suite_overlap_cap(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "overlap-cap";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x4C31ull);

    Check mem("projection-membership");
    Check ovl("max-entangled-overlap");
    const int n = pick(cfg.samples, 60);
    for (int i = 0; i < n; ++i) {
        Rng rng = root.fork(static_cast<std::uint64_t>(i));
        Matrix seed_m;
        if (i % 3 == 0)
            seed_m = random_hermitian(rng, 4) * Cx(0.5, 0.0);
        else if (i % 3 == 1)
            seed_m = random_psd(rng, 4) * Cx(1.5 / 4.0, 0.0);
        else
            seed_m = random_density(rng, 4) * Cx(0.7, 0.0);
        const ProjectResult pr = project_ppt_prime(seed_m, {2, 2});
        const PptMembership ms = is_ppt_prime(pr.element.op, {2, 2});
        mem.sample(ms.member ? 0.0 : 1.0, [&] {
            json cx = sample_cx(i, ms.pt_trace_norm - 1.0);
            cx["min_eig"] = ms.min_eig;
            cx["pt_trace_norm"] = ms.pt_trace_norm;
            return cx;
        });
        const double overlap = max_entangled_overlap(pr.element.op, {2, 2}, 2);
        ovl.sample(overlap - 0.5 - 1e-8, [&] {
            json cx = sample_cx(i, overlap);
            cx["tau"] = to_json(pr.element.op);
            return cx;
        });
    }
    rep.checks.push_back(mem.done());
    rep.checks.push_back(ovl.done());
    rep.pass = rep.checks[0].pass && rep.checks[1].pass;
    return rep;
}

// ===== rains =====

SuiteReport suite_rains(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "rains";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x5253ull);

    {
        Check c("dykstra-idempotence");
        const int n = pick(cfg.samples, 30);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const Matrix seed_m = random_hermitian(rng, 4) * Cx(0.6, 0.0);
            const Matrix tau = project_ppt_prime(seed_m, {2, 2}).element.op;
            const Matrix tau2 = project_ppt_prime(tau, {2, 2}).element.op;
            const double moved = (tau2 - tau).frobenius_norm();
            c.sample(moved - 1e-7, [&] { return sample_cx(i, moved); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("local-unitary-invariance");
        const int n = pick(cfg.samples, 2);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const Matrix rho = random_density(rng, 4);
            const Matrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
            RainsOpts o;
            o.random_restarts = 1;
            o.max_iters = 2500;
            o.seed = cfg.seed;
            const RainsStateResult r1 = rains_rel_entropy(rho, {2, 2}, o);
            const RainsStateResult r2 = rains_rel_entropy(u * rho * u.adjoint(), {2, 2}, o);
            const double diff = std::abs(r1.value - r2.value);
            c.sample(diff - 2e-3, [&] { return sample_cx(i, diff); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("subadditivity-product");
        const int n = pick(cfg.samples, 1);
        for (int i = 0; i < std::min(n, 2); ++i) {
            Rng rng = root.fork(2000 + static_cast<std::uint64_t>(i));
            const Matrix rho = random_density(rng, 4);
            const Matrix sig = random_density(rng, 4);
            RainsOpts o;
            o.random_restarts = 1;
            o.max_iters = 2500;
            o.seed = cfg.seed;
            const RainsStateResult r1 = rains_rel_entropy(rho, {2, 2}, o);
            const RainsStateResult r2 = rains_rel_entropy(sig, {2, 2}, o);
            const std::vector<int> dims4 = {2, 2, 2, 2};
            const std::vector<int> perm = {0, 2, 1, 3};
            const Matrix big = permute_systems(kron(rho, sig), dims4, perm);
            const Matrix warm = permute_systems(kron(r1.tau, r2.tau), dims4, perm);
            RainsOpts wo;
            wo.warm_start = &warm;
            wo.max_iters = 30;
            wo.tol = 1e-6;
            wo.seed = cfg.seed;
            const RainsStateResult rb = rains_rel_entropy(big, {4, 4}, wo);
            const double v = rb.value - (r1.value + r2.value) - 2e-3;
            c.sample(v, [&] {
                json cx = sample_cx(i, v);
                cx["left_bits"] = r1.value;
                cx["right_bits"] = r2.value;
                cx["joint_bits"] = rb.value;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== zoo =====

SuiteReport suite_zoo(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "zoo";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x5A4Full);

    {
        Check c("dephasing-covariance");
        std::vector<QuantumChannel> chans;
        chans.push_back(make_qubit_dephasing(0.3));
        chans.push_back(make_generalized_dephasing_symmetric(3, 0.5));
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const QuantumChannel& ch = chans[static_cast<std::size_t>(i) % chans.size()];
            const int d = ch.d_in();
            const int z = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
            const Matrix zu = clock_unitary(d, z);
            const Matrix rho = random_density(rng, d);
            const double diff =
                (ch.apply_matrix(zu * rho * zu.adjoint()) - zu * ch.apply_matrix(rho) * zu.adjoint())
                    .max_abs();
            c.sample(diff - 1e-10, [&] {
                json cx = sample_cx(i, diff);
                cx["channel"] = ch.name();
                cx["power"] = z;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("clock-twirl-dephases");
        const int n = pick(cfg.samples, 30);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 3;
            const Matrix rho = random_density(rng, d);
            Matrix avg(d, d);
            for (int z = 0; z < d; ++z) {
                const Matrix zu = clock_unitary(d, z);
                avg += zu * rho * zu.adjoint();
            }
            avg *= Cx(1.0 / d, 0.0);
            Matrix diag(d, d);
            for (int x = 0; x < d; ++x) diag(x, x) = rho(x, x);
            const double diff = (avg - diag).max_abs();
            c.sample(diff - 1e-12, [&] { return sample_cx(i, diff); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("erasure-covariance");
        const int n = pick(cfg.samples, 30);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(2000 + static_cast<std::uint64_t>(i));
            const QuantumChannel ch = make_erasure(2, i % 2 == 0 ? 0.25 : 0.5);
            const Matrix u = random_unitary(rng, 2);
            const Matrix lifted = ch.output_unitary(u);
            const Matrix rho = random_density(rng, 2);
            const double diff =
                (ch.apply_matrix(u * rho * u.adjoint()) - lifted * ch.apply_matrix(rho) * lifted.adjoint())
                    .max_abs();
            c.sample(diff - 1e-10, [&] { return sample_cx(i, diff); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("depolarizing-map-form");
        const int n = pick(cfg.samples, 30);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(3000 + static_cast<std::uint64_t>(i));
            const int d = 2 + i % 2;
            const double q = 0.1 + 0.2 * (i % 3);
            const QuantumChannel ch = make_depolarizing(d, q);
            const Matrix rho = random_density(rng, d);
            const Matrix expect =
                rho * Cx(1.0 - q, 0.0) + Matrix::identity(d) * Cx(q / d, 0.0);
            const double diff = (ch.apply_matrix(rho) - expect).max_abs();
            c.sample(diff - 1e-10, [&] {
                json cx = sample_cx(i, diff);
                cx["d"] = d;
                cx["q"] = q;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("gen-dephasing-gram");
        const double cs[] = {0.2, 0.5, 0.8};
        for (int i = 0; i < 3; ++i) {
            const QuantumChannel ch = make_generalized_dephasing_symmetric(3, cs[i]);
            const Matrix g = dephasing_gram(ch);
            double worst = 0.0;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    const double want = x == y ? 1.0 : cs[i];
                    worst = std::max(worst, std::abs(g(x, y) - Cx(want, 0.0)));
                }
            c.sample(worst - 1e-9, [&] {
                json cx = sample_cx(i, worst);
                cx["c"] = cs[i];
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== bounds =====

SuiteReport suite_bounds(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "bounds";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x424Full);

    RainsInfoOpts lite;
    lite.inner.random_restarts = 1;
    lite.ascent.seed = cfg.seed;
    lite.inner.seed = cfg.seed;
    lite.probe_inner.seed = cfg.seed;

    {
        Check c("fidelity-bound-monotone");
        const int n = pick(cfg.samples, 120);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const double alpha = 1.2 + 2.0 * rng.uniform();
            const double log_m = 4.0 * rng.uniform();
            const double renyi = 2.0 * rng.uniform();
            const double step = 0.01 + rng.uniform();
            const double b0 = fidelity_upper_bound(log_m, renyi, alpha);
            const double v = std::max(
                fidelity_upper_bound(log_m + step, renyi, alpha) - b0 - 1e-12,
                b0 - fidelity_upper_bound(log_m, renyi + step, alpha) - 1e-12);
            c.sample(v, [&] { return sample_cx(i, v); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("sc-exponent-rate-monotone");
        const QuantumChannel deph = make_qubit_dephasing(0.3);
        const std::vector<double> grid = {1.5, 2.0};
        double prev = -1e300;
        for (double rate : {0.6, 1.2, 1.8}) {
            const ScExponentResult e = sc_exponent(rate, deph, grid, lite);
            const double v = prev - e.exponent - 1e-9;
            c.sample(v, [&] {
                json cx;
                cx["rate"] = rate;
                cx["exponent"] = e.exponent;
                cx["previous"] = prev;
                return cx;
            });
            prev = e.exponent;
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("argmax-covariant-restriction");
        const QuantumChannel deph = make_qubit_dephasing(0.3);
        const double aligned_opt = rains_info_channel(deph, Alpha::limit1(), lite).value;
        const int n = pick(cfg.samples, 50);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const std::vector<Cx> psi = random_pure(rng, 4);
            const Matrix rho_rb = apply_on_subsystem(deph, outer(psi, psi), {2, 2}, 1);
            RainsOpts o;
            o.random_restarts = 1;
            o.max_iters = 2000;
            o.seed = cfg.seed;
            const RainsStateResult r = rains_rel_entropy(rho_rb, {2, 2}, o);
            const double v = r.value - aligned_opt - 2e-3;
            c.sample(v, [&] {
                json cx = sample_cx(i, v);
                cx["state_bits"] = r.value;
                cx["aligned_optimum"] = aligned_opt;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("zoo-grid-hierarchy");
        AscentOpts ic_opts;
        ic_opts.restarts = 4;
        ic_opts.max_iters = 200;
        ic_opts.seed = cfg.seed;
        std::vector<QuantumChannel> chans;
        chans.push_back(make_identity(2));
        chans.push_back(make_qubit_dephasing(0.3));
        chans.push_back(make_generalized_dephasing_symmetric(3, 0.5));
        chans.push_back(make_erasure(2, 0.25));
        chans.push_back(make_depolarizing(2, 0.2));
        for (const QuantumChannel& ch : chans) {
            std::vector<std::pair<std::string, double>> chain;
            chain.emplace_back("coherent_info", coherent_info_channel(ch, ic_opts).value);
            chain.emplace_back("rains", rains_info_channel(ch, Alpha::limit1(), lite).value);
            for (double a : {1.5, 2.0, 4.0})
                chain.emplace_back("renyi-" + std::to_string(a),
                                   rains_info_channel(ch, Alpha::of(a), lite).value);
            for (std::size_t k = 1; k < chain.size(); ++k) {
                const double v = chain[k - 1].second - chain[k].second - 2e-3;
                c.sample(v, [&] {
                    json cx;
                    cx["channel"] = ch.name();
                    cx["lower"] = chain[k - 1].first;
                    cx["upper"] = chain[k].first;
                    cx["lower_bits"] = chain[k - 1].second;
                    cx["upper_bits"] = chain[k].second;
                    return cx;
                });
            }
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("certificate-revalidation");
        const BoundReport r =
            rains_info_channel(make_qubit_dephasing(0.3), Alpha::limit1(), lite);
        double norm2 = 0.0;
        if (r.input_state)
            for (const Cx& a : r.input_state->amplitudes) norm2 += std::norm(a);
        const bool tau_ok = r.tau && is_ppt_prime(r.tau->op, r.tau->dims).member;
        const bool state_ok = r.input_state && std::abs(std::sqrt(norm2) - 1.0) <= 1e-10;
        c.sample(tau_ok && state_ok ? 0.0 : 1.0, [&] {
            json cx;
            cx["tau_member"] = tau_ok;
            cx["input_unit_norm"] = state_ok;
            return cx;
        });
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

// ===== codes =====

SuiteReport suite_codes(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.suite = "codes";
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    Rng root = Rng(cfg.seed).fork(0x4344ull);

    RainsInfoOpts lite;
    lite.inner.random_restarts = 1;
    lite.ascent.seed = cfg.seed;
    lite.inner.seed = cfg.seed;
    lite.probe_inner.seed = cfg.seed;

    const QuantumChannel deph = make_qubit_dephasing(0.3);
    const QuantumChannel eras = make_erasure(2, 0.25);
    const double alphas[] = {1.5, 2.0};
    double renyi[2][2];  // [channel][alpha]
    for (int a = 0; a < 2; ++a) {
        renyi[0][a] = rains_info_channel(deph, Alpha::of(alphas[a]), lite).value;
        renyi[1][a] = rains_info_channel(eras, Alpha::of(alphas[a]), lite).value;
    }

    {
        Check c("entanglement-test-flag");
        const int n = pick(cfg.samples, 40);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            const int m = 2 + i % 2;
            const DensityOperator omega(random_density(rng, m * m), {m, m});
            const DensityOperator flag = entanglement_test(omega);
            const double trace_defect = std::abs(flag.op.trace() - Cx(1.0, 0.0));
            const double overlap = max_entangled_overlap(omega.op, {m, m}, m);
            const double flag_defect = std::abs(flag.op(1, 1).real() - overlap);
            const double v = std::max(trace_defect - 1e-12, flag_defect - 1e-12);
            c.sample(v, [&] { return sample_cx(i, v); });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("oneshot-bound-corpus");
        const QuantumChannel* chans[] = {&deph, &eras};
        for (int ci = 0; ci < 2; ++ci) {
            const EGCode trivial = make_trivial_code(*chans[ci]);
            const EGCode petz = make_petz_code(*chans[ci]);
            for (int a = 0; a < 2; ++a)
                for (const EGCode* code : {&trivial, &petz}) {
                    const CodePerformance perf =
                        verify_oneshot_bound(*code, *chans[ci], alphas[a], renyi[ci][a]);
                    c.sample(perf.satisfied ? 0.0 : perf.fidelity - perf.bound, [&] {
                        json cx;
                        cx["code"] = code->name;
                        cx["channel"] = chans[ci]->name();
                        cx["alpha"] = alphas[a];
                        cx["fidelity"] = perf.fidelity;
                        cx["bound"] = perf.bound;
                        return cx;
                    });
                }
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("decoder-postprocessing-monotone");
        const EGCode base = make_trivial_code(deph);
        const double bound = fidelity_upper_bound(1.0, renyi[0][1], 2.0);
        const int n = pick(cfg.samples, 10);
        for (int i = 0; i < n; ++i) {
            Rng rng = root.fork(1000 + static_cast<std::uint64_t>(i));
            const double w = rng.uniform();
            const Matrix u1 = random_unitary(rng, 2);
            const Matrix u2 = random_unitary(rng, 2);
            std::vector<Matrix> extra = {u1 * Cx(std::sqrt(w), 0.0), u2 * Cx(std::sqrt(1.0 - w), 0.0)};
            const QuantumChannel post("random-post", std::move(extra));
            const bool on_bob = i % 2 == 0;
            const QuantumChannel& target = on_bob ? base.decoder_bob : base.decoder_alice;
            std::vector<Matrix> composed;
            for (const Matrix& e : post.kraus())
                for (const Matrix& k : target.kraus()) composed.push_back(e * k);
            QuantumChannel decoder("composed", std::move(composed));
            const EGCode mod{base.m, base.encoder_state,
                             on_bob ? base.decoder_alice : decoder,
                             on_bob ? decoder : base.decoder_bob, "postprocessed"};
            const double f = code_fidelity(mod, deph);
            const double v = f - bound - 1e-7;
            c.sample(v, [&] {
                json cx = sample_cx(i, v);
                cx["fidelity"] = f;
                cx["bound"] = bound;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    {
        Check c("trivial-code-closed-forms");
        for (double p : {0.1, 0.4, 0.7}) {
            const QuantumChannel ch = make_erasure(2, p);
            const double f = code_fidelity(make_trivial_code(ch), ch);
            const double v = std::abs(f - (1.0 - 0.75 * p)) - 1e-12;
            c.sample(v, [&] {
                json cx;
                cx["family"] = "erasure";
                cx["p"] = p;
                cx["fidelity"] = f;
                return cx;
            });
        }
        for (double p : {0.1, 0.3, 0.5}) {
            const QuantumChannel ch = make_qubit_dephasing(p);
            const double f = code_fidelity(make_trivial_code(ch), ch);
            const double v = std::abs(f - (1.0 - p)) - 1e-12;
            c.sample(v, [&] {
                json cx;
                cx["family"] = "dephasing";
                cx["p"] = p;
                cx["fidelity"] = f;
                return cx;
            });
        }
        for (int k = 1; k <= 3; ++k) {
            const QuantumChannel idk = channel_tensor_power(make_identity(2), k);
            const double f = code_fidelity(make_rate2_identity_code(k), idk);
            const double v = std::abs(f - std::exp2(-k)) - 1e-12;
            c.sample(v, [&] {
                json cx;
                cx["family"] = "rate2-identity";
                cx["n"] = k;
                cx["fidelity"] = f;
                return cx;
            });
        }
        rep.checks.push_back(c.done());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"linalg", suite_linalg},       {"quantum", suite_quantum},
        {"divergences", suite_divergences}, {"dpi", suite_dpi},
        {"alpha-mono", suite_alpha_mono},   {"overlap-cap", suite_overlap_cap},
        {"rains", suite_rains},         {"zoo", suite_zoo},
        {"bounds", suite_bounds},       {"codes", suite_codes},
    };
    return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(cfg);
    throw std::invalid_argument("run_suite: unknown suite " + name);
}

std::vector<SuiteReport> run_suites(const std::string& name_or_all, const SuiteConfig& cfg) {
    std::vector<SuiteReport> out;
    if (name_or_all == "all") {
        for (const auto& [n, fn] : registry()) out.push_back(fn(cfg));
        return out;
    }
    out.push_back(run_suite(name_or_all, cfg));
    return out;
}

}  // namespace qcap
