#include "qcap/ppt_prime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcap {

// ===== Membership =====

PptMembership is_ppt_prime(const Matrix& tau, std::array<int, 2> dims, double tol) {
    PptMembership r;
    const EigenDecomposition e = herm_eig(tau);
    r.min_eig = e.eigenvalues.front();
    r.trace = tau.trace().real();
    r.pt_trace_norm = trace_norm(partial_transpose(tau, dims));
    r.member = r.min_eig >= -tol && r.pt_trace_norm <= 1.0 + tol;
    return r;
}

// ===== Projections =====

std::vector<double> project_l1_ball(const std::vector<double>& lam) {
    double total = 0.0;
    for (double x : lam) total += std::abs(x);
    if (total <= 1.0) return lam;
    std::vector<double> mag(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) mag[i] = std::abs(lam[i]);
    std::vector<double> sorted = mag;
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
    std::vector<double> out(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double m = std::max(mag[i] - theta, 0.0);
        out[i] = lam[i] < 0.0 ? -m : m;
    }
    return out;
}

std::vector<double> project_subsimplex(const std::vector<double>& q) {
    std::vector<double> c(q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        c[i] = std::max(q[i], 0.0);
        s += c[i];
    }
    if (s <= 1.0) return c;
    // Project onto the probability simplex.
    std::vector<double> sorted = q;
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
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = std::max(q[i] - theta, 0.0);
    return out;
}

namespace {

Matrix rebuild(const EigenDecomposition& e, const std::vector<double>& lam) {
    const int d = e.vectors.rows();
    Matrix r(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cx s = 0.0;
            for (int k = 0; k < d; ++k)
                s += e.vectors(i, k) * lam[static_cast<std::size_t>(k)] * std::conj(e.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

Matrix project_psd(const Matrix& y) {
    const EigenDecomposition e = herm_eig(y);
    std::vector<double> lam = e.eigenvalues;
    bool any = false;
    for (double& x : lam)
        if (x < 0.0) {
            x = 0.0;
            any = true;
        }
    if (!any) return y;
    return rebuild(e, lam);
}

Matrix project_pt_ball(const Matrix& y, std::array<int, 2> dims) {
    const Matrix z = partial_transpose(y, dims);
    const EigenDecomposition e = herm_eig(z);
    double total = 0.0;
    for (double x : e.eigenvalues) total += std::abs(x);
    if (total <= 1.0) return y;
    const std::vector<double> lam = project_l1_ball(e.eigenvalues);
    return partial_transpose(rebuild(e, lam), dims);
}

Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) * Cx(0.5, 0.0); }

}  // namespace

ProjectResult project_ppt_prime(const Matrix& x, std::array<int, 2> dims, const ProjectOpts& opts) {
    const int d = dims[0] * dims[1];
    if (!x.square() || x.rows() != d) throw std::invalid_argument("project_ppt_prime: dims mismatch");
    Matrix a = hermitize(x);
    Matrix p(d, d), q(d, d);
    const double scale = std::max(1.0, a.frobenius_norm());

    ProjectResult res;
    for (int it = 0; it < opts.max_iters; ++it) {
        const Matrix y = project_psd(a + p);
        p = a + p - y;
        const Matrix b = project_pt_ball(y + q, dims);
        q = y + q - b;
        const double move = (b - a).frobenius_norm();
        a = b;
        res.iterations = it + 1;
        if (move <= opts.tol * scale) {
            res.converged = true;
            break;
        }
    }
    // Feasibility polish: exact PSD clip, then shrink into the PT ball.  The
    // returned element is a member regardless of how the iteration stopped;
    // the perturbation is bounded by the residual infeasibility.
    a = project_psd(hermitize(a));
    {
        const double ptn = trace_norm(partial_transpose(a, dims));
        if (ptn > 1.0) a = a * Cx(1.0 / ptn, 0.0);
    }
    const PptMembership m = is_ppt_prime(a, dims, 1e-8);
    res.converged = res.converged && m.member;
    res.element.op = std::move(a);
    res.element.dims = dims;
    res.element.min_eig = m.min_eig;
    res.element.pt_trace_norm = m.pt_trace_norm;
    res.element.trace = m.trace;
    return res;
}

// ===== Objective =====

namespace {

// First divided difference of ln at positive (a, b).
double dd_log(double a, double b) {
    if (std::abs(a - b) <= 1e-12 * (a + b)) return 2.0 / (a + b);
    return (std::log(a) - std::log(b)) / (a - b);
}

// First divided difference of x^c at positive (a, b).
double dd_pow(double a, double b, double c) {
    if (std::abs(a - b) <= 1e-12 * (a + b)) return c * std::pow(0.5 * (a + b), c - 1.0);
    return (std::pow(a, c) - std::pow(b, c)) / (a - b);
}

// Divergence evaluated against sigma = (1-mu) tau + mu I/d.  The mixture is a
// member of PPT' whenever tau is, is full rank, and depends smoothly on tau,
// so exact eigenbasis gradients exist everywhere.  A hard spectral floor has
// flat regions and kinks that create spurious stationary points; the mixture
// does not, and the certified final evaluation happens at exactly the element
// the descent optimized.
class MixedObjective {
public:
    MixedObjective(const Matrix& rho, Alpha alpha, double mu)
        : rho_(rho), alpha_(alpha), mu_(std::clamp(mu, 1e-14, 0.5)) {
        const EigenDecomposition e = herm_eig(rho);
        for (double lam : e.eigenvalues)
            if (lam > kSupportEps) t1_ += lam * std::log2(lam);
    }

    Matrix mix(const Matrix& tau) const {
        const int d = tau.rows();
        Matrix s = tau * Cx(1.0 - mu_, 0.0);
        for (int i = 0; i < d; ++i) s(i, i) += mu_ / static_cast<double>(d);
        return s;
    }

    double value(const Matrix& tau) const { return eval(tau, nullptr); }
    double value_grad(const Matrix& tau, Matrix& grad) const { return eval(tau, &grad); }

private:
    double eval(const Matrix& tau, Matrix* grad) const {
        const int d = tau.rows();
        const Matrix sigma = mix(hermitize(tau));
        const EigenDecomposition es = herm_eig(sigma);
        const std::vector<double>& lam = es.eigenvalues;  // all >= mu/d
        const Matrix& v = es.vectors;
        const Matrix rt = hermitize(v.adjoint() * rho_ * v);

        if (alpha_.is_limit1()) {
            double t2 = 0.0;
            for (int i = 0; i < d; ++i) t2 += rt(i, i).real() * std::log2(lam[static_cast<std::size_t>(i)]);
            if (grad != nullptr) {
                // grad = -(1-mu)/ln2 * Dln_sigma[rho]; the Loewner kernel of ln.
                Matrix gt(d, d);
                const double c0 = -(1.0 - mu_) / std::log(2.0);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        gt(i, j) = rt(i, j) * (c0 * dd_log(lam[static_cast<std::size_t>(i)],
                                                          lam[static_cast<std::size_t>(j)]));
                *grad = hermitize(v * gt * v.adjoint());
            }
            return t1_ - t2;
        }

        const double a = alpha_.value();
        const double c = (1.0 - a) / (2.0 * a);
        std::vector<double> lam_c(lam.size());
        for (std::size_t k = 0; k < lam.size(); ++k) lam_c[k] = std::pow(lam[k], c);
        const Matrix w = rebuild(es, lam_c);  // sigma^c
        const Matrix x = hermitize(w * rho_ * w);
        const EigenDecomposition ex = herm_eig(x);
        double s = 0.0;
        for (double m : ex.eigenvalues)
            if (m > 0.0) s += std::pow(m, a);
        s = std::max(s, 1e-300);
        const double val = std::log2(s) / (a - 1.0);
        if (grad != nullptr) {
            // d tr X^a = a tr(X^{a-1} dX) with X = sigma^c rho sigma^c, routed
            // through the Loewner kernel of x^c at sigma.
            std::vector<double> xp(ex.eigenvalues.size());
            for (std::size_t k = 0; k < xp.size(); ++k)
                xp[k] = ex.eigenvalues[k] > 0.0 ? std::pow(ex.eigenvalues[k], a - 1.0) : 0.0;
            const Matrix y = rebuild(ex, xp);
            const Matrix m1 = rho_ * w * y;
            const Matrix m = (m1 + m1.adjoint()) * Cx(a, 0.0);
            const Matrix mt = v.adjoint() * m * v;
            Matrix gt(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    gt(i, j) = mt(i, j) * dd_pow(lam[static_cast<std::size_t>(i)],
                                                 lam[static_cast<std::size_t>(j)], c);
            const double c1 = (1.0 - mu_) / (s * (a - 1.0) * std::log(2.0));
            *grad = hermitize(v * gt * v.adjoint()) * Cx(c1, 0.0);
        }
        return val;
    }

    const Matrix& rho_;
    Alpha alpha_;
    double mu_;
    double t1_ = 0.0;
};

struct DescentOutcome {
    Matrix tau;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

DescentOutcome projected_descent(const MixedObjective& f, Matrix tau0, std::array<int, 2> dims,
                                 const RainsOpts& opts) {
    // Line-search candidates only need loose feasibility; the caller
    // re-projects the winner strictly before certification.
    ProjectOpts popts;
    popts.max_iters = 400;
    popts.tol = 1e-9;

    DescentOutcome out;
    out.tau = std::move(tau0);
    out.objective = f.value(out.tau);

    Matrix g;
    double step0 = 0.25;
    for (int it = 0; it < opts.max_iters; ++it) {
        out.iterations = it + 1;
        f.value_grad(out.tau, g);
        const double gn = g.frobenius_norm();
        if (gn <= 1e-14) {
            out.converged = true;
            out.residual = 0.0;
            break;
        }
        // Scale-free direction: small sigma eigenvalues inflate the gradient
        // and would push every acceptable raw step below search resolution.
        if (gn > 1.0) g = g * Cx(1.0 / gn, 0.0);

        double step = step0;
        bool accepted = false;
        for (int ls = 0; ls < 40 && !accepted; ++ls) {
            const Matrix cand = project_ppt_prime(out.tau - g * Cx(step, 0.0), dims, popts).element.op;
            const double fc = f.value(cand);
            if (fc < out.objective) {
                out.residual = (out.objective - fc) / std::max(1.0, std::abs(fc));
                out.tau = cand;
                out.objective = fc;
                step0 = std::min(0.25, 2.0 * step);
                accepted = true;
            } else {
                step *= 0.5;
            }
        }
        if (!accepted) {
            if (step0 < 0.25) {
                // The adaptive window may have shrunk past the useful range;
                // re-open it once before declaring stationarity.
                step0 = 0.25;
                continue;
            }
            out.converged = true;
            out.residual = 0.0;
            break;
        }
        if (out.residual < opts.tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace

RainsStateResult rains_rel_entropy(const Matrix& rho, std::array<int, 2> dims, const RainsOpts& opts) {
    const int d = dims[0] * dims[1];
    if (!rho.square() || rho.rows() != d) throw std::invalid_argument("rains_rel_entropy: dims mismatch");
    require_hermitian(rho, 1e-9);

    const MixedObjective f(rho, opts.alpha, opts.eps_floor);
    ProjectOpts popts;
    popts.max_iters = 400;
    popts.tol = 1e-9;

    std::vector<Matrix> starts;
    if (opts.warm_start != nullptr) {
        starts.push_back(project_ppt_prime(*opts.warm_start, dims, popts).element.op);
    } else {
        starts.push_back(project_ppt_prime(rho, dims, popts).element.op);
        Rng rng = Rng(opts.seed).fork(0x52414E53ull);  // stream tag for restart draws
        for (int r = 0; r < opts.random_restarts; ++r) {
            Rng rr = rng.fork(static_cast<std::uint64_t>(r));
            starts.push_back(project_ppt_prime(random_density(rr, d), dims, popts).element.op);
        }
    }

    DescentOutcome best;
    bool have = false;
    int total_iters = 0;
    for (const Matrix& s : starts) {
        DescentOutcome o = projected_descent(f, s, dims, opts);
        total_iters += o.iterations;
        if (!have || o.objective < best.objective) {
            best = std::move(o);
            have = true;
        }
    }

    // Strict projection, then the full-rank safeguard mixture: the returned
    // element is a certified member and the reported value is the plain
    // divergence evaluated at exactly that element.
    best.tau = f.mix(project_ppt_prime(best.tau, dims, ProjectOpts{}).element.op);

    RainsStateResult r;
    r.tau = best.tau;
    r.dims = dims;
    r.iterations = total_iters;
    r.converged = best.converged;
    r.residual = best.residual;
    const DivergenceValue v = sandwiched_renyi(rho, best.tau, opts.alpha);
    r.value = v.bits;
    r.value_infinite = v.is_infinite;
    return r;
}

// ===== Aligned (correlated-basis diagonal) variant =====

namespace {

// Same objective restricted to diagonals of the correlated block, with the
// same full-rank mixture qhat = (1-mu) q + mu/d and exact gradients.
double aligned_value_grad(const Matrix& m, const std::vector<double>& q, Alpha alpha, double mu,
                          double t1, std::vector<double>* grad) {
    const int d = m.rows();
    std::vector<double> qh(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        qh[i] = (1.0 - mu) * q[i] + mu / static_cast<double>(d);

    if (alpha.is_limit1()) {
        double t2 = 0.0;
        for (int x = 0; x < d; ++x)
            t2 += m(x, x).real() * std::log2(qh[static_cast<std::size_t>(x)]);
        if (grad != nullptr)
            for (int x = 0; x < d; ++x)
                (*grad)[static_cast<std::size_t>(x)] =
                    -(1.0 - mu) * m(x, x).real() / (qh[static_cast<std::size_t>(x)] * std::log(2.0));
        return t1 - t2;
    }

    const double a = alpha.value();
    const double c = (1.0 - a) / (2.0 * a);
    Matrix xm(d, d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            xm(x, y) = std::pow(qh[static_cast<std::size_t>(x)], c) * m(x, y) *
                       std::pow(qh[static_cast<std::size_t>(y)], c);
    const EigenDecomposition e = herm_eig(hermitize(xm));
    double s = 0.0;
    for (double ev : e.eigenvalues)
        if (ev > 0.0) s += std::pow(ev, a);
    s = std::max(s, 1e-300);
    const double val = std::log2(s) / (a - 1.0);
    if (grad != nullptr) {
        std::vector<double> xp(e.eigenvalues.size());
        for (std::size_t k = 0; k < xp.size(); ++k)
            xp[k] = e.eigenvalues[k] > 0.0 ? std::pow(e.eigenvalues[k], a - 1.0) : 0.0;
        const Matrix y = rebuild(e, xp);  // X^{a-1}
        Matrix qcm(d, d);
        for (int z = 0; z < d; ++z)
            for (int w = 0; w < d; ++w) qcm(z, w) = std::pow(qh[static_cast<std::size_t>(z)], c) * m(z, w);
        const Matrix t = y * qcm;
        const double c1 = (1.0 - mu) * a * c / (s * (a - 1.0) * std::log(2.0));
        for (int x = 0; x < d; ++x)
            (*grad)[static_cast<std::size_t>(x)] =
                c1 * std::pow(qh[static_cast<std::size_t>(x)], c - 1.0) * 2.0 * t(x, x).real();
    }
    return val;
}

}  // namespace

AlignedRainsResult rains_rel_entropy_aligned(const Matrix& corr_block, const RainsOpts& opts) {
    require_hermitian(corr_block, 1e-9);
    const int d = corr_block.rows();
    const double mu = std::clamp(opts.eps_floor, 1e-14, 0.5);
    double t1 = 0.0;
    {
        const EigenDecomposition e = herm_eig(corr_block);
        for (double lam : e.eigenvalues)
            if (lam > kSupportEps) t1 += lam * std::log2(lam);
    }

    // Start at q = diag(M) (the input distribution), the exact optimum at
    // limit-1; add a uniform start for robustness.
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> q0(static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x) q0[static_cast<std::size_t>(x)] = std::max(corr_block(x, x).real(), 0.0);
        starts.push_back(project_subsimplex(q0));
        starts.push_back(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
    }

    AlignedRainsResult best;
    bool have = false;
    int total_iters = 0;
    for (const auto& start : starts) {
        std::vector<double> q = start;
        double cur = aligned_value_grad(corr_block, q, opts.alpha, mu, t1, nullptr);
        bool converged = false;
        double residual = 0.0;
        int iters = 0;
        double step0 = 0.25;
        std::vector<double> grad(static_cast<std::size_t>(d));
        for (int it = 0; it < opts.max_iters; ++it) {
            iters = it + 1;
            aligned_value_grad(corr_block, q, opts.alpha, mu, t1, &grad);
            double gn = 0.0;
            for (double gv : grad) gn += gv * gv;
            gn = std::sqrt(gn);
            if (gn <= 1e-14) {
                converged = true;
                residual = 0.0;
                break;
            }
            const double scale = gn > 1.0 ? 1.0 / gn : 1.0;
            double step = step0;
            bool accepted = false;
            for (int ls = 0; ls < 40 && !accepted; ++ls) {
                std::vector<double> cand(static_cast<std::size_t>(d));
                for (int x = 0; x < d; ++x)
                    cand[static_cast<std::size_t>(x)] =
                        q[static_cast<std::size_t>(x)] - step * scale * grad[static_cast<std::size_t>(x)];
                cand = project_subsimplex(cand);
                const double fc = aligned_value_grad(corr_block, cand, opts.alpha, mu, t1, nullptr);
                if (fc < cur) {
                    residual = (cur - fc) / std::max(1.0, std::abs(fc));
                    q = std::move(cand);
                    cur = fc;
                    step0 = std::min(0.25, 2.0 * step);
                    accepted = true;
                } else {
                    step *= 0.5;
                }
            }
            if (!accepted) {
                if (step0 < 0.25) {
                    step0 = 0.25;
                    continue;
                }
                converged = true;
                residual = 0.0;
                break;
            }
            if (residual < opts.tol) {
                converged = true;
                break;
            }
        }
        total_iters += iters;
        if (!have || cur < best.value) {
            best.value = cur;  // provisional: replaced by the certified evaluation
            best.q = q;
            best.converged = converged;
            best.residual = residual;
            have = true;
        }
    }
    best.iterations = total_iters;

    // Return the safeguard mixture itself so the certificate matches the
    // reported value exactly; evaluate with the plain divergence.
    for (std::size_t i = 0; i < best.q.size(); ++i)
        best.q[i] = (1.0 - mu) * best.q[i] + mu / static_cast<double>(d);
    Matrix sigma(d, d);
    for (int x = 0; x < d; ++x) sigma(x, x) = best.q[static_cast<std::size_t>(x)];
    const DivergenceValue v = sandwiched_renyi(corr_block, sigma, opts.alpha);
    best.value = v.bits;
    best.value_infinite = v.is_infinite;
    return best;
}

PptPrimeElement embed_aligned_tau(const std::vector<double>& q) {
    const int d = static_cast<int>(q.size());
    Matrix tau(d * d, d * d);
    for (int x = 0; x < d; ++x) tau(x * d + x, x * d + x) = q[static_cast<std::size_t>(x)];
    PptPrimeElement e;
    e.dims = {d, d};
    double s = 0.0, mn = 0.0;
    for (double v : q) {
        s += v;
        mn = std::min(mn, v);
    }
    e.op = std::move(tau);
    e.min_eig = mn;
    e.pt_trace_norm = s;  // PT-invariant diagonal
    e.trace = s;
    return e;
}

double max_entangled_overlap(const Matrix& tau, std::array<int, 2> dims, int m) {
    if (m <= 0 || m > std::min(dims[0], dims[1]))
        throw std::invalid_argument("max_entangled_overlap: m incompatible with dims");
    if (!tau.square() || tau.rows() != dims[0] * dims[1])
        throw std::invalid_argument("max_entangled_overlap: dims mismatch");
    Cx s = 0.0;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) s += tau(x * dims[1] + x, y * dims[1] + y);
    return s.real() / static_cast<double>(m);
}

}  // namespace qcap
