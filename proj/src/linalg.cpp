#include "qcap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcap {

// ===== Hermitian eigendecomposition =====

namespace {

double offdiag_norm(const Matrix& w) {
    double s = 0.0;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (i != j) s += std::norm(w(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition herm_eig(const Matrix& m) {
    require_hermitian(m, 1e-10);
    const int d = m.rows();
    // Hermitize exactly so roundoff in the input cannot leak into the sweeps.
    Matrix w(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    Matrix v = Matrix::identity(d);

    const double scale = std::max(w.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps && d > 1; ++sweep) {
        if (offdiag_norm(w) < 1e-13 * scale) break;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const Cx b = w(p, q);
                const double ab = std::abs(b);
                if (ab < 1e-300) continue;
                const double a = w(p, p).real();
                const double c = w(q, q).real();
                // 2x2 block [[a, b], [conj(b), c]]: annihilate with the inner
                // rotation (|theta| <= pi/4).  Outer rotations keep cyclic
                // sweeps shuffling mass around instead of contracting.
                const double tau = (c - a) / (2.0 * ab);
                const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double cr = 1.0 / std::sqrt(1.0 + t * t);
                const double sg = t * cr;
                const Cx phase = b / ab;
                const Cx s = sg * std::conj(phase);
                // G columns (rows p, q): g_p = (cr, s), g_q = (-conj(s), cr).
                const double ap = a * cr * cr + c * sg * sg + 2.0 * ab * sg * cr;
                // W <- G^dagger W G, touching rows/cols p and q only.
                for (int k = 0; k < d; ++k) {
                    const Cx wkp = w(k, p), wkq = w(k, q);
                    w(k, p) = wkp * cr + wkq * s;
                    w(k, q) = -wkp * std::conj(s) + wkq * cr;
                }
                for (int k = 0; k < d; ++k) {
                    const Cx wpk = w(p, k), wqk = w(q, k);
                    w(p, k) = cr * wpk + std::conj(s) * wqk;
                    w(q, k) = -s * wpk + cr * wqk;
                }
                w(p, p) = ap;
                w(q, q) = a + c - ap;
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    const Cx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * cr + vkq * s;
                    v(k, q) = -vkp * std::conj(s) + vkq * cr;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return w(i, i).real() < w(j, j).real(); });

    EigenDecomposition r;
    r.eigenvalues.resize(static_cast<std::size_t>(d));
    r.vectors = Matrix(d, d);
    for (int k = 0; k < d; ++k) {
        r.eigenvalues[static_cast<std::size_t>(k)] = w(order[static_cast<std::size_t>(k)],
                                                       order[static_cast<std::size_t>(k)]).real();
        for (int i = 0; i < d; ++i) r.vectors(i, k) = v(i, order[static_cast<std::size_t>(k)]);
    }
    return r;
}

// ===== Spectral functions =====

Matrix mat_func(const Matrix& m, const std::function<double(double)>& f, bool support_only) {
    const EigenDecomposition e = herm_eig(m);
    const int d = m.rows();
    std::vector<double> fv(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        const double lam = e.eigenvalues[static_cast<std::size_t>(k)];
        if (support_only && lam <= kSupportEps) {
            fv[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        const double y = f(lam);
        if (!std::isfinite(y)) throw std::domain_error("mat_func: f not finite on spectrum");
        fv[static_cast<std::size_t>(k)] = y;
    }
    Matrix r(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cx s = 0.0;
            for (int k = 0; k < d; ++k)
                s += e.vectors(i, k) * fv[static_cast<std::size_t>(k)] * std::conj(e.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

double trace_norm(const Matrix& m) {
    const EigenDecomposition e = herm_eig(m);
    double s = 0.0;
    for (double lam : e.eigenvalues) s += std::abs(lam);
    return s;
}

Matrix support_projector(const Matrix& m) {
    return mat_func(m, [](double) { return 1.0; }, /*support_only=*/true);
}

// ===== Tensor structure =====

Matrix partial_trace(const Matrix& m, std::array<int, 2> dims, int keep) {
    const int da = dims[0], db = dims[1];
    if (!m.square() || m.rows() != da * db) throw std::invalid_argument("partial_trace: dims mismatch");
    if (keep != 0 && keep != 1) throw std::invalid_argument("partial_trace: keep must be 0 or 1");
    if (keep == 0) {
        Matrix r(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) {
                Cx s = 0.0;
                for (int b = 0; b < db; ++b) s += m(i * db + b, j * db + b);
                r(i, j) = s;
            }
        return r;
    }
    Matrix r(db, db);
    for (int a = 0; a < db; ++a)
        for (int b = 0; b < db; ++b) {
            Cx s = 0.0;
            for (int i = 0; i < da; ++i) s += m(i * db + a, i * db + b);
            r(a, b) = s;
        }
    return r;
}

Matrix partial_transpose(const Matrix& m, std::array<int, 2> dims) {
    const int da = dims[0], db = dims[1];
    if (!m.square() || m.rows() != da * db) throw std::invalid_argument("partial_transpose: dims mismatch");
    Matrix r(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int a = 0; a < db; ++a)
            for (int j = 0; j < da; ++j)
                for (int b = 0; b < db; ++b)
                    r(i * db + a, j * db + b) = m(i * db + b, j * db + a);
    return r;
}

namespace {

std::vector<int> permuted_index_map(const std::vector<int>& dims, const std::vector<int>& perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permute_systems: perm size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("permute_systems: invalid permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    int total = 1;
    for (int d : dims) total *= d;
    // map[old_flat] = new_flat
    std::vector<int> map(static_cast<std::size_t>(total));
    std::vector<int> newdims(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) newdims[static_cast<std::size_t>(k)] = dims[static_cast<std::size_t>(perm[k])];
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int flat = 0; flat < total; ++flat) {
        int rem = flat;
        for (int k = n - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = rem % dims[static_cast<std::size_t>(k)];
            rem /= dims[static_cast<std::size_t>(k)];
        }
        int nf = 0;
        for (int k = 0; k < n; ++k)
            nf = nf * newdims[static_cast<std::size_t>(k)] + idx[static_cast<std::size_t>(perm[k])];
        map[static_cast<std::size_t>(flat)] = nf;
    }
    return map;
}

}  // namespace

Matrix permute_systems(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm) {
    int total = 1;
    for (int d : dims) total *= d;
    if (!m.square() || m.rows() != total) throw std::invalid_argument("permute_systems: dims mismatch");
    const std::vector<int> map = permuted_index_map(dims, perm);
    Matrix r(total, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j)
            r(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = m(i, j);
    return r;
}

std::vector<Cx> permute_systems(const std::vector<Cx>& v, const std::vector<int>& dims,
                                const std::vector<int>& perm) {
    int total = 1;
    for (int d : dims) total *= d;
    if (static_cast<int>(v.size()) != total) throw std::invalid_argument("permute_systems: dims mismatch");
    const std::vector<int> map = permuted_index_map(dims, perm);
    std::vector<Cx> r(v.size());
    for (int i = 0; i < total; ++i) r[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])] = v[static_cast<std::size_t>(i)];
    return r;
}

}  // namespace qcap
