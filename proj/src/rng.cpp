#include "qcap/rng.hpp"

#include <cmath>

namespace qcap {

double Rng::normal() {
    // Guard u1 away from 0 so log stays finite.
    const double u1 = std::max(uniform(), 0x1.0p-60);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

Rng Rng::fork(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

Matrix random_hermitian(Rng& rng, int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        m(i, i) = rng.normal();
        for (int j = i + 1; j < d; ++j) {
            const Cx z = rng.cnormal();
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

Matrix random_psd(Rng& rng, int d) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.cnormal();
    return g * g.adjoint();
}

Matrix random_density(Rng& rng, int d) {
    Matrix p = random_psd(rng, d);
    const double t = p.trace().real();
    return p * Cx(1.0 / t, 0.0);
}

std::vector<Cx> random_pure(Rng& rng, int d) {
    std::vector<Cx> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = rng.cnormal();
    const double n = vec_norm(v);
    for (auto& x : v) x /= n;
    return v;
}

Matrix random_unitary(Rng& rng, int d) {
    // Gram-Schmidt on Gaussian columns; fix each column's phase so the result
    // is a deterministic function of the draws.
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.cnormal();
    Matrix u(d, d);
    for (int c = 0; c < d; ++c) {
        std::vector<Cx> col(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = g(i, c);
        for (int prev = 0; prev < c; ++prev) {
            Cx ov = 0.0;
            for (int i = 0; i < d; ++i) ov += std::conj(u(i, prev)) * col[static_cast<std::size_t>(i)];
            for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] -= ov * u(i, prev);
        }
        const double n = vec_norm(col);
        Cx phase(1.0, 0.0);
        for (int i = 0; i < d; ++i) {
            if (std::abs(col[static_cast<std::size_t>(i)]) > 1e-12) {
                phase = col[static_cast<std::size_t>(i)] / std::abs(col[static_cast<std::size_t>(i)]);
                break;
            }
        }
        for (int i = 0; i < d; ++i) u(i, c) = col[static_cast<std::size_t>(i)] / (n * phase);
    }
    return u;
}

}  // namespace qcap
