// Deterministic random sources.
//
// The engine is std::mt19937_64 (bit-exact across standard libraries); the
// uniform and normal transforms are explicit here because the standard
// <random> distributions are implementation-defined and would break
// byte-identical report reproduction.  fork(k) derives an independent stream,
// so parallel loops can draw per-slot randomness that does not depend on
// thread scheduling.

#pragma once

#include <cstdint>
#include <random>

#include "qcap/matrix.hpp"

namespace qcap {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return eng_(); }

    // [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; no cached second value, one draw costs two uniforms.
    double normal();

    Cx cnormal() { return Cx(normal(), normal()) * 0.7071067811865476; }

    Rng fork(std::uint64_t stream) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

Matrix random_hermitian(Rng& rng, int d);      // GUE-like, entries O(1)
Matrix random_psd(Rng& rng, int d);            // G G^dagger for Gaussian G
Matrix random_density(Rng& rng, int d);        // trace-normalized random_psd
std::vector<Cx> random_pure(Rng& rng, int d);  // Haar on the sphere
Matrix random_unitary(Rng& rng, int d);        // QR of a Gaussian matrix, phase-fixed

}  // namespace qcap
