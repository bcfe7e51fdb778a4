// Shared test scaffolding: closeness helpers, an independent binary entropy
// oracle and a few fixed operators the cases keep reaching for.

#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "qcap/matrix.hpp"

namespace tutil {

using qcap::Cx;
using qcap::Matrix;

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Test-side oracle, deliberately not qcap::binary_entropy.
inline double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline Matrix mat2(Cx a, Cx b, Cx c, Cx d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline Matrix pauli_x() { return mat2(0.0, 1.0, 1.0, 0.0); }
inline Matrix pauli_z() { return mat2(1.0, 0.0, 0.0, -1.0); }

inline Matrix diag(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

inline double fdist(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

}  // namespace tutil
