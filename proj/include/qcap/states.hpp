// Density operators, pure states, purification and fidelity.
//
// DensityOperator validates on construction: hermitian, min eigenvalue
// >= -1e-9, |trace - 1| <= 1e-9.  dims lists the tensor factors (product =
// matrix dimension).  PureState keeps an amplitude vector with norm within
// 1e-10 of 1.

#pragma once

#include <array>
#include <vector>

#include "qcap/linalg.hpp"

namespace qcap {

struct DensityOperator {
    Matrix op;
    std::vector<int> dims;

    DensityOperator(Matrix m, std::vector<int> d);

    int dim() const { return op.rows(); }
};

struct PureState {
    std::vector<Cx> amplitudes;
    std::vector<int> dims;

    PureState(std::vector<Cx> v, std::vector<int> d);

    int dim() const { return static_cast<int>(amplitudes.size()); }
    Matrix projector() const { return outer(amplitudes, amplitudes); }
    DensityOperator to_density() const { return DensityOperator(projector(), dims); }
};

// (1/sqrt(d)) sum_x |xx> on dims {d, d}.
PureState max_entangled(int d);

// Purification on dims {d, d} with the reference as factor 0:
// |phi> = sum_i sqrt(lambda_i) |i>_R |v_i>; tracing out the reference recovers
// the input within eigendecomposition accuracy.
PureState purify(const DensityOperator& rho);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, symmetric, in [0, 1].
double fidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace qcap
