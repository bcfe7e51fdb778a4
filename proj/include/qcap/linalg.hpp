// Hermitian eigendecomposition (cyclic Jacobi), spectral matrix functions and
// bipartite tensor-structure operations.
//
// The eigensolver is self-contained and deterministic: fixed sweep order,
// convergence when the off-diagonal Frobenius mass drops below
// 1e-13 * ||M||_F, hard cap of 100 sweeps.  Eigenvalues come back ascending
// with matching eigenvector columns.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qcap/matrix.hpp"

namespace qcap {

// Eigenvalues below this are treated as exact zeros by support-restricted
// spectral functions.
inline constexpr double kSupportEps = 1e-10;

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix vectors;                   // column k pairs with eigenvalues[k]
};

// Requires square, hermitian within 1e-10 (entrywise, relative to max |entry|).
EigenDecomposition herm_eig(const Matrix& m);

// V f(Lambda) V^dagger.  With support_only, eigenvalues <= kSupportEps map to
// exactly 0 instead of f(lambda).  Throws std::domain_error if f returns a
// non-finite value on an eigenvalue it is applied to.
Matrix mat_func(const Matrix& m, const std::function<double(double)>& f, bool support_only);

// Sum of |eigenvalue|; hermitian input only.
double trace_norm(const Matrix& m);

// Orthogonal projector onto the span of eigenvectors with eigenvalue > kSupportEps.
Matrix support_projector(const Matrix& m);

// dims = {d_A, d_B}, composite index i_A * d_B + i_B.  keep = 0 traces out B,
// keep = 1 traces out A.
Matrix partial_trace(const Matrix& m, std::array<int, 2> dims, int keep);

// Transpose on the B factor.  Involution; preserves trace and Frobenius norm.
Matrix partial_transpose(const Matrix& m, std::array<int, 2> dims);

// Reorder tensor factors: entry for new multi-index (j_0 .. j_{n-1}) equals the
// old entry at (i_0 .. i_{n-1}) with j_k = i_{perm[k]}.  perm must be a
// permutation of 0..n-1.
Matrix permute_systems(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm);
std::vector<Cx> permute_systems(const std::vector<Cx>& v, const std::vector<int>& dims,
                                const std::vector<int>& perm);

}  // namespace qcap
