#include "qcap/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qcap {

namespace {

int dims_product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("dims: factors must be positive");
        p *= d;
    }
    return p;
}

}  // namespace

DensityOperator::DensityOperator(Matrix m, std::vector<int> d) : op(std::move(m)), dims(std::move(d)) {
    if (dims.empty()) dims = {op.rows()};
    if (dims_product(dims) != op.rows()) throw std::invalid_argument("DensityOperator: dims do not match matrix");
    require_hermitian(op, 1e-10);
    const EigenDecomposition e = herm_eig(op);
    if (e.eigenvalues.front() < -1e-9) throw std::invalid_argument("DensityOperator: negative eigenvalue");
    if (std::abs(op.trace().real() - 1.0) > 1e-9) throw std::invalid_argument("DensityOperator: trace not 1");
}

PureState::PureState(std::vector<Cx> v, std::vector<int> d) : amplitudes(std::move(v)), dims(std::move(d)) {
    if (dims.empty()) dims = {static_cast<int>(amplitudes.size())};
    if (dims_product(dims) != static_cast<int>(amplitudes.size()))
        throw std::invalid_argument("PureState: dims do not match vector");
    if (std::abs(vec_norm(amplitudes) - 1.0) > 1e-10) throw std::invalid_argument("PureState: not normalized");
}

PureState max_entangled(int d) {
    if (d <= 0) throw std::invalid_argument("max_entangled: d must be positive");
    std::vector<Cx> v(static_cast<std::size_t>(d) * d, Cx(0.0, 0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) v[static_cast<std::size_t>(x) * d + x] = a;
    return PureState(std::move(v), {d, d});
}

PureState purify(const DensityOperator& rho) {
    const int d = rho.dim();
    const EigenDecomposition e = herm_eig(rho.op);
    std::vector<Cx> v(static_cast<std::size_t>(d) * d, Cx(0.0, 0.0));
    for (int r = 0; r < d; ++r) {
        const double lam = std::max(e.eigenvalues[static_cast<std::size_t>(r)], 0.0);
        if (lam == 0.0) continue;
        const double s = std::sqrt(lam);
        for (int a = 0; a < d; ++a) v[static_cast<std::size_t>(r) * d + a] = s * e.vectors(a, r);
    }
    const double n = vec_norm(v);
    for (auto& x : v) x /= n;
    return PureState(std::move(v), {d, d});
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || !rho.square() || !sigma.square())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Matrix s = mat_func(rho, [](double x) { return std::sqrt(std::max(x, 0.0)); },
                              /*support_only=*/true);
    Matrix inner = s * sigma * s;
    // Symmetrize away roundoff before taking the spectrum.
    inner = (inner + inner.adjoint()) * Cx(0.5, 0.0);
    const EigenDecomposition e = herm_eig(inner);
    double t = 0.0;
    for (double lam : e.eigenvalues) t += std::sqrt(std::max(lam, 0.0));
    return t * t;
}

}  // namespace qcap
