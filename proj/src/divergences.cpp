#include "qcap/divergences.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcap {

Alpha Alpha::of(double a) {
    if (!(a > 1.0) || !std::isfinite(a)) throw std::invalid_argument("Alpha: need alpha > 1");
    return Alpha(false, a);
}

Alpha Alpha::parse(const std::string& s) {
    if (s == "limit-1") return limit1();
    std::size_t pos = 0;
    double a = 0.0;
    try {
        a = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("Alpha: cannot parse '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("Alpha: cannot parse '" + s + "'");
    return of(a);
}

double Alpha::value() const {
    if (limit1_) throw std::logic_error("Alpha: limit-1 has no numeric value");
    return a_;
}

std::string Alpha::str() const {
    if (limit1_) return "limit-1";
    std::ostringstream os;
    os << a_;
    return os.str();
}

double vn_entropy(const Matrix& rho) {
    const EigenDecomposition e = herm_eig(rho);
    double h = 0.0;
    for (double lam : e.eigenvalues)
        if (lam > kSupportEps) h -= lam * std::log2(lam);
    return h;
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

namespace {

void require_psd_within(const Matrix& m, double tol) {
    const EigenDecomposition e = herm_eig(m);
    const double scale = std::max(1.0, std::abs(e.eigenvalues.back()));
    if (e.eigenvalues.front() < -tol * scale)
        throw std::invalid_argument("divergence: second argument not PSD");
}

double overlap_from_eigs(const EigenDecomposition& erho, const EigenDecomposition& esig) {
    // sum over (rho support direction i, sigma kernel direction j) of |<v_i|u_j>|^2
    const int d = erho.vectors.rows();
    double ov = 0.0;
    for (int j = 0; j < d; ++j) {
        if (esig.eigenvalues[static_cast<std::size_t>(j)] > kSupportEps) continue;
        for (int i = 0; i < d; ++i) {
            if (erho.eigenvalues[static_cast<std::size_t>(i)] <= kSupportEps) continue;
            Cx ip = 0.0;
            for (int k = 0; k < d; ++k) ip += std::conj(erho.vectors(k, i)) * esig.vectors(k, j);
            ov += std::norm(ip);
        }
    }
    return ov;
}

}  // namespace

double support_kernel_overlap(const Matrix& rho, const Matrix& sigma) {
    return overlap_from_eigs(herm_eig(rho), herm_eig(sigma));
}

DivergenceValue rel_entropy(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows()) throw std::invalid_argument("rel_entropy: dimension mismatch");
    require_psd_within(sigma, 1e-8);
    const EigenDecomposition erho = herm_eig(rho);
    const EigenDecomposition esig = herm_eig(sigma);
    if (overlap_from_eigs(erho, esig) > 1e-8) return DivergenceValue::infinite();

    double t1 = 0.0;
    for (double lam : erho.eigenvalues)
        if (lam > kSupportEps) t1 += lam * std::log2(lam);

    // t2 = sum_j log2(s_j) <u_j| rho |u_j> over the sigma support
    const int d = rho.rows();
    double t2 = 0.0;
    for (int j = 0; j < d; ++j) {
        const double s = esig.eigenvalues[static_cast<std::size_t>(j)];
        if (s <= kSupportEps) continue;
        Cx q = 0.0;
        for (int a = 0; a < d; ++a) {
            Cx row = 0.0;
            for (int b = 0; b < d; ++b) row += rho(a, b) * esig.vectors(b, j);
            q += std::conj(esig.vectors(a, j)) * row;
        }
        t2 += std::log2(s) * q.real();
    }
    return DivergenceValue::finite(t1 - t2);
}

DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma, Alpha alpha) {
    if (alpha.is_limit1()) return rel_entropy(rho, sigma);
    if (rho.rows() != sigma.rows()) throw std::invalid_argument("sandwiched_renyi: dimension mismatch");
    require_psd_within(sigma, 1e-8);
    const double a = alpha.value();
    const EigenDecomposition erho = herm_eig(rho);
    const EigenDecomposition esig = herm_eig(sigma);
    if (overlap_from_eigs(erho, esig) > 1e-8) return DivergenceValue::infinite();

    const double c = (1.0 - a) / (2.0 * a);
    const int d = rho.rows();
    // S = sigma^c on the support
    Matrix s(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cx acc = 0.0;
            for (int k = 0; k < d; ++k) {
                const double lam = esig.eigenvalues[static_cast<std::size_t>(k)];
                if (lam <= kSupportEps) continue;
                acc += esig.vectors(i, k) * std::pow(lam, c) * std::conj(esig.vectors(j, k));
            }
            s(i, j) = acc;
        }
    Matrix x = s * rho * s;
    x = (x + x.adjoint()) * Cx(0.5, 0.0);
    const EigenDecomposition ex = herm_eig(x);
    double q = 0.0;
    for (double mu : ex.eigenvalues)
        if (mu > 0.0) q += std::pow(mu, a);
    if (q <= 0.0) return DivergenceValue::infinite();
    return DivergenceValue::finite(std::log2(q) / (a - 1.0));
}

double coherent_info_state(const Matrix& rho_rb, std::array<int, 2> dims) {
    const Matrix rho_b = partial_trace(rho_rb, dims, /*keep=*/1);
    return vn_entropy(rho_b) - vn_entropy(rho_rb);
}

}  // namespace qcap
