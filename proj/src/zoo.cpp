#include "qcap/zoo.hpp"

#include <cmath>
#include <stdexcept>

#include "qcap/divergences.hpp"
#include "qcap/ppt_prime.hpp"

namespace qcap {

Matrix clock_unitary(int d, int power) {
    Matrix z(d, d);
    const double w = 2.0 * 3.14159265358979323846 / d;
    for (int j = 0; j < d; ++j) z(j, j) = Cx(std::cos(w * j * power), std::sin(w * j * power));
    return z;
}

Matrix shift_unitary(int d, int power) {
    Matrix x(d, d);
    const int p = ((power % d) + d) % d;
    for (int j = 0; j < d; ++j) x((j + p) % d, j) = 1.0;
    return x;
}

QuantumChannel make_identity(int d) {
    if (d < 1 || d > 64) throw std::invalid_argument("make_identity: d out of range");
    QuantumChannel n("identity(d=" + std::to_string(d) + ")", {Matrix::identity(d)});
    n.declare_covariance(Covariance::dephasing_diagonal);
    n.declare_covariance(Covariance::full_unitary_group);
    return n;
}

QuantumChannel make_qubit_dephasing(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_qubit_dephasing: p outside [0,1]");
    Matrix k0 = Matrix::identity(2) * Cx(std::sqrt(1.0 - p), 0.0);
    Matrix k1(2, 2);
    k1(0, 0) = std::sqrt(p);
    k1(1, 1) = -std::sqrt(p);
    QuantumChannel n("qubit_dephasing(p=" + std::to_string(p) + ")", {std::move(k0), std::move(k1)});
    n.declare_covariance(Covariance::dephasing_diagonal);
    return n;
}

QuantumChannel make_generalized_dephasing(const std::vector<std::vector<Cx>>& env_states) {
    const int d = static_cast<int>(env_states.size());
    if (d < 1) throw std::invalid_argument("make_generalized_dephasing: no environment states");
    const int denv = static_cast<int>(env_states.front().size());
    for (const auto& psi : env_states) {
        if (static_cast<int>(psi.size()) != denv)
            throw std::invalid_argument("make_generalized_dephasing: ragged environment states");
        if (std::abs(vec_norm(psi) - 1.0) > 1e-10)
            throw std::invalid_argument("make_generalized_dephasing: environment state not normalized");
    }
    // K_e = sum_x psi_x[e] |x><x|, one Kraus operator per environment dimension.
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(denv));
    for (int e = 0; e < denv; ++e) {
        Matrix k(d, d);
        for (int x = 0; x < d; ++x) k(x, x) = env_states[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)];
        kraus.push_back(std::move(k));
    }
    QuantumChannel n("generalized_dephasing(d=" + std::to_string(d) + ")", std::move(kraus));
    n.declare_covariance(Covariance::dephasing_diagonal);
    return n;
}

QuantumChannel make_generalized_dephasing_symmetric(int d, double c) {
    if (d < 2) throw std::invalid_argument("make_generalized_dephasing_symmetric: d < 2");
    if (c < -1.0 / (d - 1) - 1e-12 || c > 1.0 + 1e-12)
        throw std::invalid_argument("make_generalized_dephasing_symmetric: overlap outside PSD range");
    // Environment states = columns of G^(1/2) for the Gram matrix
    // G = (1-c) I + c J, so <psi_x|psi_y> = G_xy.
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = (i == j) ? 1.0 : c;
    const Matrix root = mat_func(g, [](double x) { return std::sqrt(std::max(x, 0.0)); },
                                 /*support_only=*/true);
    std::vector<std::vector<Cx>> env(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) {
        std::vector<Cx> psi(static_cast<std::size_t>(d));
        for (int e = 0; e < d; ++e) psi[static_cast<std::size_t>(e)] = root(e, x);
        const double nn = vec_norm(psi);
        for (auto& a : psi) a /= nn;  // unit-norm guard against roundoff
        env[static_cast<std::size_t>(x)] = std::move(psi);
    }
    return make_generalized_dephasing(env);
}

QuantumChannel make_erasure(int d, double p) {
    if (d < 1 || d > 63) throw std::invalid_argument("make_erasure: d out of range");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_erasure: p outside [0,1]");
    std::vector<Matrix> kraus;
    Matrix k0(d + 1, d);
    for (int x = 0; x < d; ++x) k0(x, x) = std::sqrt(1.0 - p);
    kraus.push_back(std::move(k0));
    for (int x = 0; x < d; ++x) {
        Matrix k(d + 1, d);
        k(d, x) = std::sqrt(p);
        kraus.push_back(std::move(k));
    }
    QuantumChannel n("erasure(d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")",
                     std::move(kraus));
    n.declare_covariance(Covariance::full_unitary_group);
    n.set_erasure_output_padding(true);
    return n;
}

QuantumChannel make_depolarizing(int d, double q) {
    if (d < 2 || d > 8) throw std::invalid_argument("make_depolarizing: d out of range");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("make_depolarizing: q outside [0,1]");
    // rho -> (1-q) rho + q I/d via the Heisenberg-Weyl mixture.
    std::vector<Matrix> kraus;
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
            const double c = (s == 0 && t == 0) ? (1.0 - q) + q / (d * d) : q / (d * d);
            if (c <= 0.0) continue;
            kraus.push_back(shift_unitary(d, s) * clock_unitary(d, t) * Cx(std::sqrt(c), 0.0));
        }
    QuantumChannel n("depolarizing(d=" + std::to_string(d) + ",q=" + std::to_string(q) + ")",
                     std::move(kraus));
    n.declare_covariance(Covariance::full_unitary_group);
    return n;
}

namespace {

double param(const ChannelFamilySpec& spec, const std::string& key, double fallback,
             bool required = false) {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) {
        if (required) throw std::invalid_argument("channel family '" + spec.family + "' needs parameter " + key);
        return fallback;
    }
    return it->second;
}

// max over the probability simplex of H(p) - H(M_p) with
// M_p[x,y] = sqrt(p_x p_y) gamma_xy; the coherent information of a
// generalized dephasing channel, evaluated without any channel machinery.
double dephasing_reference_value(const Matrix& gamma) {
    const int d = gamma.rows();
    auto value = [&](const std::vector<double>& p) {
        Matrix m(d, d);
        double hp = 0.0;
        for (int x = 0; x < d; ++x) {
            const double px = std::max(p[static_cast<std::size_t>(x)], 0.0);
            if (px > 0.0) hp -= px * std::log2(px);
            for (int y = 0; y < d; ++y)
                m(x, y) = std::sqrt(std::max(p[static_cast<std::size_t>(x)], 0.0) *
                                    std::max(p[static_cast<std::size_t>(y)], 0.0)) *
                          gamma(x, y);
        }
        return hp - vn_entropy(m);
    };
    std::vector<double> p(static_cast<std::size_t>(d), 1.0 / d);
    double cur = value(p);
    const double h = 1e-6;
    for (int it = 0; it < 2000; ++it) {
        std::vector<double> grad(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            std::vector<double> pp = p, pm = p;
            pp[static_cast<std::size_t>(k)] += h;
            pm[static_cast<std::size_t>(k)] -= h;
            grad[static_cast<std::size_t>(k)] = (value(pp) - value(pm)) / (2.0 * h);
        }
        double step = 0.1;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            std::vector<double> cand(static_cast<std::size_t>(d));
            for (int k = 0; k < d; ++k)
                cand[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)] + step * grad[static_cast<std::size_t>(k)];
            cand = project_subsimplex(cand);
            double s = 0.0;
            for (double x : cand) s += x;
            if (s < 1.0 - 1e-12) {  // renormalize onto the simplex proper
                for (double& x : cand) x /= s;
            }
            const double fc = value(cand);
            if (fc > cur + 1e-14) {
                p = std::move(cand);
                const double rel = (fc - cur) / std::max(1.0, std::abs(fc));
                cur = fc;
                accepted = true;
                if (rel < 1e-10) return cur;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return cur;
}

}  // namespace

QuantumChannel make_from_family(const ChannelFamilySpec& spec) {
    const std::string& f = spec.family;
    if (f == "identity") return make_identity(static_cast<int>(param(spec, "d", 2)));
    if (f == "qubit_dephasing" || f == "dephasing")
        return make_qubit_dephasing(param(spec, "p", 0.0, /*required=*/true));
    if (f == "generalized_dephasing" || f == "gdephasing")
        return make_generalized_dephasing_symmetric(static_cast<int>(param(spec, "d", 3)),
                                                    param(spec, "c", 0.0, /*required=*/true));
    if (f == "erasure")
        return make_erasure(static_cast<int>(param(spec, "d", 2)), param(spec, "p", 0.0, true));
    if (f == "depolarizing")
        return make_depolarizing(static_cast<int>(param(spec, "d", 2)), param(spec, "q", 0.0, true));
    throw std::invalid_argument("unknown channel family '" + f + "'");
}

AnalyticReference analytic_reference(const ChannelFamilySpec& spec) {
    AnalyticReference r;
    const std::string& f = spec.family;
    if (f == "identity") {
        const double v = std::log2(param(spec, "d", 2));
        r.coherent_info = r.rains_info = r.quantum_capacity = r.pp_quantum_capacity = v;
    } else if (f == "qubit_dephasing" || f == "dephasing") {
        const double p = param(spec, "p", 0.0, true);
        const double v = 1.0 - binary_entropy(p);
        r.coherent_info = r.rains_info = r.quantum_capacity = r.pp_quantum_capacity = v;
    } else if (f == "generalized_dephasing" || f == "gdephasing") {
        const int d = static_cast<int>(param(spec, "d", 3));
        const double c = param(spec, "c", 0.0, true);
        Matrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = (i == j) ? 1.0 : c;
        const double v = dephasing_reference_value(g);
        r.coherent_info = r.rains_info = r.quantum_capacity = r.pp_quantum_capacity = v;
    } else if (f == "erasure") {
        const int d = static_cast<int>(param(spec, "d", 2));
        const double p = param(spec, "p", 0.0, true);
        r.rains_info = r.pp_quantum_capacity = (1.0 - p) * std::log2(d);
        r.coherent_info = r.quantum_capacity = std::max(1.0 - 2.0 * p, 0.0) * std::log2(d);
    } else if (f == "depolarizing") {
        // No closed-form references.
    } else {
        throw std::invalid_argument("unknown channel family '" + f + "'");
    }
    return r;
}

Matrix dephasing_gram(const QuantumChannel& n, double tol) {
    if (!n.covariant(Covariance::dephasing_diagonal))
        throw std::invalid_argument("dephasing_gram: channel lacks the dephasing-diagonal declaration");
    if (n.d_in() != n.d_out()) throw std::invalid_argument("dephasing_gram: d_in != d_out");
    const int d = n.d_in();
    const Matrix& j = n.choi();
    Matrix gamma(d, d);
    double off_mass = 0.0;
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int k = 0; k < d; ++k)
                for (int b = 0; b < d; ++b) {
                    const Cx v = j(i * d + a, k * d + b);
                    if (i == a && k == b)
                        gamma(i, k) = v * static_cast<double>(d);
                    else
                        off_mass = std::max(off_mass, std::abs(v));
                }
    if (off_mass > tol)
        throw std::invalid_argument("dephasing_gram: Choi weight outside correlated blocks");
    return gamma;
}

}  // namespace qcap
