#include "qcap/eg_codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qcap/ppt_prime.hpp"

namespace qcap {

namespace {

QuantumChannel identity_decode(int d) {
    return QuantumChannel("identity-decode", {Matrix::identity(d)});
}

// Isometric embedding of a d_from-dim system onto the first basis vectors of
// a d_to-dim one.
QuantumChannel embed_decode(int d_from, int d_to) {
    if (d_to < d_from) throw std::invalid_argument("embed_decode: target smaller than source");
    Matrix v(d_to, d_from);
    for (int x = 0; x < d_from; ++x) v(x, x) = Cx(1.0, 0.0);
    return QuantumChannel("embed-decode", {std::move(v)});
}

// Keeps the m-dim code subspace and routes the complement to the maximally
// mixed state.
QuantumChannel truncate_or_mix_decode(int d_from, int m) {
    if (d_from < m) throw std::invalid_argument("truncate_or_mix_decode: source smaller than code");
    std::vector<Matrix> kraus;
    Matrix keep(m, d_from);
    for (int x = 0; x < m; ++x) keep(x, x) = Cx(1.0, 0.0);
    kraus.push_back(std::move(keep));
    const double w = 1.0 / std::sqrt(static_cast<double>(m));
    for (int c = m; c < d_from; ++c)
        for (int r = 0; r < m; ++r) {
            Matrix k(m, d_from);
            k(r, c) = Cx(w, 0.0);
            kraus.push_back(std::move(k));
        }
    return QuantumChannel("truncate-or-mix", std::move(kraus));
}

}  // namespace

QuantumChannel joint_decoder(const EGCode& code) {
    std::vector<Matrix> kraus;
    kraus.reserve(code.decoder_alice.kraus().size() * code.decoder_bob.kraus().size());
    for (const Matrix& la : code.decoder_alice.kraus())
        for (const Matrix& mb : code.decoder_bob.kraus()) kraus.push_back(kron(la, mb));
    return QuantumChannel(code.name + "-joint-decoder", std::move(kraus));
}

double code_fidelity(const EGCode& code, const QuantumChannel& n) {
    if (code.encoder_state.dims.size() != 2)
        throw std::invalid_argument("code_fidelity: encoder must be bipartite");
    const int d_mem = code.encoder_state.dims[0];
    const int d_a = code.encoder_state.dims[1];
    if (n.d_in() != d_a || code.decoder_alice.d_in() != d_mem ||
        code.decoder_bob.d_in() != n.d_out() || code.decoder_alice.d_out() != code.m ||
        code.decoder_bob.d_out() != code.m)
        throw std::invalid_argument("code_fidelity: dimension mismatch");

    Matrix psi(d_mem, d_a);
    for (int i = 0; i < d_mem; ++i)
        for (int k = 0; k < d_a; ++k)
            psi(i, k) = code.encoder_state.amplitudes[static_cast<std::size_t>(i) * d_a + k];

    double f = 0.0;
    for (const Matrix& mb : code.decoder_bob.kraus())
        for (const Matrix& kj : n.kraus()) {
            const Matrix t = psi * (mb * kj).transpose();  // d_mem x m
            for (const Matrix& la : code.decoder_alice.kraus()) {
                Cx tr(0.0, 0.0);
                for (int r = 0; r < code.m; ++r)
                    for (int s = 0; s < d_mem; ++s) tr += la(r, s) * t(s, r);
                f += std::norm(tr);
            }
        }
    return std::clamp(f / code.m, 0.0, 1.0);
}

DensityOperator entanglement_test(const DensityOperator& omega) {
    if (omega.dims.size() != 2 || omega.dims[0] != omega.dims[1])
        throw std::invalid_argument("entanglement_test: expected square bipartite dims");
    const int m = omega.dims[0];
    const double f =
        std::clamp(max_entangled_overlap(omega.op, {m, m}, m), 0.0, 1.0);
    Matrix flag(2, 2);
    flag(0, 0) = Cx(1.0 - f, 0.0);
    flag(1, 1) = Cx(f, 0.0);
    return DensityOperator(std::move(flag), {2});
}

CodePerformance verify_oneshot_bound(const EGCode& code, const QuantumChannel& n, double alpha,
                                     double renyi_rains) {
    CodePerformance p;
    p.fidelity = code_fidelity(code, n);
    p.bound = fidelity_upper_bound(std::log2(static_cast<double>(code.m)), renyi_rains, alpha);
    p.alpha_used = alpha;
    p.satisfied = p.fidelity <= p.bound + 1e-7;
    return p;
}

CodePerformance verify_oneshot_bound(const EGCode& code, const QuantumChannel& n, double alpha) {
    const BoundReport r = rains_info_channel(n, Alpha::of(alpha), RainsInfoOpts{});
    return verify_oneshot_bound(code, n, alpha, r.value);
}

std::vector<DecayRow> sc_decay_sweep(const CodeFamily& family, const QuantumChannel& n, int n_max,
                                     double alpha, double single_copy_renyi) {
    if (n_max < 1) throw std::invalid_argument("sc_decay_sweep: n_max must be >= 1");
    double guard = 1.0;
    for (int i = 0; i < n_max; ++i) {
        guard *= n.d_in();
        if (guard > 64.0) throw std::length_error("sc_decay_sweep: d_in^n_max exceeds 64");
    }
    std::vector<DecayRow> rows;
    for (int k = 1; k <= n_max; ++k) {
        const QuantumChannel nk = channel_tensor_power(n, k);
        const EGCode code = family(k);
        DecayRow row;
        row.n = k;
        row.log_m = std::log2(static_cast<double>(code.m));
        row.fidelity = code_fidelity(code, nk);
        const double renyi_k = weak_subadd_bound(single_copy_renyi, k, alpha, n.d_in());
        row.bound = fidelity_upper_bound(row.log_m, renyi_k, alpha);
        row.empirical_exponent = row.fidelity < 1e-300
                                     ? std::numeric_limits<double>::infinity()
                                     : -std::log2(row.fidelity) / k;
        rows.push_back(row);
    }
    return rows;
}

std::vector<DecayRow> sc_decay_sweep(const CodeFamily& family, const QuantumChannel& n, int n_max,
                                     double alpha) {
    const BoundReport r = rains_info_channel(n, Alpha::of(alpha), RainsInfoOpts{});
    return sc_decay_sweep(family, n, n_max, alpha, r.value);
}

EGCode make_trivial_code(const QuantumChannel& n) {
    const int m = n.d_in();
    QuantumChannel bob =
        n.d_out() == m ? identity_decode(m) : truncate_or_mix_decode(n.d_out(), m);
    return EGCode{m, max_entangled(m), identity_decode(m), std::move(bob),
                  "trivial-" + std::to_string(m)};
}

EGCode make_petz_code(const QuantumChannel& n) {
    const int m = n.d_in();
    const int db = n.d_out();

    Matrix pi = Matrix::identity(m) * Cx(1.0 / m, 0.0);
    const Matrix s = n.apply_matrix(pi);
    const EigenDecomposition es = herm_eig(s);
    Matrix s_inv_half(db, db);
    std::vector<int> kernel;
    for (int j = 0; j < db; ++j) {
        if (es.eigenvalues[static_cast<std::size_t>(j)] <= kSupportEps) {
            kernel.push_back(j);
            continue;
        }
        const double w = 1.0 / std::sqrt(es.eigenvalues[static_cast<std::size_t>(j)]);
        for (int r = 0; r < db; ++r)
            for (int c = 0; c < db; ++c)
                s_inv_half(r, c) += es.vectors(r, j) * std::conj(es.vectors(c, j)) * w;
    }

    const double root_pi = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<Matrix> kraus;
    for (const Matrix& k : n.kraus()) {
        Matrix t = (k.adjoint() * s_inv_half) * Cx(root_pi, 0.0);
        if (t.frobenius_norm() < 1e-14) continue;
        kraus.push_back(std::move(t));
    }
    // Kernel directions of S carry no output mass; route them to |0>.
    for (int j : kernel) {
        Matrix k(m, db);
        for (int b = 0; b < db; ++b) k(0, b) = std::conj(es.vectors(b, j));
        kraus.push_back(std::move(k));
    }
    return EGCode{m, max_entangled(m), identity_decode(m),
                  QuantumChannel("petz-decode", std::move(kraus)), "petz-" + std::to_string(m)};
}

EGCode make_rate2_identity_code(int n_uses) {
    if (n_uses < 1 || n_uses > 5)
        throw std::invalid_argument("make_rate2_identity_code: n_uses outside 1..5");
    int half = 1, m = 1;
    for (int i = 0; i < n_uses; ++i) {
        half *= 2;
        m *= 4;
    }
    return EGCode{m, max_entangled(half), embed_decode(half, m), embed_decode(half, m),
                  "rate2-identity-" + std::to_string(n_uses)};
}

CodeFamily trivial_family(const QuantumChannel& single_copy) {
    return [single_copy](int k) { return make_trivial_code(channel_tensor_power(single_copy, k)); };
}

CodeFamily petz_family(const QuantumChannel& single_copy) {
    return [single_copy](int k) { return make_petz_code(channel_tensor_power(single_copy, k)); };
}

CodeFamily rate2_identity_family() {
    return [](int k) { return make_rate2_identity_code(k); };
}

}  // namespace qcap
