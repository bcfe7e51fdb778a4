#include "qcap/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qcap {

namespace {

Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int d_in, int d_out) {
    // J[(i,a),(j,b)] = (1/d_in) sum_k K[a,i] conj(K[b,j])
    Matrix j(d_in * d_out, d_in * d_out);
    for (const Matrix& k : kraus)
        for (int i = 0; i < d_in; ++i)
            for (int a = 0; a < d_out; ++a) {
                const Cx left = k(a, i);
                if (left == Cx(0.0, 0.0)) continue;
                for (int jj = 0; jj < d_in; ++jj)
                    for (int b = 0; b < d_out; ++b)
                        j(i * d_out + a, jj * d_out + b) += left * std::conj(k(b, jj));
            }
    return j * Cx(1.0 / d_in, 0.0);
}

}  // namespace

ChannelValidationReport validate_kraus(const std::vector<Matrix>& kraus) {
    ChannelValidationReport r;
    if (kraus.empty()) return r;
    const int d_out = kraus.front().rows();
    const int d_in = kraus.front().cols();
    for (const Matrix& k : kraus)
        if (k.rows() != d_out || k.cols() != d_in) return r;
    Matrix acc(d_in, d_in);
    for (const Matrix& k : kraus) acc += k.adjoint() * k;
    r.completeness_residual = (acc - Matrix::identity(d_in)).frobenius_norm();
    const Matrix j = choi_from_kraus(kraus, d_in, d_out);
    r.choi_min_eig = herm_eig(j).eigenvalues.front();
    const Matrix marg = partial_trace(j, {d_in, d_out}, /*keep=*/0);
    r.choi_marginal_residual = (marg - Matrix::identity(d_in) * Cx(1.0 / d_in, 0.0)).frobenius_norm();
    r.valid = r.completeness_residual <= 1e-8 && r.choi_min_eig >= -1e-9;
    return r;
}

QuantumChannel::QuantumChannel(std::string name, std::vector<Matrix> kraus)
    : name_(std::move(name)), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
    d_out_ = kraus_.front().rows();
    d_in_ = kraus_.front().cols();
    for (const Matrix& k : kraus_)
        if (k.rows() != d_out_ || k.cols() != d_in_)
            throw std::invalid_argument("QuantumChannel: inconsistent Kraus shapes");
    Matrix acc(d_in_, d_in_);
    for (const Matrix& k : kraus_) acc += k.adjoint() * k;
    if ((acc - Matrix::identity(d_in_)).frobenius_norm() > 1e-8)
        throw std::invalid_argument("QuantumChannel: Kraus completeness violated");
    choi_ = std::make_shared<LazyChoi>();
}

const Matrix& QuantumChannel::choi() const {
    std::call_once(choi_->once,
                   [this] { choi_->value = choi_from_kraus(kraus_, d_in_, d_out_); });
    return choi_->value;
}

Matrix QuantumChannel::output_unitary(const Matrix& u) const {
    if (u.rows() != d_in_ || !u.square()) throw std::invalid_argument("output_unitary: shape mismatch");
    if (!erasure_padding_) return u;
    Matrix v(d_out_, d_out_);
    for (int i = 0; i < d_in_; ++i)
        for (int j = 0; j < d_in_; ++j) v(i, j) = u(i, j);
    for (int k = d_in_; k < d_out_; ++k) v(k, k) = 1.0;
    return v;
}

Matrix QuantumChannel::apply_matrix(const Matrix& rho) const {
    if (rho.rows() != d_in_ || !rho.square()) throw std::invalid_argument("apply_matrix: shape mismatch");
    Matrix out(d_out_, d_out_);
    for (const Matrix& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

Matrix QuantumChannel::apply_via_choi(const Matrix& rho) const {
    if (rho.rows() != d_in_ || !rho.square()) throw std::invalid_argument("apply_via_choi: shape mismatch");
    const Matrix& j_op = choi();
    Matrix out(d_out_, d_out_);
    for (int a = 0; a < d_out_; ++a)
        for (int b = 0; b < d_out_; ++b) {
            Cx s = 0.0;
            for (int i = 0; i < d_in_; ++i)
                for (int j = 0; j < d_in_; ++j) s += rho(i, j) * j_op(i * d_out_ + a, j * d_out_ + b);
            out(a, b) = s * static_cast<double>(d_in_);
        }
    return out;
}

ChannelValidationReport validate_channel(const QuantumChannel& n) { return validate_kraus(n.kraus()); }

Matrix apply_on_subsystem(const QuantumChannel& n, const Matrix& rho, const std::vector<int>& dims,
                          int acting_on, std::vector<int>* dims_out) {
    if (acting_on < 0 || acting_on >= static_cast<int>(dims.size()))
        throw std::invalid_argument("apply_on_subsystem: bad subsystem index");
    if (dims[static_cast<std::size_t>(acting_on)] != n.d_in())
        throw std::invalid_argument("apply_on_subsystem: subsystem dimension != d_in");
    int pre = 1, post = 1;
    for (int k = 0; k < acting_on; ++k) pre *= dims[static_cast<std::size_t>(k)];
    for (int k = acting_on + 1; k < static_cast<int>(dims.size()); ++k) post *= dims[static_cast<std::size_t>(k)];
    if (pre * n.d_in() * post != rho.rows()) throw std::invalid_argument("apply_on_subsystem: dims mismatch");

    Matrix out(pre * n.d_out() * post, pre * n.d_out() * post);
    const Matrix ipre = Matrix::identity(pre);
    const Matrix ipost = Matrix::identity(post);
    for (const Matrix& k : n.kraus()) {
        const Matrix emb = kron(kron(ipre, k), ipost);
        out += emb * rho * emb.adjoint();
    }
    if (dims_out) {
        *dims_out = dims;
        (*dims_out)[static_cast<std::size_t>(acting_on)] = n.d_out();
    }
    return out;
}

DensityOperator apply_channel(const QuantumChannel& n, const DensityOperator& rho, int acting_on) {
    std::vector<int> dims_out;
    Matrix out = apply_on_subsystem(n, rho.op, rho.dims, acting_on, &dims_out);
    // Roundoff from the Kraus sums can leave a 1e-15 hermiticity defect.
    out = (out + out.adjoint()) * Cx(0.5, 0.0);
    return DensityOperator(std::move(out), std::move(dims_out));
}

QuantumChannel channel_tensor_power(const QuantumChannel& n, int k) {
    if (k <= 0) throw std::invalid_argument("channel_tensor_power: k must be positive");
    double din_p = 1.0, dout_p = 1.0;
    for (int i = 0; i < k; ++i) {
        din_p *= n.d_in();
        dout_p *= n.d_out();
        if (din_p > 64.0 || dout_p > 64.0)
            throw std::length_error("channel_tensor_power: dimension exceeds 64");
    }
    std::vector<Matrix> acc = {Matrix::identity(1)};
    for (int i = 0; i < k; ++i) {
        std::vector<Matrix> next;
        next.reserve(acc.size() * n.kraus().size());
        for (const Matrix& a : acc)
            for (const Matrix& b : n.kraus()) next.push_back(kron(a, b));
        acc = std::move(next);
    }
    QuantumChannel out(n.name() + "^" + std::to_string(k), std::move(acc));
    // Products of basis-diagonal channels stay basis-diagonal; the full unitary
    // group does not survive tensoring, so that tag is dropped.
    if (n.covariant(Covariance::dephasing_diagonal))
        out.declare_covariance(Covariance::dephasing_diagonal);
    return out;
}

}  // namespace qcap
