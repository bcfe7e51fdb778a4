// Quantum channels in Kraus form, with cached Choi operator and tensor powers.
//
// Completeness is enforced at construction: ||sum K^dagger K - I||_F <= 1e-8.
// The Choi operator is trace-normalized, J = (id x N)(Phi), on dims
// {d_in, d_out}; its reference marginal equals I/d_in for any valid channel.
// It is built on first request, so channels whose Choi would be huge (decoder
// isometries into a large code space) stay cheap as long as nobody asks.
// Covariance tags carried by zoo-built channels unlock the reduced Rains
// computations; channels loaded from files carry none.

#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcap/states.hpp"

namespace qcap {

enum class Covariance { dephasing_diagonal, full_unitary_group };

struct ChannelValidationReport {
    double completeness_residual = 0.0;  // ||sum K^dagger K - I||_F
    double choi_min_eig = 0.0;
    double choi_marginal_residual = 0.0;  // ||tr_out J - I/d_in||_F
    bool valid = false;
};

// Report-only CPTP check on a raw Kraus list; never throws on bad input.
ChannelValidationReport validate_kraus(const std::vector<Matrix>& kraus);

class QuantumChannel {
public:
    QuantumChannel(std::string name, std::vector<Matrix> kraus);

    const std::string& name() const { return name_; }
    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    const Matrix& choi() const;  // dims {d_in, d_out}; built on first use

    const std::set<Covariance>& covariances() const { return covariances_; }
    void declare_covariance(Covariance c) { covariances_.insert(c); }
    bool covariant(Covariance c) const { return covariances_.count(c) > 0; }

    // How a reference unitary U on the input lifts to the output under
    // full-unitary-group covariance; identity except for the erasure family,
    // which pads with the untouched flag direction (U + [1] block).
    Matrix output_unitary(const Matrix& u) const;
    void set_erasure_output_padding(bool pad) { erasure_padding_ = pad; }

    // N applied to a d_in x d_in matrix (no state validation; linear).
    Matrix apply_matrix(const Matrix& rho) const;
    // Same map evaluated by contraction against the Choi operator:
    // N(rho) = d_in * tr_R[(rho^T x I) J].  Agrees with apply_matrix.
    Matrix apply_via_choi(const Matrix& rho) const;

private:
    // Kraus data is immutable after construction, so copies share one Choi
    // cache; the flag makes the first build race-free.
    struct LazyChoi {
        std::once_flag once;
        Matrix value;
    };

    std::string name_;
    std::vector<Matrix> kraus_;
    int d_in_, d_out_;
    std::shared_ptr<LazyChoi> choi_;
    std::set<Covariance> covariances_;
    bool erasure_padding_ = false;
};

ChannelValidationReport validate_channel(const QuantumChannel& n);

// Channel applied to tensor factor acting_on of a multipartite state; the
// remaining factors are untouched and dims picks up d_out at that slot.
DensityOperator apply_channel(const QuantumChannel& n, const DensityOperator& rho, int acting_on);
// Raw-matrix version used by optimizer loops (returns the output matrix and
// writes the updated dims).
Matrix apply_on_subsystem(const QuantumChannel& n, const Matrix& rho, const std::vector<int>& dims,
                          int acting_on, std::vector<int>* dims_out = nullptr);

// k-fold tensor power; Kraus set is every k-fold product in lexicographic
// order.  Throws std::length_error once d_in^k or d_out^k exceeds 64.
QuantumChannel channel_tensor_power(const QuantumChannel& n, int k);

}  // namespace qcap
