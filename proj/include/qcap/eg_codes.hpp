#pragma once

// Entanglement-generation codes with local-operation decoders, their fidelity
// against a channel, and checks of the one-shot fidelity bound.

#include <functional>
#include <string>
#include <vector>

#include "qcap/channel_bounds.hpp"
#include "qcap/channels.hpp"
#include "qcap/states.hpp"

namespace qcap {

// Code of size m: Alice prepares encoder_state on [memory, channel input],
// sends the input system through the channel, then each side applies its own
// local decoder into an m-dimensional half of the target entangled pair.
struct EGCode {
    int m = 1;
    PureState encoder_state;       // dims {d_memory, d_in}
    QuantumChannel decoder_alice;  // d_memory -> m
    QuantumChannel decoder_bob;    // d_channel_out -> m
    std::string name;
};

// Tensor product of the two local decoders as one channel on [memory, out].
// Builds the full Kraus set; intended for small dimensions only.
QuantumChannel joint_decoder(const EGCode& code);

// F = <Phi_m| (D_A (x) D_B N) (encoder) |Phi_m>, evaluated through the
// factorized amplitude sum (1/m) sum |tr(L_a Psi (M_b K_j)^T)|^2.
double code_fidelity(const EGCode& code, const QuantumChannel& n);

// Binary flag state diag(1 - f, f) with f = tr{Phi omega}.
DensityOperator entanglement_test(const DensityOperator& omega);

struct CodePerformance {
    double fidelity = 0.0;
    double bound = 0.0;
    double alpha_used = 0.0;
    bool satisfied = false;  // fidelity <= bound + 1e-7
};

// Evaluates the code fidelity against 2^(-((alpha-1)/alpha)(log m - renyi)).
// The first overload solves the channel's Renyi quantity itself.
CodePerformance verify_oneshot_bound(const EGCode& code, const QuantumChannel& n, double alpha);
CodePerformance verify_oneshot_bound(const EGCode& code, const QuantumChannel& n, double alpha,
                                     double renyi_rains);

struct DecayRow {
    int n = 0;
    double log_m = 0.0;
    double fidelity = 0.0;
    double bound = 0.0;
    double empirical_exponent = 0.0;
};

// family(n) must produce a code matched to n channel uses.
using CodeFamily = std::function<EGCode(int)>;

// Per n in 1..n_max: fidelity of family(n) against n channel uses, the
// fidelity bound with the weak-subadditivity estimate of the n-copy Renyi
// quantity, and -(1/n) log2 F. Requires d_in^n_max <= 64.
std::vector<DecayRow> sc_decay_sweep(const CodeFamily& family, const QuantumChannel& n, int n_max,
                                     double alpha);
std::vector<DecayRow> sc_decay_sweep(const CodeFamily& family, const QuantumChannel& n, int n_max,
                                     double alpha, double single_copy_renyi);

// Code families.
//
// Trivial code: encoder Phi_m with m = d_in, identity decode on the memory
// side; on the output side identity when d_out == m, otherwise the code
// subspace is kept and the complement is routed to the maximally mixed state.
EGCode make_trivial_code(const QuantumChannel& n);

// Transpose-channel decode: Bob applies T_i = pi^{1/2} K_i^dag S^{-1/2} with
// S = N(pi); kernel directions of S are routed to |0>.
EGCode make_petz_code(const QuantumChannel& n);

// Rate-2 code on n uses of the qubit identity channel: m = 4^n, encoder
// Phi_{2^n}, both decoders isometric embeddings of the 2^n-dim halves.
EGCode make_rate2_identity_code(int n_uses);

CodeFamily trivial_family(const QuantumChannel& single_copy);
CodeFamily petz_family(const QuantumChannel& single_copy);
CodeFamily rate2_identity_family();

}  // namespace qcap
