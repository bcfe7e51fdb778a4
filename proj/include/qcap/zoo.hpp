// Built-in channel families with covariance declarations and known reference
// values.
//
// Families: identity, qubit_dephasing, generalized_dephasing (given
// environment states, or the symmetric constant-overlap member), erasure,
// depolarizing.  Channels built here carry covariance tags that unlock the
// reduced Rains computations; the identity channel is a generalized dephasing
// channel (all environment states equal), so it carries both tags.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcap/channels.hpp"

namespace qcap {

struct ChannelFamilySpec {
    std::string family;                    // one of the names above
    std::map<std::string, double> params;  // d, p, q, c as applicable
};

struct AnalyticReference {
    std::optional<double> coherent_info;
    std::optional<double> rains_info;
    std::optional<double> quantum_capacity;
    std::optional<double> pp_quantum_capacity;  // with classical pre/post-processing
};

// Clock and shift unitaries: clock|j> = exp(2 pi i j / d)|j>, shift|j> = |j+1 mod d>.
Matrix clock_unitary(int d, int power = 1);
Matrix shift_unitary(int d, int power = 1);

QuantumChannel make_identity(int d);
QuantumChannel make_qubit_dephasing(double p);
// One Kraus operator per environment dimension; env_states must be unit
// vectors, one per input basis element.
QuantumChannel make_generalized_dephasing(const std::vector<std::vector<Cx>>& env_states);
// Constant pairwise overlap c in [-1/(d-1), 1]; d = 2 with c = 1 - 2p matches
// make_qubit_dephasing(p) as a map.
QuantumChannel make_generalized_dephasing_symmetric(int d, double c);
QuantumChannel make_erasure(int d, double p);
QuantumChannel make_depolarizing(int d, double q);

QuantumChannel make_from_family(const ChannelFamilySpec& spec);
AnalyticReference analytic_reference(const ChannelFamilySpec& spec);

// Gram matrix gamma_xy = <psi_y|psi_x> of a declared dephasing-diagonal
// channel, recovered from its Choi operator.  Throws if the Choi has weight
// outside the correlated blocks (declaration inconsistent with the map).
Matrix dephasing_gram(const QuantumChannel& n, double tol = 1e-8);

}  // namespace qcap
