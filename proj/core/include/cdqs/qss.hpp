#pragma once

#include "cdqs/channel.hpp"

#include <string>
#include <vector>

namespace cdqs {

struct SecretSharingScheme {
    QuantumChannel encoder;                       // Q -> shares
    std::vector<std::vector<std::string>> sets;   // authorized share sets
    std::vector<QuantumChannel> reconstructors;   // one per authorized set, shares -> S
};

// ((2,2)): Q1 = Pauli-padded qubit, Q2 = two-bit key register.
SecretSharingScheme qss_2of2();
// ((2,3)) over qutrits: |s> -> sum_c |c, c+s, c+2s> / sqrt 3; secret_dim in {2, 3}
// embeds a qubit as the span of |0>, |1>. Reconstructors output a qutrit.
SecretSharingScheme qss_2of3(int secret_dim = 3);

// Channel from the encoder input to the listed shares (others traced out).
QuantumChannel share_marginal(const SecretSharingScheme& s, const std::vector<std::string>& keep);

}  // namespace cdqs
