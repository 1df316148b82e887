#pragma once

#include "cdqs/cdqs.hpp"
#include "cdqs/qss.hpp"

namespace cdqs {

// Replaces every local channel by its complement; the environments are
// padded to a common dimension per party. Declared errors (2 sqrt d, 2 sqrt e).
CdqsProtocol negate(const CdqsProtocol& p);

// Message-qubit budget n_M + 2 n_E + n_Q of a protocol, with n_E = log2 d_L.
double negation_message_bound(const CdqsProtocol& p);

// f1 AND f2: the secret is split by qss_2of2; share Q1 goes to p1 (d_Q = 2)
// and the key register Q2 to p2 (d_Q = 4). Declared errors (e1 + e2, max d).
CdqsProtocol and_compose(const CdqsProtocol& p1, const CdqsProtocol& p2);
// f1 OR f2: qss_2of3 on a qubit secret; Alice sends Q0 in the clear and
// feeds Q1, Q2 to p1, p2 (both d_Q = 3). Declared errors (max e, d1 + d2).
CdqsProtocol or_compose(const CdqsProtocol& p1, const CdqsProtocol& p2);

// Precomposes every Alice channel with depolarizing noise on Q whose
// diamond distance to the identity is eps.
CdqsProtocol with_secret_noise(const CdqsProtocol& p, double eps);

// Follows every Alice channel with depolarizing(prob) on her message.
CdqsProtocol with_message_noise(const CdqsProtocol& p, double prob);
// Widens a channel's output by an isometric embedding into dimension d.
QuantumChannel pad_output(const QuantumChannel& n, int d, const std::string& label);

}  // namespace cdqs
