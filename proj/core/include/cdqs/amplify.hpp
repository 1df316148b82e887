#pragma once

#include "cdqs/cdqs.hpp"
#include "cdqs/codes.hpp"
#include "cdqs/distance.hpp"

namespace cdqs {

struct AmplifyResult {
    std::string code;
    QuantumChannel logical;       // decoder o instance^(x)m o encoder
    double instance_error = 0.0;  // diamond distance of one instance to the identity
    double measured_error = 0.0;  // diamond distance of the logical channel to the identity
    double bound = 0.0;
    bool holds = false;  // measured_error <= bound
    std::string status = "optimal";
};

// Every physical qubit passes independently through `instance` (a qubit
// channel). Throws ArgumentError when the instance error is above the
// bound's threshold.
AmplifyResult amplify(const QuantumChannel& instance, const CodeSpec& code, const SdpOptions& opt = {});

// Per-instance channel of a protocol on a 1-input: the certified decoder
// after N^{x,y}, followed by depolarizing noise with diamond error noise_eps.
QuantumChannel protocol_instance(const CdqsProtocol& p, int x, int y, double noise_eps, const SdpOptions& opt = {});

}  // namespace cdqs
