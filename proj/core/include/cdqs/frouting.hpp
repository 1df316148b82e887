#pragma once

#include "cdqs/cdqs.hpp"

#include <string>
#include <vector>

namespace cdqs {

// One-round routing. Alice applies alice[x] : Q L -> AS AK and Bob applies
// bob[y] : R -> BS BK. After the exchange Bob holds M = AS BK and Alice
// holds M' = AK BS. Q must be recoverable from M when f = 1 and from M'
// when f = 0.
struct FRoutingProtocol {
    std::string name;
    Predicate f;
    int d_q = 2;
    int d_l = 1, d_r = 1;
    DensityState resource;
    std::vector<QuantumChannel> alice;  // outputs labelled AS, AK
    std::vector<QuantumChannel> bob;    // outputs labelled BS, BK
    double declared_eps = 0.0;

    void validate() const;
};

// Q -> AS AK BS BK for the input pair (x, y).
QuantumChannel routing_channel(const FRoutingProtocol& p, int x, int y);
// The system Bob ends with (to_bob) or Alice ends with.
QuantumChannel routed_channel(const FRoutingProtocol& p, int x, int y, bool to_bob);

VerificationReport verify_frouting(const FRoutingProtocol& p, const VerifyOptions& opt = {});

// CDQS whose messages are AS and BK; AK and BS are discarded. Declared
// errors (eps, 2 sqrt eps).
CdqsProtocol frouting_to_cdqs(const FRoutingProtocol& p);

// f depends on x: Alice sends Q to Bob or keeps it. `noise` is a
// depolarizing parameter applied to Q first.
FRoutingProtocol frouting_direct(const Predicate& f, int d_q, double noise = 0.0);
// f depends on y: Alice teleports Q into R and announces the Bell outcome
// to Bob while keeping a copy; Bob keeps R or sends it to Alice.
FRoutingProtocol frouting_teleport(const Predicate& f, int d_q);
// Q never leaves Alice.
FRoutingProtocol frouting_always_keep(const Predicate& f, int d_q);

}  // namespace cdqs
