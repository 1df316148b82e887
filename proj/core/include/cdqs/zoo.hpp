#pragma once

#include "cdqs/cds.hpp"
#include "cdqs/cdqs.hpp"

#include <string>
#include <vector>

namespace cdqs {

// Shared a in {0,1}^n, b in {0,1}; m0 = z ^ <a,x> ^ b, m1 = <a,y> ^ b.
CdsProtocol cds_equality(int n);
// Shared r in {0,1}^n, s in {0,1}; Alice sends (z ^ s, <x,r>), Bob sends r ^ s*y.
CdsProtocol cds_inner_product(int n);
// Two-bit secret over GF(2^q), q = max(n, 2): m0 = z + a x + b, m1 = a y + b.
CdsProtocol cds_equality_field(int n);
// Independent copies hiding the pair (z_a, z_b), secret index z_a * |Z_b| + z_b.
CdsProtocol cds_parallel(const CdsProtocol& a, const CdsProtocol& b);

// Pads Q with a Pauli key (a, b) and discloses the key through the CDS.
// The CDS randomness becomes a maximally correlated pure resource.
CdqsProtocol cds_to_cdqs_lift(const CdsProtocol& c);

CdqsProtocol cdqs_equality(int n);       // lift of cds_equality_field
CdqsProtocol cdqs_inner_product(int n);  // lift of two parallel inner-product CDS
CdqsProtocol cdqs_nonequality_via_negation(int n);

// Protocols for predicates depending on one party only. The 1-branch
// forwards the secret; the 0-branch forwards depolarizing(1 - lambda) of it,
// where lambda gives simulator distance `leak` (0 means a fresh I/d).
// Direct: Alice sends Q herself. Teleport: Alice teleports Q into Bob's half
// of a maximally entangled resource and sends the Bell outcome.
CdqsProtocol cdqs_direct(const Predicate& f, int d_q, double leak = 0.0);
CdqsProtocol cdqs_teleport(const Predicate& f, int d_q, double leak = 0.0);

// Registry used by the CLI.
std::vector<std::string> protocol_names();
bool is_cds_name(const std::string& name);
CdsProtocol named_cds(const std::string& name, int n);
CdqsProtocol named_cdqs(const std::string& name, int n);

// GF(2^q) multiplication with a fixed irreducible modulus, 1 <= q <= 6.
unsigned gf_mul(unsigned a, unsigned b, int q);

}  // namespace cdqs
