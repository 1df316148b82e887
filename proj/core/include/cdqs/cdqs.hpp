#pragma once

#include "cdqs/cds.hpp"
#include "cdqs/certify.hpp"
#include "cdqs/channel.hpp"
#include "cdqs/predicate.hpp"
#include "cdqs/verification.hpp"

#include <string>
#include <vector>

namespace cdqs {

// Alice holds Q and L and applies alice[x] : Q L -> M0; Bob applies
// bob[y] : R -> M1. The resource lives on L (x) R.
struct CdqsProtocol {
    std::string name;
    Predicate f;
    int d_q = 2;
    int d_l = 1, d_r = 1;
    DensityState resource;
    std::vector<QuantumChannel> alice;
    std::vector<QuantumChannel> bob;
    double declared_eps = 0.0, declared_delta = 0.0;

    void validate() const;
    int d_m0() const { return alice.front().d_out(); }
    int d_m1() const { return bob.front().d_out(); }
    double message_qubits() const;
    double resource_qubits() const;
};

// Resource with L and R labelled; the density matrix must be on L (x) R.
DensityState make_resource(const ComplexMatrix& psi, int d_l, int d_r);
DensityState trivial_resource();

// Choi of (A (x) B)(. (x) psi) : Q -> outA (x) outB, with A : Q L -> outA and B : R -> outB.
ComplexMatrix local_effective_choi(const QuantumChannel& a, const QuantumChannel& b, const ComplexMatrix& psi,
                                   int d_q, int d_l, int d_r);

// N^{x,y} : Q -> M0 (x) M1.
QuantumChannel effective_channel(const CdqsProtocol& p, int x, int y);

struct VerifyOptions {
    CertifyOptions certify;
    double tol = 1e-6;
    bool keep_witnesses = false;
};

VerificationReport verify_cdqs(const CdqsProtocol& p, const VerifyOptions& opt = {});

struct DecouplingValues {
    double lhs = 0.0;  // eps_lb^2 / 4
    double mid = 0.0;  // simulator distance of the complement
    double rhs = 0.0;  // 2 sqrt(eps_ub)
    double eps_ub = 0.0, eps_lb = 0.0;
    bool holds = false;
};

DecouplingValues decoupling_check(const QuantumChannel& n, const CertifyOptions& opt = {}, double tol = 1e-6);

// Messages as computational-basis states, randomness as a classically
// correlated resource; the secret z becomes the basis state |z> of Q.
CdqsProtocol embed_cds(const CdsProtocol& c);

// (1/d) sum_z <z| D(N(|z><z|)) |z>.
double classical_success(const QuantumChannel& n, const QuantumChannel& decoder);

}  // namespace cdqs
