#pragma once

#include "cdqs/cdqs.hpp"
#include "cdqs/distance.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cdqs {

struct Distribution {
    std::vector<double> p;

    Distribution() = default;
    explicit Distribution(std::vector<double> probs);  // validated: nonnegative, sums to 1 +- 1e-12
    int size() const { return int(p.size()); }
    static Distribution random(int support, std::uint64_t seed);
};

double l2_distance_sq(const Distribution& d0, const Distribution& d1);

// Collision tester with three random bits (b1 b2 b3, b1 most significant).
// b1 = 0: output b3. Otherwise (b2, b3) picks the query pair: 00 -> (D0, D0),
// 01 -> (D1, D1), 1x -> (D0, D1). Output 1 iff a same pair collides or a
// cross pair does not.
int l2_distinguisher_run(const std::function<int()>& oracle0, const std::function<int()>& oracle1, unsigned bits);
// Exact output-1 probability by enumerating the random bits and outcome pairs.
double l2_distinguisher_exact(const Distribution& d0, const Distribution& d1);
// Empirical output-1 frequency over `runs` seeded executions.
double l2_distinguisher_sampled(const Distribution& d0, const Distribution& d1, long runs, std::uint64_t seed);

struct HaarCheck {
    double estimate = 0.0;
    double exact = 0.0;      // ||rho - sigma||_2^2 / (d + 1)
    double std_error = 0.0;  // of the estimate
};
// Mean over Haar unitaries of ||D0(U) - D1(U)||_2^2, with D(U) the
// computational-basis distribution of U rho U^dag.
HaarCheck haar_l2_identity_check(const ComplexMatrix& rho, const ComplexMatrix& sigma, int samples, std::uint64_t seed);

// rho_{Qbar M} = (id (x) N)(Phi+), Qbar first.
ComplexMatrix reference_state(const QuantumChannel& n);
// ||rho - rho_Qbar (x) rho_M||_1 and its squared Hilbert-Schmidt counterpart.
double product_distance_trace(const ComplexMatrix& rho, int d_ref);
double product_distance_hs_sq(const ComplexMatrix& rho, int d_ref);

struct OneWayOptions {
    std::string mode = "oracle";  // oracle | sampled
    double eps = 0.09;            // assumed correctness and security of the protocol
    double threshold = 0.293;
    double constant = 10.0;       // C in k = ceil(C d^2 ln(1/delta_fail) / eps_tilde^2)
    double delta_fail = 0.05;
    double eps_tilde = 0.1;
    long copies = 0;  // overrides k when positive
    int trials = 1;
    std::uint64_t seed = 1;
};

struct OneWayRow {
    int x = 0, y = 0;
    bool f = false;
    double distance = 0.0;  // exact
    double estimate = 0.0;  // tomography estimate (sampled mode), else the exact value
    int misclassified = 0;  // over trials
    bool gap_ok = true;     // distance outside (lower, upper)
};

struct OneWayReport {
    std::string protocol;
    std::string mode;
    double threshold = 0.0;
    double lower = 0.0;  // eps: bound on 0-input distances
    double upper = 0.0;  // 2 (1 - 1/sqrt d_Q) - eps: bound on 1-input distances
    long copies = 1;     // k
    double constant = 0.0, delta_fail = 0.0, eps_tilde = 0.0;
    int trials = 1;
    double message_qubits = 0.0;  // Bob -> Alice: k log2 d_M1
    std::uint64_t seed = 0;
    std::vector<OneWayRow> rows;
    int misclassified = 0;
    bool all_correct = false;
    bool gap_ok = false;
};

// Sampled mode needs d_Q d_M to be a power of two (Pauli tomography).
OneWayReport one_way_reduction(const CdqsProtocol& p, const OneWayOptions& opt = {});
long tomography_copies(int d, const OneWayOptions& opt);

struct PpRow {
    int x = 0, y = 0;
    bool f = false;
    double hs_sq = 0.0;   // ||rho_{Qbar M} - rho_Qbar (x) rho_M||_2^2
    double accept = 0.0;  // probability of outputting f(x, y)
    double bias = 0.0;    // accept - 1/2
};

struct PpReport {
    std::string protocol;
    double eps = 0.09;
    int d = 0;  // d_Qbar d_M
    double s0 = 0.0, s = 0.0;
    double beta = 0.0;
    double qubits = 0.0;
    double cost = 0.0;
    bool marginal_ok = false;  // rho_Qbar = I/d_Q on every input
    double delta_hat = 0.0;    // certified privacy
    bool valid = false;
    std::vector<PpRow> rows;
};

double pp_s0(double eps, int d);
// Requires certified delta_hat <= private_tol.
PpReport pp_reduction(const CdqsProtocol& p, double eps = 0.09, const SdpOptions& opt = {}, double private_tol = 1e-8);

struct QipTranscript {
    std::string protocol;
    int ell = 1;
    int copies = 1;  // parallel instances of p
    double completeness = 0.0;
    double soundness_bound = 0.0;
    double eps = 0.0;    // certified correctness, worst 1-input
    double delta = 0.0;  // certified privacy, worst 0-input
    double t = 0.0;      // message qubits of the copies
    double communication = 0.0;
    bool completeness_ok = false;  // >= (1 - eps)^copies
    bool soundness_ok = false;     // <= 2^-ell + delta + 1e-6
};

// ell must be a multiple of log2 d_Q; copies = ell / log2 d_Q independent
// instances. Success probabilities of independent instances multiply.
QipTranscript qip2_from_cdqs(const CdqsProtocol& p, int ell, const CertifyOptions& opt = {});

struct HvqszkResult {
    int x = 0, y = 0;
    ComplexMatrix real_state;  // sum_z |z><z| (x) sum_z' P(z'|z) |z'><z'| / 2^ell
    ComplexMatrix sim_state;   // sum_z |z><z| (x) |z><z| / 2^ell
    double pr_equal = 0.0;
    double distance = 0.0;  // ||real - sim||_1
    double bound = 0.0;     // 2 sqrt(1 - pr_equal)
    bool holds = false;
};

// Honest Merlin applies the fidelity-optimal decoder and measures in the
// computational basis. Uses the worst 1-input.
HvqszkResult hvqszk_check(const CdqsProtocol& p, int ell, const CertifyOptions& opt = {});

}  // namespace cdqs
