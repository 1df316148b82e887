#pragma once

#include "cdqs/distance.hpp"

#include <limits>

namespace cdqs {

struct CertifyOptions {
    SdpOptions sdp;
    int seesaw_steps = 5;
    double seesaw_tol = 1e-8;
    // Skip the simulator bound when the complement's support exceeds this.
    int simulator_rank_cap = 128;
};

struct CorrectnessCertificate {
    double eps_ub = 0.0;
    double eps_lb = 0.0;
    double f_star = 0.0;
    double s_hat = std::numeric_limits<double>::quiet_NaN();  // simulator value of the complement
    int seesaw_used = 0;
    SdpStatus status = SdpStatus::Optimal;
    QuantumChannel decoder;
};

// Two-sided bounds on inf_D || D o N - id ||_diamond.
CorrectnessCertificate certify_correctness(const QuantumChannel& n, const CertifyOptions& opt = {});

ComplexMatrix identity_choi(int d);

}  // namespace cdqs
