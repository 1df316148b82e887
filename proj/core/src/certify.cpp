#include "cdqs/certify.hpp"

#include <algorithm>
#include <cmath>

namespace cdqs {

ComplexMatrix identity_choi(int d) {
    ComplexMatrix j = ComplexMatrix::Zero(long(d) * d, long(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) j(long(a) * d + a, long(b) * d + b) = 1.0;
    return j;
}

namespace {

SdpStatus combine(SdpStatus a, SdpStatus b) {
    if (a == SdpStatus::Infeasible || b == SdpStatus::Infeasible) return SdpStatus::Infeasible;
    if (a == SdpStatus::MaxIter || b == SdpStatus::MaxIter) return SdpStatus::MaxIter;
    return SdpStatus::Optimal;
}

}  // namespace

CorrectnessCertificate certify_correctness(const QuantumChannel& n, const CertifyOptions& opt) {
    const int dq = n.d_in();
    const ComplexMatrix id = identity_choi(dq);
    CorrectnessCertificate cert;

    DecoderResult dec = optimal_decoder_fidelity(n, nullptr, opt.sdp);
    cert.f_star = dec.f_star;
    cert.status = dec.status;
    DiamondResult dn = diamond_norm(dec.composed - id, dq, dq, opt.sdp);
    cert.status = combine(cert.status, dn.status);
    cert.eps_ub = dn.value;
    cert.decoder = dec.decoder;

    // See-saw: re-fit the decoder to the current worst-case input.
    ComplexMatrix worst = dn.worst_input;
    for (int step = 0; step < opt.seesaw_steps && cert.eps_ub >= opt.seesaw_tol; ++step) {
        if (worst.size() == 0) break;
        DecoderResult alt = optimal_decoder_fidelity(n, &worst, opt.sdp);
        DiamondResult adn = diamond_norm(alt.composed - id, dq, dq, opt.sdp);
        ++cert.seesaw_used;
        if (alt.status != SdpStatus::Optimal || adn.status != SdpStatus::Optimal) break;
        if (adn.value > cert.eps_ub - opt.seesaw_tol) break;
        cert.eps_ub = adn.value;
        cert.decoder = alt.decoder;
        worst = adn.worst_input;
    }

    // Lower bounds: Choi-state fidelity and the complement's simulator distance.
    cert.eps_lb = std::max(0.0, 2.0 * (1.0 - cert.f_star));
    const QuantumChannel comp = complementary_channel(n);
    if (decompose_channel_output(comp).support_rank() <= opt.simulator_rank_cap) {
        const SimulatorResult sim = optimal_constant_simulator(comp, opt.sdp);
        if (sim.status == SdpStatus::Optimal) {
            cert.s_hat = sim.delta_star;
            cert.eps_lb = std::max(cert.eps_lb, 0.25 * sim.delta_star * sim.delta_star);
        }
    }
    // Rounding at solver tolerance must not invert the bracket.
    if (cert.eps_lb > cert.eps_ub && cert.eps_lb - cert.eps_ub < 1e-6) cert.eps_lb = cert.eps_ub;
    return cert;
}

}  // namespace cdqs
