#include "cdqs/amplify.hpp"

#include "cdqs/certify.hpp"
#include "cdqs/errors.hpp"

namespace cdqs {

namespace {

// Applies a qubit channel, given by Kraus operators, to qubit q of an m-qubit operator.
ComplexMatrix apply_on_qubit(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& x, int q, int m) {
    const long left = 1L << q, right = 1L << (m - q - 1);
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& k : kraus) {
        const ComplexMatrix full = tensor_product({ComplexMatrix::Identity(left, left), k, ComplexMatrix::Identity(right, right)});
        out.noalias() += full * x * full.adjoint();
    }
    return out;
}

}  // namespace

AmplifyResult amplify(const QuantumChannel& instance, const CodeSpec& code, const SdpOptions& opt) {
    if (instance.d_in() != 2 || instance.d_out() != 2) throw ArgumentError("amplify: instance must be a qubit channel");
    AmplifyResult r;
    r.code = code.name;
    const QuantumChannel id = identity_channel(2);
    const QuantumChannel inst = instance.with_dims(id.in_dims(), id.out_dims());
    const DiamondResult di = diamond_distance(inst, id, opt);
    r.instance_error = di.value;
    r.bound = noise_bound(code.m, code.t, r.instance_error);

    const auto kraus = kraus_operators(inst);
    ComplexMatrix j = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ComplexMatrix x = code.encoder.col(a) * code.encoder.col(b).adjoint();
            for (int q = 0; q < code.m; ++q) x = apply_on_qubit(kraus, x, q, code.m);
            j.block(2 * a, 2 * b, 2, 2) = code.decoder.apply(x);
        }
    r.logical = QuantumChannel(hermitian_part(j), id.in_dims(), id.out_dims());
    const DiamondResult dl = diamond_distance(r.logical, id, opt);
    r.measured_error = dl.value;
    if (di.status != SdpStatus::Optimal) r.status = to_string(di.status);
    else if (dl.status != SdpStatus::Optimal) r.status = to_string(dl.status);
    r.holds = r.measured_error <= r.bound;
    return r;
}

QuantumChannel protocol_instance(const CdqsProtocol& p, int x, int y, double noise_eps, const SdpOptions& opt) {
    if (p.d_q != 2) throw ArgumentError("protocol_instance: amplification needs a qubit secret");
    if (!p.f(x, y)) throw ArgumentError("protocol_instance: (x, y) must be a 1-input");
    const QuantumChannel n = effective_channel(p, x, y);
    const DecoderResult d = optimal_decoder_fidelity(n, nullptr, opt);
    const QuantumChannel noise = depolarizing(depolarizing_p_for_diamond(noise_eps, 2), 2);
    const QuantumChannel dn = compose(d.decoder, n);
    return compose(noise, dn.with_dims(noise.in_dims(), noise.in_dims()));
}

}  // namespace cdqs
