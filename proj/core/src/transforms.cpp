#include "cdqs/transforms.hpp"

#include "cdqs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdqs {

QuantumChannel pad_output(const QuantumChannel& n, int d, const std::string& label) {
    const int din = n.d_in(), dout = n.d_out();
    if (d < dout) throw ArgumentError("pad_output: target dimension smaller than the output");
    ComplexMatrix j = ComplexMatrix::Zero(long(din) * d, long(din) * d);
    for (int a = 0; a < din; ++a)
        for (int b = 0; b < din; ++b) j.block(long(a) * d, long(b) * d, dout, dout) = n.image(a, b);
    return QuantumChannel(std::move(j), n.in_dims(), SystemDims::single(label, d), false);
}

namespace {

std::vector<QuantumChannel> complements(const std::vector<QuantumChannel>& chans, const std::string& label) {
    std::vector<QuantumChannel> out;
    int env = 1;
    for (const auto& c : chans) {
        out.push_back(complementary_channel(c, label));
        env = std::max(env, out.back().d_out());
    }
    for (auto& c : out)
        if (c.d_out() != env) c = pad_output(c, env, label);
    return out;
}

}  // namespace

CdqsProtocol negate(const CdqsProtocol& p) {
    p.validate();
    CdqsProtocol q = p;
    q.name = "not_" + p.name;
    q.f = p.f.negated();
    q.alice = complements(p.alice, "EA");
    q.bob = complements(p.bob, "EB");
    q.declared_eps = 2.0 * std::sqrt(p.declared_delta);
    q.declared_delta = 2.0 * std::sqrt(p.declared_eps);
    return q;
}

double negation_message_bound(const CdqsProtocol& p) {
    return p.message_qubits() + 2.0 * std::log2(double(p.d_l)) + std::log2(double(p.d_q));
}

namespace {

QuantumChannel relabel(const QuantumChannel& c, SystemDims in, SystemDims out) { return c.with_dims(std::move(in), std::move(out)); }

// Resource psi1 on L1 R1 and psi2 on L2 R2, reordered to L1 L2 R1 R2.
ComplexMatrix joint_resource(const CdqsProtocol& a, const CdqsProtocol& b) {
    const ComplexMatrix t = tensor_product(a.resource.matrix, b.resource.matrix);
    return permute_systems(t, {a.d_l, a.d_r, b.d_l, b.d_r}, {0, 2, 1, 3});
}

// Alice's composite: encoder on Q, then sub-channels on (share_i, L_i).
// clear lists shares sent without processing, placed first in the message.
QuantumChannel composite_alice(const QuantumChannel& enc, const std::vector<std::string>& clear,
                               const std::string& s1, const QuantumChannel& a1, const std::string& s2,
                               const QuantumChannel& a2, int d_l1, int d_l2) {
    const int dq = enc.d_in();
    const SystemDims in{{"Q", dq}, {"L1", d_l1}, {"L2", d_l2}};
    const QuantumChannel e = relabel(enc, SystemDims::single("Q", dq), enc.out_dims());
    const QuantumChannel c1 = relabel(a1, SystemDims{{s1, enc.out_dims().dim_of(s1)}, {"L1", d_l1}},
                                      SystemDims::single("A1", a1.d_out()));
    const QuantumChannel c2 = relabel(a2, SystemDims{{s2, enc.out_dims().dim_of(s2)}, {"L2", d_l2}},
                                      SystemDims::single("A2", a2.d_out()));
    std::vector<std::pair<std::string, int>> outs;
    for (const auto& c : clear) outs.emplace_back(c, enc.out_dims().dim_of(c));
    outs.emplace_back("A1", a1.d_out());
    outs.emplace_back("A2", a2.d_out());
    std::vector<std::string> order;
    for (const auto& o : outs) order.push_back(o.first);
    const int din = int(in.total());
    SystemDims out_dims;
    ComplexMatrix j = choi_of(din, int(SystemDims(outs).total()), [&](const ComplexMatrix& x) {
        auto [y, dy] = apply_local(e, x, in, {"Q"});
        auto [y1, dy1] = apply_local(c1, y, dy, {s1, "L1"});
        auto [y2, dy2] = apply_local(c2, y1, dy1, {s2, "L2"});
        std::vector<int> perm;
        for (const auto& o : order) perm.push_back(int(dy2.index_of(o)));
        return permute_systems(y2, dy2.dims(), perm);
    });
    long dm0 = 1;
    for (const auto& o : outs) dm0 *= o.second;
    return QuantumChannel(std::move(j), in, SystemDims::single("M0", int(dm0)));
}

CdqsProtocol combine(const CdqsProtocol& p1, const CdqsProtocol& p2, const SecretSharingScheme& qss,
                     const std::vector<std::string>& clear, const std::string& s1, const std::string& s2) {
    if (p1.f.n() != p2.f.n()) throw ArgumentError("composition: sub-protocols must share the input length");
    CdqsProtocol p;
    p.d_q = qss.encoder.d_in();
    p.d_l = p1.d_l * p2.d_l;
    p.d_r = p1.d_r * p2.d_r;
    p.resource = make_resource(joint_resource(p1, p2), p.d_l, p.d_r);
    const int m = p1.f.inputs_per_party();
    for (int x = 0; x < m; ++x) {
        QuantumChannel a = composite_alice(qss.encoder, clear, s1, p1.alice[x], s2, p2.alice[x], p1.d_l, p2.d_l);
        p.alice.push_back(a.with_dims(SystemDims{{"Q", p.d_q}, {"L", p.d_l}}, a.out_dims()));
    }
    for (int y = 0; y < m; ++y) {
        const QuantumChannel b1 = relabel(p1.bob[y], SystemDims::single("R1", p1.d_r), SystemDims::single("B1", p1.d_m1()));
        const QuantumChannel b2 = relabel(p2.bob[y], SystemDims::single("R2", p2.d_r), SystemDims::single("B2", p2.d_m1()));
        QuantumChannel b = tensor_channels(b1, b2);
        p.bob.push_back(b.with_dims(SystemDims::single("R", p.d_r), SystemDims::single("M1", b.d_out())));
    }
    return p;
}

}  // namespace

CdqsProtocol and_compose(const CdqsProtocol& p1, const CdqsProtocol& p2) {
    p1.validate();
    p2.validate();
    if (p1.d_q != 2 || p2.d_q != 4)
        throw ArgumentError("and_compose: share dimensions are 2 (first) and 4 (second)");
    CdqsProtocol p = combine(p1, p2, qss_2of2(), {}, "Q1", "Q2");
    p.name = "and(" + p1.name + "," + p2.name + ")";
    p.f = p1.f.conjunction(p2.f);
    p.declared_eps = p1.declared_eps + p2.declared_eps;
    p.declared_delta = std::max(p1.declared_delta, p2.declared_delta);
    return p;
}

CdqsProtocol or_compose(const CdqsProtocol& p1, const CdqsProtocol& p2) {
    p1.validate();
    p2.validate();
    if (p1.d_q != 3 || p2.d_q != 3) throw ArgumentError("or_compose: both share dimensions are 3");
    CdqsProtocol p = combine(p1, p2, qss_2of3(2), {"Q0"}, "Q1", "Q2");
    p.name = "or(" + p1.name + "," + p2.name + ")";
    p.f = p1.f.disjunction(p2.f);
    p.declared_eps = std::max(p1.declared_eps, p2.declared_eps);
    p.declared_delta = p1.declared_delta + p2.declared_delta;
    return p;
}

CdqsProtocol with_secret_noise(const CdqsProtocol& p, double eps) {
    p.validate();
    const double prob = depolarizing_p_for_diamond(eps, p.d_q);
    const QuantumChannel noise = tensor_channels(depolarizing(prob, p.d_q), identity_channel(p.d_l, "L"));
    CdqsProtocol q = p;
    for (auto& a : q.alice) a = compose(a, noise.with_dims(a.in_dims(), a.in_dims()));
    q.declared_eps = p.declared_eps + eps;
    q.name = p.name + "_noisy";
    return q;
}

CdqsProtocol with_message_noise(const CdqsProtocol& p, double prob) {
    p.validate();
    CdqsProtocol q = p;
    for (auto& a : q.alice) {
        const QuantumChannel noise = depolarizing(prob, a.d_out()).with_dims(a.out_dims(), a.out_dims());
        a = compose(noise, a);
    }
    q.declared_eps = p.declared_eps + depolarizing_diamond_distance(prob, p.d_m0());
    q.name = p.name + "_msgnoise";
    return q;
}

}  // namespace cdqs
