#include "cdqs/frouting.hpp"

#include "cdqs/errors.hpp"

#include <chrono>
#include <cmath>

namespace cdqs {

namespace {

// |v> -> |v>|0> or |0>|v> on (first, second), both of dimension d.
QuantumChannel split_channel(bool first, int d, const SystemDims& in, const std::string& l1, const std::string& l2) {
    ComplexMatrix v = ComplexMatrix::Zero(long(d) * d, d);
    for (int i = 0; i < d; ++i) v(first ? long(i) * d : i, i) = 1.0;
    return channel_from_kraus({v}, in, SystemDims{{l1, d}, {l2, d}});
}

int one_sided_bit(const Predicate& f, bool alice_side, int index) {
    const int m = f.inputs_per_party();
    const bool v = alice_side ? f(index, 0) : f(0, index);
    for (int other = 0; other < m; ++other)
        if ((alice_side ? f(index, other) : f(other, index)) != v)
            throw ArgumentError(std::string("predicate depends on ") + (alice_side ? "y" : "x"));
    return v ? 1 : 0;
}

}  // namespace

void FRoutingProtocol::validate() const {
    const int nx = f.inputs_per_party();
    if (int(alice.size()) != nx || int(bob.size()) != nx)
        throw ArgumentError("frouting " + name + ": need one Alice and one Bob channel per input string");
    if (resource.dim() != long(d_l) * d_r) throw ArgumentError("frouting " + name + ": resource dimension must be d_L * d_R");
    resource.validate();
    for (const auto& a : alice) {
        if (a.d_in() != d_q * d_l) throw ArgumentError("frouting " + name + ": Alice channel input must be Q (x) L");
        if (!a.out_dims().contains("AS") || !a.out_dims().contains("AK") || a.out_dims().size() != 2)
            throw ArgumentError("frouting " + name + ": Alice output must be AS (x) AK");
        if (!(a.out_dims() == alice.front().out_dims())) throw ArgumentError("frouting " + name + ": Alice output varies with x");
    }
    for (const auto& b : bob) {
        if (b.d_in() != d_r) throw ArgumentError("frouting " + name + ": Bob channel input must be R");
        if (!b.out_dims().contains("BS") || !b.out_dims().contains("BK") || b.out_dims().size() != 2)
            throw ArgumentError("frouting " + name + ": Bob output must be BS (x) BK");
        if (!(b.out_dims() == bob.front().out_dims())) throw ArgumentError("frouting " + name + ": Bob output varies with y");
    }
}

QuantumChannel routing_channel(const FRoutingProtocol& p, int x, int y) {
    const auto& a = p.alice.at(std::size_t(x));
    const auto& b = p.bob.at(std::size_t(y));
    ComplexMatrix j = local_effective_choi(a, b, p.resource.matrix, p.d_q, p.d_l, p.d_r);
    return QuantumChannel(std::move(j), SystemDims::single("Q", p.d_q), a.out_dims().concat(b.out_dims()), false);
}

QuantumChannel routed_channel(const FRoutingProtocol& p, int x, int y, bool to_bob) {
    const QuantumChannel full = routing_channel(p, x, y);
    if (to_bob) return permute_output(trace_out_outputs(full, {"AK", "BS"}), {"AS", "BK"});
    return permute_output(trace_out_outputs(full, {"AS", "BK"}), {"AK", "BS"});
}

VerificationReport verify_frouting(const FRoutingProtocol& p, const VerifyOptions& opt) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int nx = p.f.inputs_per_party();
    VerificationReport rep;
    rep.protocol = p.name;
    rep.kind = "frouting";
    rep.predicate = p.f.name();
    rep.n = p.f.n();
    rep.declared_eps = p.declared_eps;
    rep.tol = opt.tol;
    const double bits = std::log2(double(p.alice.front().out_dims().dim_of("AS"))) +
                        std::log2(double(p.bob.front().out_dims().dim_of("BS")));
    rep.message_bits = long(std::lround(std::ceil(bits - 1e-9)));
    rep.rows.resize(std::size_t(nx) * nx);
    parallel_rows(nx * nx, [&](int idx) {
        const auto r0 = std::chrono::steady_clock::now();
        InputRow row;
        row.x = idx / nx;
        row.y = idx % nx;
        row.f = p.f(row.x, row.y);
        try {
            CorrectnessCertificate c = certify_correctness(routed_channel(p, row.x, row.y, row.f), opt.certify);
            row.eps_ub = c.eps_ub;
            row.eps_lb = c.eps_lb;
            row.success = c.f_star;
            row.status = to_string(c.status);
            if (opt.keep_witnesses) row.decoder = std::move(c.decoder);
        } catch (const CapacityError& e) {
            row.status = std::string("capacity: ") + e.what();
        } catch (const NumericError& e) {
            row.status = std::string("numeric: ") + e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - r0).count();
        rep.rows[idx] = std::move(row);
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

CdqsProtocol frouting_to_cdqs(const FRoutingProtocol& p) {
    p.validate();
    CdqsProtocol c;
    c.name = p.name + "_cdqs";
    c.f = p.f;
    c.d_q = p.d_q;
    c.d_l = p.d_l;
    c.d_r = p.d_r;
    c.resource = p.resource;
    for (const auto& a : p.alice) {
        const QuantumChannel t = trace_out_outputs(a, {"AK"});
        c.alice.push_back(t.with_dims(t.in_dims(), SystemDims::single("M0", t.d_out())));
    }
    for (const auto& b : p.bob) {
        const QuantumChannel t = trace_out_outputs(b, {"BS"});
        c.bob.push_back(t.with_dims(t.in_dims(), SystemDims::single("M1", t.d_out())));
    }
    c.declared_eps = p.declared_eps;
    c.declared_delta = 2.0 * std::sqrt(p.declared_eps);
    return c;
}

FRoutingProtocol frouting_direct(const Predicate& f, int d_q, double noise) {
    FRoutingProtocol p;
    p.name = noise > 0 ? "route_direct_noisy" : "route_direct";
    p.f = f;
    p.d_q = d_q;
    p.resource = trivial_resource();
    const SystemDims in{{"Q", d_q}, {"L", 1}};
    const QuantumChannel dep = depolarizing(noise, d_q).with_dims(in, in);
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x) p.alice.push_back(compose(split_channel(one_sided_bit(f, true, x) == 1, d_q, in, "AS", "AK"), dep));
    for (int y = 0; y < m; ++y) p.bob.push_back(split_channel(true, 1, SystemDims::single("R", 1), "BS", "BK"));
    p.declared_eps = depolarizing_diamond_distance(noise, d_q);
    return p;
}

FRoutingProtocol frouting_teleport(const Predicate& f, int d_q) {
    FRoutingProtocol p;
    p.name = "route_teleport";
    p.f = f;
    p.d_q = d_q;
    p.d_l = p.d_r = d_q;
    p.resource = make_resource(max_entangled(d_q), d_q, d_q);
    const int dd = d_q * d_q;
    ComplexVector omega = ComplexVector::Zero(dd);
    for (int i = 0; i < d_q; ++i) omega(long(i) * d_q + i) = 1.0 / std::sqrt(double(d_q));
    // Bell outcome k written to both AS and AK.
    std::vector<ComplexMatrix> kraus;
    for (int a = 0; a < d_q; ++a)
        for (int b = 0; b < d_q; ++b) {
            const ComplexVector bell = tensor_product(weyl(a, b, d_q), ComplexMatrix::Identity(d_q, d_q)) * omega;
            ComplexMatrix k = ComplexMatrix::Zero(long(dd) * dd, dd);
            const long kk = long(a) * d_q + b;
            k.row(kk * dd + kk) = bell.adjoint();
            kraus.push_back(std::move(k));
        }
    const QuantumChannel bell =
        channel_from_kraus(kraus, SystemDims{{"Q", d_q}, {"L", d_q}}, SystemDims{{"AS", dd}, {"AK", dd}});
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x) p.alice.push_back(bell);
    for (int y = 0; y < m; ++y)
        p.bob.push_back(split_channel(one_sided_bit(f, false, y) == 0, d_q, SystemDims::single("R", d_q), "BS", "BK"));
    return p;
}

FRoutingProtocol frouting_always_keep(const Predicate& f, int d_q) {
    FRoutingProtocol p;
    p.name = "route_keep";
    p.f = f;
    p.d_q = d_q;
    p.resource = trivial_resource();
    const SystemDims in{{"Q", d_q}, {"L", 1}};
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x) p.alice.push_back(split_channel(false, d_q, in, "AS", "AK"));
    for (int y = 0; y < m; ++y) p.bob.push_back(split_channel(true, 1, SystemDims::single("R", 1), "BS", "BK"));
    return p;
}

}  // namespace cdqs
