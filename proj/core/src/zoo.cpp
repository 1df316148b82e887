#include "cdqs/zoo.hpp"

#include "cdqs/errors.hpp"
#include "cdqs/transforms.hpp"

#include <cmath>

namespace cdqs {

unsigned gf_mul(unsigned a, unsigned b, int q) {
    static const unsigned modulus[] = {0, 0b11, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011};
    if (q < 1 || q > 6) throw ArgumentError("gf_mul: field degree must be in [1, 6]");
    unsigned r = 0;
    for (; b; b >>= 1) {
        if (b & 1u) r ^= a;
        a <<= 1;
        if (a & (1u << q)) a ^= modulus[q];
    }
    return r;
}

CdsProtocol cds_equality(int n) {
    CdsProtocol p;
    p.name = "cds_eq";
    p.f = Predicate::equality(n);
    p.secret_size = 2;
    p.randomness_size = 1 << (n + 1);
    p.m0_size = p.m1_size = 2;
    p.m0 = [](int x, int z, int r) { return z ^ popcount_parity(unsigned(x) & unsigned(r >> 1)) ^ (r & 1); };
    p.m1 = [](int y, int r) { return popcount_parity(unsigned(y) & unsigned(r >> 1)) ^ (r & 1); };
    return p;
}

CdsProtocol cds_inner_product(int n) {
    CdsProtocol p;
    p.name = "cds_ip";
    p.f = Predicate::inner_product(n);
    p.secret_size = 2;
    p.randomness_size = 1 << (n + 1);
    // r = (rvec, s); m0 = (alpha, gamma) as 2 * alpha + gamma.
    p.m0_size = 4;
    p.m1_size = 1 << n;
    p.m0 = [](int x, int z, int r) {
        const int s = r & 1;
        const unsigned rv = unsigned(r >> 1);
        return 2 * (z ^ s) + popcount_parity(unsigned(x) & rv);
    };
    p.m1 = [](int y, int r) { return (r >> 1) ^ ((r & 1) ? y : 0); };
    return p;
}

CdsProtocol cds_equality_field(int n) {
    const int q = std::max(n, 2);
    CdsProtocol p;
    p.name = "cds_eq_field";
    p.f = Predicate::equality(n);
    p.secret_size = 4;
    p.randomness_size = 1 << (2 * q);
    p.m0_size = p.m1_size = 1 << q;
    p.m0 = [q](int x, int z, int r) { return int(unsigned(z) ^ gf_mul(unsigned(r >> q), unsigned(x), q) ^ unsigned(r & ((1 << q) - 1))); };
    p.m1 = [q](int y, int r) { return int(gf_mul(unsigned(r >> q), unsigned(y), q) ^ unsigned(r & ((1 << q) - 1))); };
    return p;
}

CdsProtocol cds_parallel(const CdsProtocol& a, const CdsProtocol& b) {
    if (!(a.f == b.f)) throw ArgumentError("cds_parallel: predicates differ");
    a.validate();
    b.validate();
    CdsProtocol p;
    p.name = a.name + "x" + b.name;
    p.f = a.f;
    p.secret_size = a.secret_size * b.secret_size;
    p.randomness_size = a.randomness_size * b.randomness_size;
    if (!a.randomness_weights.empty() || !b.randomness_weights.empty()) {
        p.randomness_weights.resize(std::size_t(p.randomness_size));
        for (int ra = 0; ra < a.randomness_size; ++ra)
            for (int rb = 0; rb < b.randomness_size; ++rb)
                p.randomness_weights[std::size_t(ra) * b.randomness_size + rb] = a.randomness_prob(ra) * b.randomness_prob(rb);
    }
    p.m0_size = a.m0_size * b.m0_size;
    p.m1_size = a.m1_size * b.m1_size;
    const int zb = b.secret_size, rbn = b.randomness_size, m0b = b.m0_size, m1b = b.m1_size;
    auto am0 = a.m0, bm0 = b.m0;
    auto am1 = a.m1, bm1 = b.m1;
    p.m0 = [=](int x, int z, int r) { return am0(x, z / zb, r / rbn) * m0b + bm0(x, z % zb, r % rbn); };
    p.m1 = [=](int y, int r) { return am1(y, r / rbn) * m1b + bm1(y, r % rbn); };
    p.declared_eps = a.declared_eps + b.declared_eps;
    p.declared_delta = a.declared_delta + b.declared_delta;
    return p;
}

CdqsProtocol cds_to_cdqs_lift(const CdsProtocol& c) {
    c.validate();
    if (c.secret_size != 4) throw ArgumentError("cds_to_cdqs_lift: the CDS must hide exactly 2 bits (the pad key)");
    CdqsProtocol p;
    p.name = c.name + "_lift";
    p.f = c.f;
    p.d_q = 2;
    p.d_l = p.d_r = c.randomness_size;
    const int dl = p.d_l;
    ComplexVector psi = ComplexVector::Zero(long(dl) * dl);
    for (int r = 0; r < dl; ++r) psi(long(r) * dl + r) = std::sqrt(c.randomness_prob(r));
    p.resource = make_resource(psi * psi.adjoint(), dl, dl);

    const int nx = c.f.inputs_per_party();
    const SystemDims ain{{"Q", 2}, {"L", dl}};
    const SystemDims aout{{"Qp", 2}, {"M0", c.m0_size}};
    for (int x = 0; x < nx; ++x) {
        std::vector<ComplexMatrix> kraus;
        for (int k = 0; k < 4; ++k) {
            const ComplexMatrix pk = weyl(k >> 1, k & 1, 2);
            for (int r = 0; r < dl; ++r) {
                ComplexMatrix e = ComplexMatrix::Zero(c.m0_size, dl);
                e(c.m0(x, k, r), r) = 1.0;
                kraus.push_back(0.5 * tensor_product(pk, e));
            }
        }
        p.alice.push_back(channel_from_kraus(kraus, ain, aout));
    }
    for (int y = 0; y < nx; ++y) {
        std::vector<ComplexMatrix> kraus;
        for (int r = 0; r < dl; ++r) {
            ComplexMatrix e = ComplexMatrix::Zero(c.m1_size, dl);
            e(c.m1(y, r), r) = 1.0;
            kraus.push_back(e);
        }
        p.bob.push_back(channel_from_kraus(kraus, SystemDims::single("R", dl), SystemDims::single("M1", c.m1_size)));
    }
    p.declared_eps = 2.0 * std::sqrt(c.declared_eps);
    p.declared_delta = c.declared_delta;
    return p;
}

CdqsProtocol cdqs_equality(int n) {
    CdqsProtocol p = cds_to_cdqs_lift(cds_equality_field(n));
    p.name = "eq";
    return p;
}

CdqsProtocol cdqs_inner_product(int n) {
    CdqsProtocol p = cds_to_cdqs_lift(cds_parallel(cds_inner_product(n), cds_inner_product(n)));
    p.name = "ip";
    return p;
}

CdqsProtocol cdqs_nonequality_via_negation(int n) {
    if (n > 3) throw CapacityError("cdqs_nonequality_via_negation: n <= 3 required by the dimension budget");
    CdqsProtocol p = negate(cdqs_equality(n));
    p.name = "neq";
    return p;
}

namespace {

void require_one_sided(const Predicate& f, bool alice_side) {
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            const bool ref = alice_side ? f(x, 0) : f(0, y);
            if (f(x, y) != ref)
                throw ArgumentError(std::string("predicate ") + f.name() + " must depend on " + (alice_side ? "x" : "y") +
                                    " only");
        }
}

QuantumChannel forward(bool on, int d, double leak, const std::string& in, const std::string& out) {
    const double lambda = on ? 1.0 : depolarizing_p_for_diamond(leak, d);
    return depolarizing(1.0 - lambda, d, in).with_dims(SystemDims::single(in, d), SystemDims::single(out, d));
}

QuantumChannel trivial_channel(int d_in, const std::string& in, const std::string& out) {
    return replacer_channel(ComplexMatrix::Ones(1, 1), SystemDims::single(in, d_in), SystemDims::single(out, 1));
}

}  // namespace

CdqsProtocol cdqs_direct(const Predicate& f, int d_q, double leak) {
    require_one_sided(f, true);
    CdqsProtocol p;
    p.name = "direct";
    p.f = f;
    p.d_q = d_q;
    p.resource = trivial_resource();
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x) {
        QuantumChannel a = forward(f(x, 0), d_q, leak, "Q", "M0");
        p.alice.push_back(a.with_dims(SystemDims{{"Q", d_q}, {"L", 1}}, a.out_dims()));
    }
    for (int y = 0; y < m; ++y) p.bob.push_back(trivial_channel(1, "R", "M1"));
    p.declared_delta = leak;
    return p;
}

CdqsProtocol cdqs_teleport(const Predicate& f, int d_q, double leak) {
    require_one_sided(f, false);
    CdqsProtocol p;
    p.name = "teleport";
    p.f = f;
    p.d_q = d_q;
    p.d_l = p.d_r = d_q;
    p.resource = make_resource(max_entangled(d_q), d_q, d_q);
    // Bell measurement on Q L with outcome k = a * d + b for (X^a Z^b (x) I)|Phi+>.
    std::vector<ComplexMatrix> kraus;
    const int dd = d_q * d_q;
    ComplexVector omega = ComplexVector::Zero(dd);
    for (int i = 0; i < d_q; ++i) omega(long(i) * d_q + i) = 1.0 / std::sqrt(double(d_q));
    for (int a = 0; a < d_q; ++a)
        for (int b = 0; b < d_q; ++b) {
            const ComplexVector bell = tensor_product(weyl(a, b, d_q), ComplexMatrix::Identity(d_q, d_q)) * omega;
            ComplexMatrix k = ComplexMatrix::Zero(dd, dd);
            k.row(long(a) * d_q + b) = bell.adjoint();
            kraus.push_back(k);
        }
    const QuantumChannel bell = channel_from_kraus(kraus, SystemDims{{"Q", d_q}, {"L", d_q}}, SystemDims::single("M0", dd));
    const int m = f.inputs_per_party();
    for (int x = 0; x < m; ++x) p.alice.push_back(bell);
    for (int y = 0; y < m; ++y) p.bob.push_back(forward(f(0, y), d_q, leak, "R", "M1"));
    p.declared_delta = leak;
    return p;
}

std::vector<std::string> protocol_names() {
    return {"cds_eq", "cds_ip", "cds_eq_field", "eq", "ip", "neq", "eq_pp"};
}

bool is_cds_name(const std::string& name) { return name == "cds_eq" || name == "cds_ip" || name == "cds_eq_field"; }

CdsProtocol named_cds(const std::string& name, int n) {
    if (name == "cds_eq") return cds_equality(n);
    if (name == "cds_ip") return cds_inner_product(n);
    if (name == "cds_eq_field") return cds_equality_field(n);
    throw ArgumentError("unknown CDS protocol: " + name);
}

CdqsProtocol named_cdqs(const std::string& name, int n) {
    if (name == "eq" || name == "eq_pp") return cdqs_equality(n);
    if (name == "ip") return cdqs_inner_product(n);
    if (name == "neq") return cdqs_nonequality_via_negation(n);
    throw ArgumentError("unknown CDQS protocol: " + name);
}

}  // namespace cdqs
