#include "cdqs/cdqs.hpp"

#include "cdqs/errors.hpp"

#include <chrono>
#include <cmath>

namespace cdqs {

namespace {

// out += a (x) b, skipping zero entries of a.
void kron_add(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
    const long rb = b.rows(), cb = b.cols();
    for (long c = 0; c < a.cols(); ++c)
        for (long r = 0; r < a.rows(); ++r) {
            const cplx v = a(r, c);
            if (v == cplx(0.0)) continue;
            out.block(r * rb, c * cb, rb, cb) += v * b;
        }
}

double log2d(long d) { return std::log2(double(d)); }

}  // namespace

DensityState make_resource(const ComplexMatrix& psi, int d_l, int d_r) {
    return DensityState(psi, SystemDims{{"L", d_l}, {"R", d_r}});
}

DensityState trivial_resource() { return make_resource(ComplexMatrix::Ones(1, 1), 1, 1); }

void CdqsProtocol::validate() const {
    const int nx = f.inputs_per_party();
    if (int(alice.size()) != nx || int(bob.size()) != nx)
        throw ArgumentError("cdqs " + name + ": need one Alice and one Bob channel per input string");
    if (resource.dim() != long(d_l) * d_r) throw ArgumentError("cdqs " + name + ": resource dimension must be d_L * d_R");
    resource.validate();
    for (const auto& a : alice) {
        if (a.d_in() != d_q * d_l) throw ArgumentError("cdqs " + name + ": Alice channel input must be Q (x) L");
        if (a.d_out() != alice.front().d_out()) throw ArgumentError("cdqs " + name + ": Alice message size varies with x");
    }
    for (const auto& b : bob) {
        if (b.d_in() != d_r) throw ArgumentError("cdqs " + name + ": Bob channel input must be R");
        if (b.d_out() != bob.front().d_out()) throw ArgumentError("cdqs " + name + ": Bob message size varies with y");
    }
}

double CdqsProtocol::message_qubits() const { return log2d(d_m0()) + log2d(d_m1()); }
double CdqsProtocol::resource_qubits() const { return log2d(d_l) + log2d(d_r); }

ComplexMatrix local_effective_choi(const QuantumChannel& a, const QuantumChannel& b, const ComplexMatrix& psi, int d_q,
                                   int d_l, int d_r) {
    const int da = a.d_out(), db = b.d_out();
    const long dout = long(da) * db;
    if (dout * d_q * dout * d_q > long(choi_entry_cap())) throw CapacityError("effective channel exceeds the Choi cap");
    // B_{ll'} = sum_{rr'} psi[(l r),(l' r')] B(|r><r'|)
    std::vector<ComplexMatrix> bl(std::size_t(d_l) * d_l);
    std::vector<bool> nz(bl.size(), false);
    for (int l = 0; l < d_l; ++l)
        for (int lp = 0; lp < d_l; ++lp) {
            ComplexMatrix acc = ComplexMatrix::Zero(db, db);
            bool any = false;
            for (int r = 0; r < d_r; ++r)
                for (int rp = 0; rp < d_r; ++rp) {
                    const cplx w = psi(long(l) * d_r + r, long(lp) * d_r + rp);
                    if (w == cplx(0.0)) continue;
                    acc += w * b.image(r, rp);
                    any = true;
                }
            if (any && acc.cwiseAbs().maxCoeff() > 0) {
                bl[std::size_t(l) * d_l + lp] = std::move(acc);
                nz[std::size_t(l) * d_l + lp] = true;
            }
        }
    ComplexMatrix j = ComplexMatrix::Zero(d_q * dout, d_q * dout);
    for (int i = 0; i < d_q; ++i)
        for (int k = 0; k < d_q; ++k) {
            ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
            for (int l = 0; l < d_l; ++l)
                for (int lp = 0; lp < d_l; ++lp) {
                    if (!nz[std::size_t(l) * d_l + lp]) continue;
                    kron_add(a.image(i * d_l + l, k * d_l + lp), bl[std::size_t(l) * d_l + lp], out);
                }
            j.block(long(i) * dout, long(k) * dout, dout, dout) = out;
        }
    return hermitian_part(j);
}

QuantumChannel effective_channel(const CdqsProtocol& p, int x, int y) {
    const auto& a = p.alice.at(std::size_t(x));
    const auto& b = p.bob.at(std::size_t(y));
    ComplexMatrix j = local_effective_choi(a, b, p.resource.matrix, p.d_q, p.d_l, p.d_r);
    return QuantumChannel(std::move(j), SystemDims::single("Q", p.d_q),
                          SystemDims{{"M0", a.d_out()}, {"M1", b.d_out()}}, false);
}

VerificationReport verify_cdqs(const CdqsProtocol& p, const VerifyOptions& opt) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int nx = p.f.inputs_per_party();
    VerificationReport rep;
    rep.protocol = p.name;
    rep.kind = "cdqs";
    rep.predicate = p.f.name();
    rep.n = p.f.n();
    rep.declared_eps = p.declared_eps;
    rep.declared_delta = p.declared_delta;
    rep.tol = opt.tol;
    rep.message_bits = long(std::lround(std::ceil(p.message_qubits() - 1e-9)));
    rep.rows.resize(std::size_t(nx) * nx);
    parallel_rows(nx * nx, [&](int idx) {
        const auto r0 = std::chrono::steady_clock::now();
        InputRow row;
        row.x = idx / nx;
        row.y = idx % nx;
        row.f = p.f(row.x, row.y);
        try {
            const QuantumChannel n = effective_channel(p, row.x, row.y);
            if (row.f) {
                CorrectnessCertificate c = certify_correctness(n, opt.certify);
                row.eps_ub = c.eps_ub;
                row.eps_lb = c.eps_lb;
                row.success = c.f_star;
                row.status = to_string(c.status);
                if (opt.keep_witnesses) row.decoder = std::move(c.decoder);
            } else {
                SimulatorResult s = optimal_constant_simulator(n, opt.certify.sdp);
                row.delta_ub = s.delta_star;
                row.status = to_string(s.status);
                if (opt.keep_witnesses) row.simulator = std::move(s.sigma);
            }
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

DecouplingValues decoupling_check(const QuantumChannel& n, const CertifyOptions& opt, double tol) {
    CertifyOptions o = opt;
    o.simulator_rank_cap = 1 << 30;
    const CorrectnessCertificate c = certify_correctness(n, o);
    DecouplingValues v;
    v.eps_ub = c.eps_ub;
    v.eps_lb = c.eps_lb;
    v.mid = std::isnan(c.s_hat) ? optimal_constant_simulator(complementary_channel(n), opt.sdp).delta_star : c.s_hat;
    v.lhs = 0.25 * c.eps_lb * c.eps_lb;
    v.rhs = 2.0 * std::sqrt(c.eps_ub);
    v.holds = v.lhs <= v.mid + tol && v.mid <= v.rhs + tol;
    return v;
}

CdqsProtocol embed_cds(const CdsProtocol& c) {
    c.validate();
    CdqsProtocol p;
    p.name = c.name + "_embedded";
    p.f = c.f;
    p.d_q = c.secret_size;
    p.d_l = p.d_r = c.randomness_size;
    ComplexMatrix psi = ComplexMatrix::Zero(long(p.d_l) * p.d_r, long(p.d_l) * p.d_r);
    for (int r = 0; r < c.randomness_size; ++r) psi(long(r) * p.d_r + r, long(r) * p.d_r + r) = c.randomness_prob(r);
    p.resource = make_resource(psi, p.d_l, p.d_r);
    const int nx = c.f.inputs_per_party();
    const SystemDims qin{{"Q", p.d_q}, {"L", p.d_l}};
    for (int x = 0; x < nx; ++x) {
        std::vector<ComplexMatrix> kraus;
        for (int z = 0; z < c.secret_size; ++z)
            for (int r = 0; r < c.randomness_size; ++r) {
                ComplexMatrix k = ComplexMatrix::Zero(c.m0_size, long(p.d_q) * p.d_l);
                k(c.m0(x, z, r), long(z) * p.d_l + r) = 1.0;
                kraus.push_back(std::move(k));
            }
        p.alice.push_back(channel_from_kraus(kraus, qin, SystemDims::single("M0", c.m0_size)));
    }
    for (int y = 0; y < nx; ++y) {
        std::vector<ComplexMatrix> kraus;
        for (int r = 0; r < c.randomness_size; ++r) {
            ComplexMatrix k = ComplexMatrix::Zero(c.m1_size, p.d_r);
            k(c.m1(y, r), r) = 1.0;
            kraus.push_back(std::move(k));
        }
        p.bob.push_back(channel_from_kraus(kraus, SystemDims::single("R", p.d_r), SystemDims::single("M1", c.m1_size)));
    }
    p.declared_eps = c.declared_eps;
    p.declared_delta = c.declared_delta;
    return p;
}

double classical_success(const QuantumChannel& n, const QuantumChannel& decoder) {
    const int d = n.d_in();
    if (decoder.d_in() != n.d_out() || decoder.d_out() != d) throw ArgumentError("classical_success: decoder dims");
    double s = 0;
    for (int z = 0; z < d; ++z) {
        const ComplexMatrix out = decoder.apply(n.image(z, z));
        s += out(z, z).real();
    }
    return s / d;
}

}  // namespace cdqs
