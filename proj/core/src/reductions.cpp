#include "cdqs/reductions.hpp"

#include "cdqs/certify.hpp"
#include "cdqs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cdqs {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int log2_exact(long d) {
    int q = 0;
    while ((1L << q) < d) ++q;
    if ((1L << q) != d) return -1;
    return q;
}

// Basis change for measuring Pauli letter c: rows are the eigenbasis bras.
ComplexMatrix measurement_basis(char c) {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    ComplexMatrix u(2, 2);
    if (c == 'X') u << h, h, h, -h;
    else if (c == 'Y') u << h, -i * h, h, i * h;
    else u << 1, 0, 0, 1;
    return u;
}

ComplexMatrix pauli_letter(char c) {
    const cplx i(0.0, 1.0);
    ComplexMatrix p(2, 2);
    if (c == 'I') p << 1, 0, 0, 1;
    else if (c == 'X') p << 0, 1, 1, 0;
    else if (c == 'Y') p << 0, -i, i, 0;
    else p << 1, 0, 0, -1;
    return p;
}

// Linear-inversion Pauli tomography of a q-qubit state from `copies` samples
// spread evenly over the 3^q local measurement settings.
ComplexMatrix pauli_tomography(const ComplexMatrix& rho, int q, long copies, std::mt19937_64& rng) {
    const long d = 1L << q;
    long settings = 1;
    for (int i = 0; i < q; ++i) settings *= 3;
    const long shots = std::max<long>(1, (copies + settings - 1) / settings);
    long paulis = 1;
    for (int i = 0; i < q; ++i) paulis *= 4;
    std::vector<double> sum(std::size_t(paulis), 0.0);
    std::vector<long> hits(std::size_t(paulis), 0);
    for (long s = 0; s < settings; ++s) {
        std::string letters(std::size_t(q), 'Z');
        long u = s;
        for (int k = q - 1; k >= 0; --k) {
            letters[std::size_t(k)] = "XYZ"[u % 3];
            u /= 3;
        }
        ComplexMatrix basis = ComplexMatrix::Ones(1, 1);
        for (char c : letters) basis = tensor_product(basis, measurement_basis(c));
        const ComplexMatrix rot = basis * rho * basis.adjoint();
        std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
        for (long k = 0; k < d; ++k) probs[std::size_t(k)] = std::max(0.0, rot(k, k).real());
        std::discrete_distribution<long> dist(probs.begin(), probs.end());
        std::vector<long> counts(std::size_t(d), 0);
        for (long t = 0; t < shots; ++t) ++counts[std::size_t(dist(rng))];
        // Every Pauli string whose letters are I or match this setting.
        for (long mask = 0; mask < (1L << q); ++mask) {
            long pidx = 0;
            for (int k = 0; k < q; ++k) {
                const bool on = (mask >> (q - 1 - k)) & 1;
                const int letter = on ? 1 + int(std::string("XYZ").find(letters[std::size_t(k)])) : 0;
                pidx = pidx * 4 + letter;
            }
            double e = 0.0;
            for (long o = 0; o < d; ++o) e += (__builtin_popcountl(o & mask) & 1 ? -1.0 : 1.0) * double(counts[std::size_t(o)]);
            sum[std::size_t(pidx)] += e / double(shots);
            ++hits[std::size_t(pidx)];
        }
    }
    ComplexMatrix est = ComplexMatrix::Zero(d, d);
    for (long pidx = 0; pidx < paulis; ++pidx) {
        ComplexMatrix p = ComplexMatrix::Ones(1, 1);
        long u = pidx;
        std::string s(std::size_t(q), 'I');
        for (int k = q - 1; k >= 0; --k) {
            s[std::size_t(k)] = "IXYZ"[u % 4];
            u /= 4;
        }
        for (char c : s) p = tensor_product(p, pauli_letter(c));
        est += (sum[std::size_t(pidx)] / double(hits[std::size_t(pidx)])) * p;
    }
    return hermitian_part(est / double(d));
}

ComplexMatrix marginal_product(const ComplexMatrix& rho, int d_ref) {
    const int dm = int(rho.rows() / d_ref);
    const std::vector<int> dims{d_ref, dm};
    return tensor_product(partial_trace(rho, dims, {true, false}), partial_trace(rho, dims, {false, true}));
}

// Conditional distribution P(z'|z) of the honest referee on one instance.
ComplexMatrix guess_matrix(const QuantumChannel& n, const QuantumChannel& decoder) {
    const int d = n.d_in();
    ComplexMatrix g(d, d);
    for (int z = 0; z < d; ++z) {
        const ComplexMatrix out = decoder.apply(n.image(z, z));
        for (int zp = 0; zp < d; ++zp) g(z, zp) = out(zp, zp).real();
    }
    return g;
}

int instance_copies(const CdqsProtocol& p, int ell) {
    const int bits = log2_exact(p.d_q);
    if (bits <= 0 || ell < 1 || ell % bits != 0)
        throw ArgumentError("ell must be a positive multiple of log2 d_Q for this protocol");
    return ell / bits;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : p(std::move(probs)) {
    if (p.empty()) throw ArgumentError("distribution: empty support");
    double s = 0;
    for (double v : p) {
        if (!(v >= 0.0)) throw ArgumentError("distribution: negative probability");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw ArgumentError("distribution: probabilities must sum to 1");
}

Distribution Distribution::random(int support, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(static_cast<std::size_t>(support), 0.0);
    for (auto& x : v) x = e(rng);
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x /= s;
    // Renormalise the last entry so the sum is 1 to rounding.
    v.back() = std::max(0.0, 1.0 - std::accumulate(v.begin(), v.end() - 1, 0.0));
    return Distribution(std::move(v));
}

double l2_distance_sq(const Distribution& d0, const Distribution& d1) {
    if (d0.size() != d1.size()) throw ArgumentError("l2_distance_sq: supports differ");
    double s = 0;
    for (int i = 0; i < d0.size(); ++i) s += (d0.p[std::size_t(i)] - d1.p[std::size_t(i)]) * (d0.p[std::size_t(i)] - d1.p[std::size_t(i)]);
    return s;
}

int l2_distinguisher_run(const std::function<int()>& oracle0, const std::function<int()>& oracle1, unsigned bits) {
    const int b1 = (bits >> 2) & 1, b2 = (bits >> 1) & 1, b3 = bits & 1;
    if (b1 == 0) return b3;
    if (b2 == 0) {
        const auto& o = b3 == 0 ? oracle0 : oracle1;
        return o() == o() ? 1 : 0;
    }
    return oracle0() != oracle1() ? 1 : 0;
}

double l2_distinguisher_exact(const Distribution& d0, const Distribution& d1) {
    if (d0.size() != d1.size()) throw ArgumentError("l2_distinguisher_exact: supports differ");
    const int n = d0.size();
    const Distribution* ds[2] = {&d0, &d1};
    double total = 0.0;
    for (unsigned bits = 0; bits < 8; ++bits) {
        const int b1 = (bits >> 2) & 1, b2 = (bits >> 1) & 1, b3 = bits & 1;
        double p1 = 0.0;
        if (b1 == 0) {
            p1 = b3;
        } else {
            const Distribution& qa = b2 == 0 ? *ds[b3] : d0;
            const Distribution& qb = b2 == 0 ? *ds[b3] : d1;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const bool same = a == b;
                    const bool out = b2 == 0 ? same : !same;
                    if (out) p1 += qa.p[std::size_t(a)] * qb.p[std::size_t(b)];
                }
        }
        total += p1 / 8.0;
    }
    return total;
}

double l2_distinguisher_sampled(const Distribution& d0, const Distribution& d1, long runs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> s0(d0.p.begin(), d0.p.end()), s1(d1.p.begin(), d1.p.end());
    std::uniform_int_distribution<unsigned> coin(0, 7);
    const std::function<int()> o0 = [&] { return s0(rng); };
    const std::function<int()> o1 = [&] { return s1(rng); };
    long ones = 0;
    for (long r = 0; r < runs; ++r) ones += l2_distinguisher_run(o0, o1, coin(rng));
    return double(ones) / double(runs);
}

HaarCheck haar_l2_identity_check(const ComplexMatrix& rho, const ComplexMatrix& sigma, int samples, std::uint64_t seed) {
    if (rho.rows() != sigma.rows()) throw ArgumentError("haar_l2_identity_check: dimensions differ");
    if (samples < 2) throw ArgumentError("haar_l2_identity_check: need at least two samples");
    const int d = int(rho.rows());
    const ComplexMatrix delta = rho - sigma;
    double mean = 0.0, m2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        const ComplexMatrix u = haar_random_unitary(d, splitmix(seed ^ splitmix(std::uint64_t(s))));
        const ComplexMatrix r = u * delta * u.adjoint();
        double v = 0.0;
        for (int i = 0; i < d; ++i) v += r(i, i).real() * r(i, i).real();
        const double dm = v - mean;
        mean += dm / (s + 1);
        m2 += dm * (v - mean);
    }
    HaarCheck h;
    h.estimate = mean;
    h.std_error = std::sqrt(m2 / (samples - 1) / samples);
    h.exact = hilbert_schmidt_sq(delta) / (d + 1);
    return h;
}

ComplexMatrix reference_state(const QuantumChannel& n) { return n.choi() / double(n.d_in()); }

double product_distance_trace(const ComplexMatrix& rho, int d_ref) {
    return trace_norm(hermitian_part(rho - marginal_product(rho, d_ref)));
}

double product_distance_hs_sq(const ComplexMatrix& rho, int d_ref) {
    return hilbert_schmidt_sq(rho - marginal_product(rho, d_ref));
}

long tomography_copies(int d, const OneWayOptions& opt) {
    if (!(opt.eps_tilde > 0) || !(opt.delta_fail > 0 && opt.delta_fail < 1) || !(opt.constant > 0))
        throw ArgumentError("tomography parameters out of range");
    return long(std::ceil(opt.constant * double(d) * d * std::log(1.0 / opt.delta_fail) / (opt.eps_tilde * opt.eps_tilde)));
}

OneWayReport one_way_reduction(const CdqsProtocol& p, const OneWayOptions& opt) {
    p.validate();
    if (opt.mode != "oracle" && opt.mode != "sampled") throw ArgumentError("one_way_reduction: mode must be oracle or sampled");
    OneWayReport rep;
    rep.protocol = p.name;
    rep.mode = opt.mode;
    rep.threshold = opt.threshold;
    rep.lower = opt.eps;
    rep.upper = 2.0 * (1.0 - 1.0 / std::sqrt(double(p.d_q))) - opt.eps;
    rep.seed = opt.seed;
    const int d = p.d_q * p.d_m0() * p.d_m1();
    const bool sampled = opt.mode == "sampled";
    const int q = log2_exact(d);
    if (sampled && q < 0) throw ArgumentError("one_way_reduction: sampled mode needs a power-of-two joint dimension");
    if (sampled && d > 64) throw CapacityError("one_way_reduction: sampled mode limited to 6 qubits");
    rep.copies = sampled ? (opt.copies > 0 ? opt.copies : tomography_copies(d, opt)) : 1;
    rep.constant = opt.constant;
    rep.delta_fail = opt.delta_fail;
    rep.eps_tilde = opt.eps_tilde;
    rep.trials = sampled ? std::max(1, opt.trials) : 1;
    rep.message_qubits = double(rep.copies) * std::log2(double(p.d_m1()));
    const int nx = p.f.inputs_per_party();
    rep.rows.resize(std::size_t(nx) * nx);
    parallel_rows(nx * nx, [&](int idx) {
        OneWayRow row;
        row.x = idx / nx;
        row.y = idx % nx;
        row.f = p.f(row.x, row.y);
        const ComplexMatrix rho = reference_state(effective_channel(p, row.x, row.y));
        row.distance = product_distance_trace(rho, p.d_q);
        row.gap_ok = row.f ? row.distance >= rep.upper : row.distance <= rep.lower;
        if (!sampled) {
            row.estimate = row.distance;
            row.misclassified = (row.distance > opt.threshold) != row.f ? 1 : 0;
        } else {
            std::mt19937_64 rng(splitmix(opt.seed ^ splitmix(std::uint64_t(idx))));
            double acc = 0.0;
            for (int t = 0; t < rep.trials; ++t) {
                const ComplexMatrix est = pauli_tomography(rho, q, rep.copies, rng);
                const double e = product_distance_trace(est, p.d_q);
                acc += e;
                if ((e > opt.threshold) != row.f) ++row.misclassified;
            }
            row.estimate = acc / rep.trials;
        }
        rep.rows[std::size_t(idx)] = row;
    });
    rep.all_correct = true;
    rep.gap_ok = true;
    for (const auto& r : rep.rows) {
        rep.misclassified += r.misclassified;
        if (r.misclassified) rep.all_correct = false;
        if (!r.gap_ok) rep.gap_ok = false;
    }
    return rep;
}

double pp_s0(double eps, int d) {
    const double a = (1.5 - 2.0 * eps) * (1.5 - 2.0 * eps);
    return a / (4.0 * d * (d + 1.0) + a);
}

PpReport pp_reduction(const CdqsProtocol& p, double eps, const SdpOptions& opt, double private_tol) {
    p.validate();
    PpReport rep;
    rep.protocol = p.name;
    rep.eps = eps;
    rep.d = p.d_q * p.d_m0() * p.d_m1();
    rep.s0 = pp_s0(eps, rep.d);
    rep.s = rep.s0 / 2.0;
    const int nx = p.f.inputs_per_party();
    rep.rows.resize(std::size_t(nx) * nx);
    std::vector<double> delta(rep.rows.size(), 0.0);
    std::vector<char> marg(rep.rows.size(), 1);
    parallel_rows(nx * nx, [&](int idx) {
        PpRow row;
        row.x = idx / nx;
        row.y = idx % nx;
        row.f = p.f(row.x, row.y);
        const QuantumChannel n = effective_channel(p, row.x, row.y);
        const ComplexMatrix rho = reference_state(n);
        const ComplexMatrix ref = partial_trace(rho, std::vector<int>{p.d_q, int(rho.rows() / p.d_q)}, {true, false});
        marg[std::size_t(idx)] = (ref - max_mixed(p.d_q)).cwiseAbs().maxCoeff() <= 1e-9;
        row.hs_sq = product_distance_hs_sq(rho, p.d_q);
        // z = 1 with probability 1/2 + hs_sq / (8 (d + 1)); with probability s Alice outputs 0.
        const double pz1 = 0.5 + row.hs_sq / (8.0 * (rep.d + 1.0));
        row.accept = row.f ? (1.0 - rep.s) * pz1 : rep.s + (1.0 - rep.s) * (1.0 - pz1);
        row.bias = row.accept - 0.5;
        if (!row.f) {
            const SimulatorResult sim = optimal_constant_simulator(n, opt);
            delta[std::size_t(idx)] = sim.status == SdpStatus::Optimal ? sim.delta_star : kNaN;
        }
        rep.rows[std::size_t(idx)] = row;
    });
    rep.marginal_ok = std::all_of(marg.begin(), marg.end(), [](char c) { return c != 0; });
    rep.beta = 1.0;
    bool dnan = false;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        rep.beta = std::min(rep.beta, rep.rows[i].bias);
        if (std::isnan(delta[i])) dnan = true;
        else rep.delta_hat = std::max(rep.delta_hat, delta[i]);
    }
    if (dnan) rep.delta_hat = kNaN;
    rep.qubits = 4.0 * (std::log2(double(p.d_r)) + std::log2(double(p.d_m1())));
    rep.valid = rep.beta > 0 && rep.marginal_ok && !dnan && rep.delta_hat <= private_tol;
    rep.cost = rep.beta > 0 ? rep.qubits + std::log2(1.0 / rep.beta) : kNaN;
    return rep;
}

QipTranscript qip2_from_cdqs(const CdqsProtocol& p, int ell, const CertifyOptions& opt) {
    p.validate();
    QipTranscript tr;
    tr.protocol = p.name;
    tr.ell = ell;
    tr.copies = instance_copies(p, ell);
    tr.t = tr.copies * p.message_qubits();
    tr.communication = tr.t + ell + 1;
    const int nx = p.f.inputs_per_party();
    std::vector<double> comp(std::size_t(nx) * nx, kNaN), sound(comp.size(), kNaN), eps(comp.size(), 0.0),
        del(comp.size(), 0.0);
    parallel_rows(nx * nx, [&](int idx) {
        const int x = idx / nx, y = idx % nx;
        const QuantumChannel n = effective_channel(p, x, y);
        if (p.f(x, y)) {
            const CorrectnessCertificate c = certify_correctness(n, opt);
            eps[std::size_t(idx)] = c.eps_ub;
            comp[std::size_t(idx)] = std::pow(classical_success(n, c.decoder), tr.copies);
        } else {
            std::vector<ComplexMatrix> states;
            for (int z = 0; z < p.d_q; ++z) states.push_back(n.image(z, z));
            const DiscriminationResult d = optimal_discrimination(states, std::vector<double>(std::size_t(p.d_q), 1.0 / p.d_q), opt.sdp);
            sound[std::size_t(idx)] = std::pow(d.value, tr.copies);
            del[std::size_t(idx)] = optimal_constant_simulator(n, opt.sdp).delta_star;
        }
    });
    tr.completeness = 1.0;
    tr.soundness_bound = 0.0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (!std::isnan(comp[i])) tr.completeness = std::min(tr.completeness, comp[i]);
        if (!std::isnan(sound[i])) tr.soundness_bound = std::max(tr.soundness_bound, sound[i]);
        tr.eps = std::max(tr.eps, eps[i]);
        tr.delta = std::max(tr.delta, del[i]);
    }
    tr.completeness_ok = tr.completeness >= std::pow(1.0 - tr.eps, tr.copies) - 1e-9;
    tr.soundness_ok = tr.soundness_bound <= std::pow(2.0, -ell) + tr.copies * tr.delta + 1e-6;
    return tr;
}

HvqszkResult hvqszk_check(const CdqsProtocol& p, int ell, const CertifyOptions& opt) {
    p.validate();
    const int copies = instance_copies(p, ell);
    const int nx = p.f.inputs_per_party();
    HvqszkResult best;
    best.pr_equal = 2.0;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < nx; ++y) {
            if (!p.f(x, y)) continue;
            const QuantumChannel n = effective_channel(p, x, y);
            const DecoderResult dec = optimal_decoder_fidelity(n, nullptr, opt.sdp);
            const ComplexMatrix g1 = guess_matrix(n, dec.decoder);
            ComplexMatrix g = ComplexMatrix::Ones(1, 1);
            for (int c = 0; c < copies; ++c) g = tensor_product(g, g1);
            const long dz = g.rows();
            HvqszkResult r;
            r.x = x;
            r.y = y;
            r.real_state = ComplexMatrix::Zero(dz * dz, dz * dz);
            r.sim_state = ComplexMatrix::Zero(dz * dz, dz * dz);
            for (long z = 0; z < dz; ++z) {
                r.sim_state(z * dz + z, z * dz + z) = 1.0 / double(dz);
                r.pr_equal += g(z, z).real() / double(dz);
                for (long zp = 0; zp < dz; ++zp) r.real_state(z * dz + zp, z * dz + zp) = g(z, zp) / double(dz);
            }
            r.distance = trace_norm(r.real_state - r.sim_state);
            r.bound = 2.0 * std::sqrt(std::max(0.0, 1.0 - r.pr_equal));
            r.holds = r.distance <= r.bound + 1e-12;
            if (r.pr_equal < best.pr_equal) best = std::move(r);
        }
    if (best.pr_equal > 1.5) throw ArgumentError("hvqszk_check: predicate has no 1-input");
    return best;
}

}  // namespace cdqs
