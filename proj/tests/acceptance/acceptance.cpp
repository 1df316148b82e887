// One pass/fail line per acceptance criterion. Each criterion also has to
// finish inside its time budget. Arguments select criteria by number.

#include "cdqs/amplify.hpp"
#include "cdqs/codes.hpp"
#include "cdqs/errors.hpp"
#include "cdqs/qss.hpp"
#include "cdqs/reductions.hpp"
#include "cdqs/transforms.hpp"
#include "cdqs/zoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace cdqs;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome cds_family(CdsProtocol (*make)(int), const std::function<long(int)>& bits) {
    Outcome o{true, ""};
    std::ostringstream os;
    for (int n = 1; n <= 3; ++n) {
        const VerificationReport r = verify_cds_exact(make(n));
        const bool ok = r.complete && r.eps_hat == 0.0 && r.delta_hat == 0.0 && r.message_bits == bits(n) &&
                        long(r.rows.size()) == (1L << (2 * n));
        o.pass = o.pass && ok;
        os << "n=" << n << " eps=" << r.eps_hat << " delta=" << r.delta_hat << " bits=" << r.message_bits << "; ";
    }
    o.detail = os.str();
    return o;
}

Outcome c1() { return cds_family(cds_equality, [](int) { return 2L; }); }

Outcome c2() { return cds_family(cds_inner_product, [](int n) { return long(n) + 2; }); }

Outcome c3() {
    const VerificationReport r = verify_cdqs(cdqs_equality(2));
    return {r.complete && r.eps_hat <= 1e-6 && r.delta_hat <= 1e-6 && r.rows.size() == 16,
            "eps_hat=" + fmt("%.3g", r.eps_hat) + " delta_hat=" + fmt("%.3g", r.delta_hat)};
}

Outcome c4() {
    const CdqsProtocol eq = cdqs_equality(2);
    const CdqsProtocol neq = negate(eq);
    const VerificationReport r = verify_cdqs(neq);
    const double bound = negation_message_bound(eq);
    const CdqsProtocol back = negate(neq);
    const VerificationReport r2 = verify_cdqs(back);
    const bool ok = neq.f == Predicate::nonequality(2) && r.complete && r.eps_hat <= 1e-6 && r.delta_hat <= 1e-6 &&
                    neq.message_qubits() <= bound + 1e-9 && back.f == Predicate::equality(2) && r2.complete &&
                    r2.eps_hat <= 1e-6 && r2.delta_hat <= 1e-6;
    std::ostringstream os;
    os << "NEQ n=2 eps=" << fmt("%.3g", r.eps_hat) << " delta=" << fmt("%.3g", r.delta_hat)
       << " msg=" << neq.message_qubits() << "<=" << bound << "; double negation n=2 eps=" << fmt("%.3g", r2.eps_hat)
       << " delta=" << fmt("%.3g", r2.delta_hat);
    return {ok, os.str()};
}

Outcome c5() {
    Outcome o{true, ""};
    std::ostringstream os;
    for (double e : {0.0, 0.02}) {
        const CdqsProtocol a = and_compose(with_secret_noise(cdqs_direct(Predicate::alice_bit(1), 2), e),
                                           with_secret_noise(cdqs_teleport(Predicate::bob_bit(1), 4), e));
        const CdqsProtocol b = or_compose(cdqs_direct(Predicate::alice_bit(1), 3, e),
                                          cdqs_teleport(Predicate::bob_bit(1), 3, e));
        const VerificationReport ra = verify_cdqs(a), rb = verify_cdqs(b);
        const bool ok = ra.complete && rb.complete && ra.eps_hat <= 2 * e + 1e-3 && rb.delta_hat <= 2 * e + 1e-3 &&
                        a.f == Predicate::alice_bit(1).conjunction(Predicate::bob_bit(1)) &&
                        b.f == Predicate::alice_bit(1).disjunction(Predicate::bob_bit(1));
        o.pass = o.pass && ok;
        os << "e=" << e << " AND eps=" << fmt("%.4g", ra.eps_hat) << " OR delta=" << fmt("%.4g", rb.delta_hat) << "; ";
    }
    o.detail = os.str();
    return o;
}

Outcome c6() {
    const CodeSpec c = code_catalog("five_qubit");
    const AmplifyResult a = amplify(protocol_instance(cdqs_equality(1), 0, 0, 0.01), c);
    bool refused = false;
    try {
        noise_bound(c.m, c.t, 0.7);
    } catch (const ArgumentError&) {
        refused = true;
    }
    const bool ok = a.status == "optimal" && std::abs(a.instance_error - 0.01) < 1e-6 && a.measured_error <= 0.01478 &&
                    std::abs(a.bound - 0.0147781) < 1e-6 && refused;
    return {ok, "instance=" + fmt("%.4g", a.instance_error) + " logical=" + fmt("%.4g", a.measured_error) +
                    " bound=" + fmt("%.6g", a.bound) + (refused ? " eps=0.7 refused" : " eps=0.7 accepted")};
}

Outcome c7() {
    Outcome o{true, ""};
    std::ostringstream os;
    for (const auto& p : {cdqs_equality(2), cdqs_inner_product(2)}) {
        const OneWayReport r = one_way_reduction(p);
        double max0 = 0.0, min1 = 1e9;
        for (const auto& w : r.rows) {
            if (w.f)
                min1 = std::min(min1, w.distance);
            else
                max0 = std::max(max0, w.distance);
        }
        const bool ok = r.all_correct && r.rows.size() == 16 && max0 <= 0.09 && min1 >= 0.496 - 1e-3;
        o.pass = o.pass && ok;
        os << p.name << " max0=" << fmt("%.3g", max0) << " min1=" << fmt("%.4g", min1) << "; ";
    }
    o.detail = os.str();
    return o;
}

Outcome c8() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int s = 2 + i % 7;
        const Distribution d0 = Distribution::random(s, 1000 + 2 * i), d1 = Distribution::random(s, 1001 + 2 * i);
        worst = std::max(worst, std::abs(l2_distinguisher_exact(d0, d1) - (0.5 + l2_distance_sq(d0, d1) / 8.0)));
    }
    return {worst <= 1e-12, "max deviation " + fmt("%.3g", worst) + " over 100 pairs"};
}

Outcome c9() {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const HaarCheck h =
            haar_l2_identity_check(random_density_matrix(4, 50 + i), random_density_matrix(4, 70 + i), 2000, 90 + i);
        worst = std::max(worst, std::abs(h.estimate - h.exact) / h.exact);
    }
    return {worst <= 0.05, "max relative error " + fmt("%.3g", worst)};
}

Outcome c10() {
    const PpReport r = pp_reduction(named_cdqs("eq_pp", 1), 0.09);
    const double a = 1.5 - 2 * r.eps;
    const double closed = a * a / (4.0 * r.d * (r.d + 1.0) + a * a);
    bool ok = r.valid && std::abs(r.s0 - closed) <= 1e-9 && std::abs(r.s - r.s0 / 2) <= 1e-15 &&
              std::abs(pp_s0(0.09, 8) - 6.01362e-3) <= 1e-8;
    for (const auto& w : r.rows) ok = ok && (w.f ? w.accept > 0.5 : std::abs(w.accept - (1 + r.s) / 2) <= 1e-12);
    return {ok, "d=" + std::to_string(r.d) + " s0=" + fmt("%.6g", r.s0) + " beta=" + fmt("%.3g", r.beta) +
                    " s0(0.09,8)=" + fmt("%.6g", pp_s0(0.09, 8))};
}

Outcome c11() {
    const QipTranscript q = qip2_from_cdqs(cdqs_equality(1), 2);
    const bool ok = std::abs(q.completeness - 1.0) <= 1e-6 && std::abs(q.soundness_bound - 0.25) <= 1e-6 &&
                    std::abs(q.communication - (q.t + 3)) <= 1e-12;
    return {ok, "completeness=" + fmt("%.9g", q.completeness) + " soundness=" + fmt("%.9g", q.soundness_bound) +
                    " communication=" + fmt("%g", q.communication) + " t=" + fmt("%g", q.t)};
}

Outcome c12() {
    Outcome o{true, ""};
    std::ostringstream os;
    double last_d = -1.0, last_b = -1.0;
    for (double p : {0.0, 0.05, 0.1}) {
        const CdqsProtocol q = p > 0 ? with_message_noise(cdqs_equality(1), p) : cdqs_equality(1);
        const HvqszkResult r = hvqszk_check(q, 1);
        o.pass = o.pass && r.holds && r.distance >= last_d - 1e-9 && r.bound >= last_b - 1e-9;
        last_d = r.distance;
        last_b = r.bound;
        os << "p=" << p << " d=" << fmt("%.4g", r.distance) << "<=" << fmt("%.4g", r.bound) << "; ";
    }
    o.detail = os.str();
    return o;
}

QuantumChannel random_channel(int d_in, int d_out, int d_env, std::uint64_t seed) {
    const ComplexMatrix u = haar_random_unitary(d_out * d_env, seed);
    return channel_from_isometry(u.leftCols(d_in), SystemDims::single("Q", d_in), SystemDims::single("B", d_out),
                                 SystemDims::single("E", d_env));
}

Outcome c13() {
    std::ostringstream os;
    // Decoupling sandwich on noisy near-identity channels and generic ones.
    int sandwich_ok = 0;
    for (int i = 0; i < 20; ++i) {
        QuantumChannel n = random_channel(2, 2 + i % 2, 2, 300 + i);
        if (i % 2 == 0) n = affine_mix(identity_channel(2), depolarizing(1.0, 2), 0.02 * i);
        sandwich_ok += decoupling_check(n).holds ? 1 : 0;
    }
    os << "decoupling " << sandwich_ok << "/20; ";
    // Fuchs-van de Graaf.
    int fvdg_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const int d = 2 + i % 4;
        const ComplexMatrix r = random_density_matrix(d, 5000 + 2 * i, 1 + i % d);
        const ComplexMatrix s = random_density_matrix(d, 5001 + 2 * i);
        const double t = 0.5 * trace_distance(r, s), f = fidelity(r, s);
        fvdg_ok += (1 - std::sqrt(f) <= t + 1e-9 && t <= std::sqrt(std::max(0.0, 1 - f)) + 1e-9) ? 1 : 0;
    }
    os << "fvdg " << fvdg_ok << "/1000; ";
    // Secret sharing: authorized sets recover the secret, unauthorized sets see a constant channel.
    int qss_ok = 0, qss_total = 0;
    for (const auto& s : {qss_2of2(), qss_2of3(3), qss_2of3(2)}) {
        const int d = s.encoder.d_in();
        std::set<std::string> labels;
        for (const auto& set : s.sets) labels.insert(set.begin(), set.end());
        for (std::size_t k = 0; k < s.sets.size(); ++k) {
            const QuantumChannel rec = compose(s.reconstructors[k], share_marginal(s, s.sets[k]));
            const QuantumChannel target =
                rec.d_out() == d ? identity_channel(d)
                                 : channel_from_isometry(ComplexMatrix::Identity(rec.d_out(), d), SystemDims::single("Q", d),
                                                         SystemDims::single("S", rec.d_out()), SystemDims::single("E", 1));
            qss_ok += std::abs(diamond_norm_general(rec.choi() - target.choi(), d, rec.d_out()).value) <= 1e-6 ? 1 : 0;
            ++qss_total;
        }
        for (const auto& l : labels) {
            qss_ok += optimal_constant_simulator(share_marginal(s, {l})).delta_star <= 1e-6 ? 1 : 0;
            ++qss_total;
        }
    }
    os << "qss " << qss_ok << "/" << qss_total << "; ";
    // Choi to Kraus and back.
    int rt_ok = 0;
    for (int i = 0; i < 20; ++i) {
        const QuantumChannel n = random_channel(2 + i % 2, 2 + i % 3, 1 + i % 4, 700 + i);
        const QuantumChannel back = channel_from_kraus(kraus_operators(n), n.in_dims(), n.out_dims());
        rt_ok += (back.choi() - n.choi()).cwiseAbs().maxCoeff() <= 1e-10 ? 1 : 0;
    }
    os << "choi-kraus " << rt_ok << "/20";
    return {sandwich_ok == 20 && fvdg_ok == 1000 && qss_ok == qss_total && rt_ok == 20, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "equality CDS exact, 2 bits", 1, c1},
        {2, "inner-product CDS exact, n+2 bits", 5, c2},
        {3, "lifted equality CDQS at n=2", 120, c3},
        {4, "negation closure and double negation", 300, c4},
        {5, "AND/OR composition with injected error", 600, c5},
        {6, "five-qubit amplification bound", 60, c6},
        {7, "one-way reduction oracle classification", 120, c7},
        {8, "L2 distinguisher closed form", 1, c8},
        {9, "Haar identity Monte Carlo", 30, c9},
        {10, "PP reduction acceptance probabilities", 120, c10},
        {11, "QIP(2) transcript", 120, c11},
        {12, "HVQSZK distance bound", 120, c12},
        {13, "property suites", 600, c13},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("criterion %2d: %s  %s  [%s] (%.2fs of %.0fs%s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
