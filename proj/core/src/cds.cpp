#include "cdqs/cds.hpp"

#include "cdqs/errors.hpp"
#include "cdqs/sdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace cdqs {

long CdsProtocol::communication_bits() const {
    auto bits = [](int size) {
        long b = 0;
        while ((1L << b) < size) ++b;
        return b;
    };
    return bits(m0_size) + bits(m1_size);
}

double CdsProtocol::randomness_prob(int r) const {
    return randomness_weights.empty() ? 1.0 / randomness_size : randomness_weights[r];
}

void CdsProtocol::validate() const {
    if (secret_size < 1 || randomness_size < 1 || m0_size < 1 || m1_size < 1)
        throw ArgumentError("cds " + name + ": alphabets must be nonempty");
    if (!m0 || !m1) throw ArgumentError("cds " + name + ": message maps missing");
    if (!randomness_weights.empty()) {
        if (int(randomness_weights.size()) != randomness_size)
            throw ArgumentError("cds " + name + ": randomness distribution has wrong length");
        double s = 0;
        for (double w : randomness_weights) {
            if (w < 0) throw ArgumentError("cds " + name + ": negative randomness weight");
            s += w;
        }
        if (std::abs(s - 1.0) > 1e-12) throw ArgumentError("cds " + name + ": randomness distribution not normalised");
    }
}

namespace {

// min over distributions s of max_z ||s - p_z||_1, as an LP in 1x1 blocks.
double minimax_l1(const std::vector<std::vector<double>>& p, SdpStatus& status) {
    const int nz = int(p.size()), k = int(p.front().size());
    SdpProblem lp;
    std::vector<int> s(k), u(std::size_t(nz) * k);
    for (int m = 0; m < k; ++m) s[m] = lp.add_block(1);
    for (auto& v : u) v = lp.add_block(1);
    const int t = lp.add_block(1);
    lp.objective.add(t, 0, 0, 1.0);
    for (int z = 0; z < nz; ++z) {
        BlockOperator sum;
        for (int m = 0; m < k; ++m) {
            const int uz = u[std::size_t(z) * k + m];
            BlockOperator a, b;
            a.add(s[m], 0, 0, 1.0);
            a.add(uz, 0, 0, -1.0);
            lp.add_constraint(std::move(a), p[z][m], Relation::LessEqual);
            b.add(s[m], 0, 0, -1.0);
            b.add(uz, 0, 0, -1.0);
            lp.add_constraint(std::move(b), -p[z][m], Relation::LessEqual);
            sum.add(uz, 0, 0, 1.0);
        }
        sum.add(t, 0, 0, -1.0);
        lp.add_constraint(std::move(sum), 0.0, Relation::LessEqual);
    }
    BlockOperator norm;
    for (int m = 0; m < k; ++m) norm.add(s[m], 0, 0, 1.0);
    lp.add_constraint(std::move(norm), 1.0);
    SdpOptions opt;
    opt.tol = 1e-10;
    const SdpSolution sol = solve(lp, opt);
    status = sol.status;
    return std::max(0.0, std::max(sol.primal_value, sol.dual_value));
}

}  // namespace

VerificationReport verify_cds_exact(const CdsProtocol& p, double tol) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    if (long(p.randomness_size) * p.secret_size > kCdsEnumerationCap)
        throw CapacityError("verify_cds_exact: |R|*|Z| exceeds the enumeration cap of 10^6");
    if (long(p.m0_size) * p.m1_size > kCdsEnumerationCap)
        throw CapacityError("verify_cds_exact: message space exceeds the enumeration cap of 10^6");
    const bool uniform = p.randomness_weights.empty();
    const int nx = p.f.inputs_per_party();
    VerificationReport rep;
    rep.protocol = p.name;
    rep.kind = "cds";
    rep.predicate = p.f.name();
    rep.n = p.f.n();
    rep.declared_eps = p.declared_eps;
    rep.declared_delta = p.declared_delta;
    rep.tol = tol;
    rep.message_bits = p.communication_bits();
    rep.rows.resize(std::size_t(nx) * nx);

    parallel_rows(nx * nx, [&](int idx) {
        const auto r0 = std::chrono::steady_clock::now();
        const int x = idx / nx, y = idx % nx;
        InputRow row;
        row.x = x;
        row.y = y;
        row.f = p.f(x, y);
        // counts[z][message]; exact integers under uniform randomness.
        std::vector<std::map<long, double>> dist(p.secret_size);
        for (int z = 0; z < p.secret_size; ++z)
            for (int r = 0; r < p.randomness_size; ++r) {
                const int a = p.m0(x, z, r), b = p.m1(y, r);
                if (a < 0 || a >= p.m0_size || b < 0 || b >= p.m1_size)
                    throw ArgumentError("cds " + p.name + ": message outside its alphabet");
                dist[z][long(a) * p.m1_size + b] += uniform ? 1.0 : p.randomness_prob(r);
            }
        const double norm = uniform ? double(p.randomness_size) : 1.0;
        std::map<long, int> keys;
        for (const auto& d : dist)
            for (const auto& kv : d) keys.emplace(kv.first, 0);
        int k = 0;
        for (auto& kv : keys) kv.second = k++;
        std::vector<std::vector<double>> mass(p.secret_size, std::vector<double>(k, 0.0));
        for (int z = 0; z < p.secret_size; ++z)
            for (const auto& kv : dist[z]) mass[z][keys[kv.first]] = kv.second;

        if (row.f) {
            double best = 0;
            for (int m = 0; m < k; ++m) {
                double top = 0;
                for (int z = 0; z < p.secret_size; ++z) top = std::max(top, mass[z][m]);
                best += top;
            }
            row.success = best / (norm * p.secret_size);
            row.eps_ub = row.eps_lb = 1.0 - row.success;
        } else {
            bool same = true;
            for (int z = 1; z < p.secret_size && same; ++z) same = mass[z] == mass[0];
            if (same) {
                row.delta_ub = 0.0;
            } else {
                for (auto& v : mass)
                    for (auto& e : v) e /= norm;
                SdpStatus st;
                row.delta_ub = minimax_l1(mass, st);
                row.status = to_string(st);
            }
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - r0).count();
        rep.rows[idx] = std::move(row);
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace cdqs
