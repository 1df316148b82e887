#include "cdqs/qss.hpp"

#include "cdqs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdqs {

SecretSharingScheme qss_2of2() {
    SecretSharingScheme s;
    std::vector<ComplexMatrix> enc, rec;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ComplexMatrix key = ComplexMatrix::Zero(4, 1);
            key(2 * a + b, 0) = 1.0;
            const ComplexMatrix p = weyl(a, b, 2);
            enc.push_back(0.5 * tensor_product(p, key));
            rec.push_back(tensor_product(p.adjoint(), ComplexMatrix(key.adjoint())));
        }
    const SystemDims shares{{"Q1", 2}, {"Q2", 4}};
    s.encoder = channel_from_kraus(enc, SystemDims::single("Q", 2), shares);
    s.sets = {{"Q1", "Q2"}};
    s.reconstructors.push_back(channel_from_kraus(rec, shares, SystemDims::single("S", 2)));
    return s;
}

SecretSharingScheme qss_2of3(int secret_dim) {
    if (secret_dim != 2 && secret_dim != 3) throw ArgumentError("qss_2of3: secret dimension must be 2 or 3");
    const int d = 3;
    ComplexMatrix v = ComplexMatrix::Zero(27, secret_dim);
    for (int sec = 0; sec < secret_dim; ++sec)
        for (int c = 0; c < d; ++c) v(9 * c + 3 * ((c + sec) % d) + (c + 2 * sec) % d, sec) = 1.0 / std::sqrt(3.0);
    SecretSharingScheme s;
    s.encoder = channel_from_kraus({v}, SystemDims::single("Q", secret_dim), SystemDims{{"Q0", 3}, {"Q1", 3}, {"Q2", 3}});
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        const int i = pr[0], j = pr[1], k = 3 - i - j;
        // |u, v> -> |sec, c + k sec> with u = c + i sec, v = c + j sec.
        const int inv = (j - i) == 1 ? 1 : 2;  // (j - i)^{-1} mod 3
        ComplexMatrix u = ComplexMatrix::Zero(9, 9);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const int sec = (((b - a) % d + d) % d) * inv % d;
                const int c = ((a - i * sec) % d + d) % d;
                const int cp = (c + k * sec) % d;
                u(3 * sec + cp, 3 * a + b) = 1.0;
            }
        std::vector<ComplexMatrix> kraus;
        for (int cp = 0; cp < d; ++cp) {
            ComplexMatrix e = ComplexMatrix::Zero(1, 3);
            e(0, cp) = 1.0;
            kraus.push_back(tensor_product(ComplexMatrix::Identity(3, 3), e) * u);
        }
        const std::string a = "Q" + std::to_string(i), b = "Q" + std::to_string(j);
        s.sets.push_back({a, b});
        s.reconstructors.push_back(channel_from_kraus(kraus, SystemDims{{a, 3}, {b, 3}}, SystemDims::single("S", 3)));
    }
    return s;
}

QuantumChannel share_marginal(const SecretSharingScheme& s, const std::vector<std::string>& keep) {
    std::vector<std::string> discard;
    for (const auto& [label, dim] : s.encoder.out_dims().systems())
        if (std::find(keep.begin(), keep.end(), label) == keep.end()) discard.push_back(label);
    for (const auto& k : keep) s.encoder.out_dims().index_of(k);
    QuantumChannel m = trace_out_outputs(s.encoder, discard);
    return permute_output(m, keep);
}

}  // namespace cdqs
