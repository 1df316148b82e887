#include "cdqs/codes.hpp"

#include "cdqs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace cdqs {

namespace {

struct Symplectic {
    unsigned x = 0, z = 0;
};

Symplectic symplectic(const std::string& s) {
    Symplectic p;
    for (char c : s) {
        p.x <<= 1;
        p.z <<= 1;
        if (c == 'X' || c == 'Y') p.x |= 1;
        if (c == 'Z' || c == 'Y') p.z |= 1;
    }
    return p;
}

bool anticommute(const Symplectic& a, const Symplectic& b) {
    return (__builtin_popcount((a.x & b.z) ^ (a.z & b.x)) & 1) != 0;
}

unsigned syndrome(const std::vector<Symplectic>& gens, const Symplectic& e) {
    unsigned s = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (anticommute(gens[i], e)) s |= 1u << i;
    return s;
}

CodeSpec build(std::string name, int t, std::vector<std::string> stabilizers, std::string lx, std::string lz) {
    CodeSpec c;
    c.name = std::move(name);
    c.m = int(lx.size());
    c.k = 1;
    c.t = t;
    c.stabilizers = std::move(stabilizers);
    c.logical_x = std::move(lx);
    c.logical_z = std::move(lz);
    const long dim = 1L << c.m;
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    std::vector<ComplexMatrix> gens;
    std::vector<Symplectic> sym;
    for (const auto& s : c.stabilizers) {
        gens.push_back(pauli_string(s));
        sym.push_back(symplectic(s));
    }
    ComplexMatrix proj = id;
    for (const auto& g : gens) proj = proj * (id + g) * 0.5;
    ComplexVector zero = proj.col(0);
    if (zero.norm() < 1e-9) throw NumericError("code " + c.name + ": |0...0> has no code-space component");
    zero /= zero.norm();
    c.encoder = ComplexMatrix::Zero(dim, 2);
    c.encoder.col(0) = zero;
    c.encoder.col(1) = pauli_string(c.logical_x) * zero;

    // Minimum-weight correction per syndrome.
    const int r = int(c.stabilizers.size());
    std::map<unsigned, std::string> table;
    for (int w = 0; w <= c.m && int(table.size()) < (1 << r); ++w)
        for (const auto& e : paulis_up_to_weight(c.m, w)) {
            if (pauli_weight(e) != w) continue;
            table.emplace(syndrome(sym, symplectic(e)), e);
        }
    if (int(table.size()) != (1 << r)) throw NumericError("code " + c.name + ": syndrome table incomplete");
    std::vector<ComplexMatrix> kraus;
    for (const auto& [s, e] : table) {
        ComplexMatrix ps = id;
        for (int i = 0; i < r; ++i) {
            const double sign = (s >> i) & 1u ? -1.0 : 1.0;
            ps = ps * (id + sign * gens[std::size_t(i)]) * 0.5;
        }
        kraus.push_back(c.encoder.adjoint() * pauli_string(e) * ps);
    }
    SystemDims in;
    {
        std::vector<std::pair<std::string, int>> sys;
        for (int i = 0; i < c.m; ++i) sys.emplace_back("q" + std::to_string(i), 2);
        in = SystemDims(std::move(sys));
    }
    c.decoder = channel_from_kraus(kraus, in, SystemDims::single("Q", 2));
    return c;
}

}  // namespace

ComplexMatrix pauli_string(const std::string& s) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    const cplx i(0.0, 1.0);
    for (char ch : s) {
        ComplexMatrix p(2, 2);
        switch (ch) {
        case 'I': p << 1, 0, 0, 1; break;
        case 'X': p << 0, 1, 1, 0; break;
        case 'Y': p << 0, -i, i, 0; break;
        case 'Z': p << 1, 0, 0, -1; break;
        default: throw ArgumentError(std::string("pauli_string: bad letter '") + ch + "'");
        }
        out = tensor_product(out, p);
    }
    return out;
}

int pauli_weight(const std::string& s) { return int(std::count_if(s.begin(), s.end(), [](char c) { return c != 'I'; })); }

std::vector<std::string> paulis_up_to_weight(int m, int w) {
    std::vector<std::string> all;
    long total = 1;
    for (int i = 0; i < m; ++i) total *= 4;
    for (long v = 0; v < total; ++v) {
        std::string s(std::size_t(m), 'I');
        long u = v;
        for (int i = m - 1; i >= 0; --i) {
            s[std::size_t(i)] = "IXYZ"[u % 4];
            u /= 4;
        }
        if (pauli_weight(s) <= w) all.push_back(std::move(s));
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return pauli_weight(a) < pauli_weight(b); });
    return all;
}

CodeSpec code_catalog(const std::string& name) {
    if (name == "five_qubit")
        return build(name, 1, {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, "XXXXX", "ZZZZZ");
    if (name == "steane")
        return build(name, 1, {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}, "XXXXXXX",
                     "ZZZZZZZ");
    throw ArgumentError("unknown code: " + name);
}

std::vector<std::string> code_names() { return {"five_qubit", "steane"}; }

QuantumChannel logical_channel_for_error(const CodeSpec& code, const std::string& error) {
    const ComplexMatrix e = pauli_string(error) * code.encoder;
    return compose(code.decoder, channel_from_kraus({e}, SystemDims::single("Q", 2), code.decoder.in_dims()));
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double code_rate(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ArgumentError("code_rate: alpha must lie in (0, 1/2)");
    return 1.0 - 2.0 * binary_entropy(2.0 * alpha);
}

bool code_rate_in_valid_regime(double alpha) { return 2.0 * alpha <= 0.25; }

double error_exponent(double alpha, double eps) {
    return -(binary_entropy(alpha) + alpha * std::log2(std::exp(1.0) * eps));
}

double noise_threshold(int m, int t) {
    if (m - t - 1 <= 0) return std::numeric_limits<double>::infinity();
    return double(t + 1) / double(m - t - 1);
}

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= r; ++i) v = v * double(n - r + i) / double(i);
    return v;
}

double noise_bound(int m, int t, double eps) {
    if (m <= 0 || t < 0) throw ArgumentError("noise_bound: need m > 0 and t >= 0");
    if (eps < 0) throw ArgumentError("noise_bound: eps must be nonnegative");
    const double thr = noise_threshold(m, t);
    if (!(eps < thr))
        throw ArgumentError("noise_bound: eps = " + std::to_string(eps) + " violates eps < (t+1)/(m-t-1) = " +
                            std::to_string(thr));
    return 2.0 * binomial(m, t + 1) * std::pow(std::exp(1.0) * eps, t + 1);
}

AmplifyParams amplify_params(const CodeSpec& code, double eps) {
    AmplifyParams a;
    a.alpha = double(code.t) / code.m;
    a.beta = double(code.k) / code.m;
    a.gamma = error_exponent(a.alpha, eps);
    a.epsilon_in = eps;
    a.precondition = eps < noise_threshold(code.m, code.t);
    a.bound = a.precondition ? noise_bound(code.m, code.t, eps) : std::numeric_limits<double>::infinity();
    return a;
}

}  // namespace cdqs
