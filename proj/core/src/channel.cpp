#include "cdqs/channel.hpp"

#include "cdqs/errors.hpp"
#include "cdqs/linalg_blocks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace cdqs {

namespace {
std::atomic<std::size_t> g_choi_cap{std::size_t{1} << 24};

void check_choi_cap(long dim) {
    if (double(dim) * double(dim) > double(g_choi_cap.load()))
        throw CapacityError("Choi matrix of dimension " + std::to_string(dim) + " exceeds the entry cap (" +
                            std::to_string(g_choi_cap.load()) + ")");
}

// J += v v^dag for a sparse v.
void accumulate_outer(ComplexMatrix& j, const std::vector<std::pair<long, cplx>>& v) {
    for (const auto& [c, vc] : v) {
        const cplx cc = std::conj(vc);
        for (const auto& [r, vr] : v) j(r, c) += vr * cc;
    }
}
}  // namespace

std::size_t choi_entry_cap() { return g_choi_cap.load(); }
void set_choi_entry_cap(std::size_t entries) { g_choi_cap.store(entries); }

DensityState::DensityState(ComplexMatrix m, SystemDims d, bool check) : matrix(std::move(m)), dims(std::move(d)) {
    if (check) validate();
}

void DensityState::validate(double tol) const {
    if (matrix.rows() != matrix.cols() || matrix.rows() != dims.total())
        throw ArgumentError("DensityState: matrix dimension " + std::to_string(matrix.rows()) +
                            " does not match dims " + dims.describe());
    if (!is_finite(matrix)) throw ArgumentError("DensityState: non-finite entries");
    if (!is_hermitian(matrix, kHermitianTol)) throw ArgumentError("DensityState: not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > tol) throw ArgumentError("DensityState: trace differs from 1");
    if (blocked_eigh(matrix).min_eigenvalue() < -tol) throw ArgumentError("DensityState: negative eigenvalue");
}

QuantumChannel::QuantumChannel(ComplexMatrix choi, SystemDims in, SystemDims out, bool check)
    : choi_(std::move(choi)), in_(std::move(in)), out_(std::move(out)) {
    check_choi_cap(choi_.rows());
    if (choi_.rows() != choi_.cols() || choi_.rows() != in_.total() * out_.total())
        throw ArgumentError("QuantumChannel: Choi dimension " + std::to_string(choi_.rows()) +
                            " does not match in " + in_.describe() + " and out " + out_.describe());
    if (check) validate();
}

double QuantumChannel::min_choi_eigenvalue() const {
    const double scale = std::max(1.0, choi_.cwiseAbs().maxCoeff());
    return blocked_eigh(choi_, 1e-15 * scale).min_eigenvalue();
}

double QuantumChannel::tp_violation() const {
    const int di = d_in(), d = d_out();
    double worst = 0;
    for (int i = 0; i < di; ++i)
        for (int j = 0; j < di; ++j) {
            const cplx t = choi_.block(long(i) * d, long(j) * d, d, d).trace();
            worst = std::max(worst, std::abs(t - (i == j ? cplx(1.0) : cplx(0.0))));
        }
    return worst;
}

void QuantumChannel::validate(double tol) const {
    if (!is_finite(choi_)) throw ArgumentError("QuantumChannel: non-finite Choi entries");
    if (!is_hermitian(choi_, 1e-10)) throw ArgumentError("QuantumChannel: Choi matrix not Hermitian");
    if (tp_violation() > tol) throw ArgumentError("QuantumChannel: not trace preserving (Tr_out J != I)");
    if (min_choi_eigenvalue() < -tol) throw ArgumentError("QuantumChannel: Choi matrix not positive semidefinite");
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != d_in() || rho.cols() != d_in()) throw ArgumentError("apply: input dimension mismatch");
    const int d = d_out();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d_in(); ++j)
        for (int i = 0; i < d_in(); ++i)
            if (rho(i, j) != cplx(0.0)) out += rho(i, j) * choi_.block(long(i) * d, long(j) * d, d, d);
    return out;
}

QuantumChannel QuantumChannel::with_dims(SystemDims in, SystemDims out) const {
    return QuantumChannel(choi_, std::move(in), std::move(out), false);
}

QuantumChannel channel_from_kraus(const std::vector<ComplexMatrix>& ops, const SystemDims& in,
                                  const SystemDims& out, bool check_completeness) {
    const long di = in.total(), dout = out.total(), dim = di * dout;
    check_choi_cap(dim);
    if (ops.empty()) throw ArgumentError("channel_from_kraus: empty Kraus set");
    ComplexMatrix completeness = ComplexMatrix::Zero(di, di);
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    std::vector<std::pair<long, cplx>> nz;
    for (const auto& k : ops) {
        if (k.rows() != dout || k.cols() != di) throw ArgumentError("channel_from_kraus: Kraus operator has wrong shape");
        if (check_completeness) completeness.noalias() += k.adjoint() * k;
        nz.clear();
        for (long i = 0; i < di; ++i)
            for (long o = 0; o < dout; ++o)
                if (k(o, i) != cplx(0.0)) nz.emplace_back(i * dout + o, k(o, i));
        if (double(nz.size()) * double(nz.size()) * 8 < double(dim) * double(dim)) {
            accumulate_outer(j, nz);
        } else {
            ComplexVector v = ComplexVector::Zero(dim);
            for (const auto& [idx, val] : nz) v(idx) = val;
            j.noalias() += v * v.adjoint();
        }
    }
    if (check_completeness && (completeness - ComplexMatrix::Identity(di, di)).cwiseAbs().maxCoeff() > 1e-9)
        throw ArgumentError("channel_from_kraus: sum K^dag K differs from the identity");
    return QuantumChannel(std::move(j), in, out, false);
}

std::vector<ComplexMatrix> kraus_operators(const QuantumChannel& n, double drop) {
    const int di = n.d_in(), dout = n.d_out();
    std::vector<ComplexMatrix> ops;
    for (const auto& p : canonical_spectrum(n.choi(), drop)) {
        ComplexMatrix k = ComplexMatrix::Zero(dout, di);
        const double s = std::sqrt(p.value);
        for (std::size_t t = 0; t < p.index.size(); ++t) {
            const int idx = p.index[t];
            k(idx % dout, idx / dout) = s * p.coeffs(Eigen::Index(t));
        }
        ops.push_back(std::move(k));
    }
    return ops;
}

StinespringIsometry stinespring(const QuantumChannel& n, double drop) {
    const auto ops = kraus_operators(n, drop);
    StinespringIsometry s;
    s.env_dim = int(ops.size());
    const int dout = n.d_out();
    s.v = ComplexMatrix::Zero(long(dout) * s.env_dim, n.d_in());
    for (int k = 0; k < s.env_dim; ++k)
        for (int o = 0; o < dout; ++o) s.v.row(long(o) * s.env_dim + k) = ops[k].row(o);
    return s;
}

QuantumChannel complementary_channel(const QuantumChannel& n, const std::string& env_label) {
    const auto ops = kraus_operators(n);
    const int r = int(ops.size()), di = n.d_in(), dout = n.d_out();
    const long dim = long(di) * r;
    check_choi_cap(dim);
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    // Complement Kraus operators F_o = sum_k |k><o| K_k.
    std::vector<std::pair<long, cplx>> nz;
    for (int o = 0; o < dout; ++o) {
        nz.clear();
        for (int i = 0; i < di; ++i)
            for (int k = 0; k < r; ++k)
                if (ops[k](o, i) != cplx(0.0)) nz.emplace_back(long(i) * r + k, ops[k](o, i));
        accumulate_outer(j, nz);
    }
    return QuantumChannel(std::move(j), n.in_dims(), SystemDims::single(env_label, r), false);
}

QuantumChannel channel_from_isometry(const ComplexMatrix& v, const SystemDims& in, const SystemDims& out,
                                     const SystemDims& traced) {
    const long dout = out.total(), de = traced.total();
    if (v.rows() != dout * de || v.cols() != in.total()) throw ArgumentError("channel_from_isometry: shape mismatch");
    std::vector<ComplexMatrix> ops;
    for (long e = 0; e < de; ++e) {
        ComplexMatrix k(dout, in.total());
        for (long o = 0; o < dout; ++o) k.row(o) = v.row(o * de + e);
        ops.push_back(std::move(k));
    }
    return channel_from_kraus(ops, in, out);
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
    if (second.d_in() != first.d_out()) throw ArgumentError("compose: dimension mismatch between channels");
    const int di = first.d_in(), dm = first.d_out(), dout = second.d_out();
    const long dim = long(di) * dout;
    check_choi_cap(dim);
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    for (int a = 0; a < di; ++a)
        for (int b = 0; b < di; ++b) {
            const ComplexMatrix mid = first.choi().block(long(a) * dm, long(b) * dm, dm, dm);
            if (mid.cwiseAbs().maxCoeff() == 0.0) continue;
            j.block(long(a) * dout, long(b) * dout, dout, dout) = second.apply(mid);
        }
    return QuantumChannel(std::move(j), first.in_dims(), second.out_dims(), false);
}

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b) {
    const int ai = a.d_in(), ao = a.d_out(), bi = b.d_in(), bo = b.d_out();
    const long dim = long(ai) * bi * ao * bo;
    check_choi_cap(dim);
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    // J[(ia,ib,oa,ob),(ja,jb,pa,pb)] = Ja[(ia,oa),(ja,pa)] Jb[(ib,ob),(jb,pb)]
    for (int ia = 0; ia < ai; ++ia)
        for (int ja = 0; ja < ai; ++ja) {
            const ComplexMatrix ba = a.image(ia, ja);
            if (ba.cwiseAbs().maxCoeff() == 0.0) continue;
            for (int ib = 0; ib < bi; ++ib)
                for (int jb = 0; jb < bi; ++jb) {
                    const ComplexMatrix bb = b.image(ib, jb);
                    if (bb.cwiseAbs().maxCoeff() == 0.0) continue;
                    const long r0 = (long(ia) * bi + ib) * ao * bo, c0 = (long(ja) * bi + jb) * ao * bo;
                    for (int oa = 0; oa < ao; ++oa)
                        for (int pa = 0; pa < ao; ++pa)
                            if (ba(oa, pa) != cplx(0.0))
                                j.block(r0 + long(oa) * bo, c0 + long(pa) * bo, bo, bo) = ba(oa, pa) * bb;
                }
        }
    return QuantumChannel(std::move(j), a.in_dims().concat(b.in_dims()), a.out_dims().concat(b.out_dims()), false);
}

QuantumChannel affine_mix(const QuantumChannel& a, const QuantumChannel& b, double weight_b) {
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) throw ArgumentError("affine_mix: dimension mismatch");
    return QuantumChannel((1.0 - weight_b) * a.choi() + weight_b * b.choi(), a.in_dims(), a.out_dims(), false);
}

ComplexMatrix apply_first(const ComplexMatrix& choi, int d_t, int d_o, const ComplexMatrix& x_perm, int d_r) {
    ComplexMatrix y = ComplexMatrix::Zero(long(d_o) * d_r, long(d_o) * d_r);
    for (int t = 0; t < d_t; ++t)
        for (int s = 0; s < d_t; ++s) {
            const auto xb = x_perm.block(long(t) * d_r, long(s) * d_r, d_r, d_r);
            if (xb.cwiseAbs().maxCoeff() == 0.0) continue;
            const auto jb = choi.block(long(t) * d_o, long(s) * d_o, d_o, d_o);
            for (int o = 0; o < d_o; ++o)
                for (int p = 0; p < d_o; ++p)
                    if (jb(o, p) != cplx(0.0)) y.block(long(o) * d_r, long(p) * d_r, d_r, d_r) += jb(o, p) * xb;
        }
    return y;
}

std::pair<ComplexMatrix, SystemDims> apply_local(const QuantumChannel& n, const ComplexMatrix& x,
                                                 const SystemDims& x_dims,
                                                 const std::vector<std::string>& targets) {
    if (targets.size() != n.in_dims().size()) throw ArgumentError("apply_local: target count mismatch");
    std::vector<int> tpos;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const int p = int(x_dims.index_of(targets[k]));
        if (x_dims.dim(p) != n.in_dims().dim(k))
            throw ArgumentError("apply_local: dimension of '" + targets[k] + "' does not match the channel input");
        tpos.push_back(p);
    }
    std::vector<int> perm = tpos;
    std::vector<std::pair<std::string, int>> rest;
    for (std::size_t i = 0; i < x_dims.size(); ++i)
        if (std::find(tpos.begin(), tpos.end(), int(i)) == tpos.end()) {
            perm.push_back(int(i));
            rest.emplace_back(x_dims.label(i), x_dims.dim(i));
        }
    const int d_t = n.d_in(), d_o = n.d_out();
    long d_r = 1;
    for (const auto& r : rest) d_r *= r.second;
    const ComplexMatrix xp = permute_systems(x, x_dims.dims(), perm);
    const ComplexMatrix y = apply_first(n.choi(), d_t, d_o, xp, int(d_r));
    // Move the output block to where the first target sat.
    const int first = *std::min_element(tpos.begin(), tpos.end());
    int insert_at = 0;
    for (int i = 0; i < first; ++i)
        if (std::find(tpos.begin(), tpos.end(), i) == tpos.end()) ++insert_at;
    std::vector<std::pair<std::string, int>> cur;
    cur.emplace_back("__out", d_o);
    for (const auto& r : rest) cur.push_back(r);
    std::vector<int> cur_dims;
    for (const auto& c : cur) cur_dims.push_back(c.second);
    std::vector<int> order;
    for (int i = 0; i < int(rest.size()); ++i) {
        if (i == insert_at) order.push_back(0);
        order.push_back(i + 1);
    }
    if (insert_at == int(rest.size())) order.push_back(0);
    ComplexMatrix result = permute_systems(y, cur_dims, order);
    std::vector<std::pair<std::string, int>> out_sys;
    for (int idx : order) {
        if (idx == 0) {
            for (const auto& s : n.out_dims().systems()) out_sys.push_back(s);
        } else {
            out_sys.push_back(cur[idx]);
        }
    }
    return {std::move(result), SystemDims(std::move(out_sys))};
}

namespace {
std::vector<int> order_of(const SystemDims& dims, const std::vector<std::string>& order) {
    if (order.size() != dims.size()) throw ArgumentError("permutation must list every system exactly once");
    std::vector<int> perm;
    for (const auto& l : order) perm.push_back(int(dims.index_of(l)));
    return perm;
}
}  // namespace

QuantumChannel permute_output(const QuantumChannel& n, const std::vector<std::string>& order) {
    const auto perm = order_of(n.out_dims(), order);
    std::vector<int> full{0};
    for (int p : perm) full.push_back(p + 1);
    std::vector<int> dims{n.d_in()};
    for (int d : n.out_dims().dims()) dims.push_back(d);
    return QuantumChannel(permute_systems(n.choi(), dims, full), n.in_dims(), n.out_dims().subset(order), false);
}

QuantumChannel permute_input(const QuantumChannel& n, const std::vector<std::string>& order) {
    const auto perm = order_of(n.in_dims(), order);
    std::vector<int> full = perm;
    full.push_back(int(perm.size()));
    std::vector<int> dims = n.in_dims().dims();
    dims.push_back(n.d_out());
    return QuantumChannel(permute_systems(n.choi(), dims, full), n.in_dims().subset(order), n.out_dims(), false);
}

QuantumChannel trace_out_outputs(const QuantumChannel& n, const std::vector<std::string>& discard) {
    std::vector<int> dims{n.d_in()};
    std::vector<bool> keep{true};
    std::vector<std::pair<std::string, int>> kept;
    for (std::size_t i = 0; i < n.out_dims().size(); ++i) {
        dims.push_back(n.out_dims().dim(i));
        const bool k = std::find(discard.begin(), discard.end(), n.out_dims().label(i)) == discard.end();
        keep.push_back(k);
        if (k) kept.emplace_back(n.out_dims().label(i), n.out_dims().dim(i));
    }
    for (const auto& l : discard) n.out_dims().index_of(l);
    if (kept.empty()) kept.emplace_back("trivial", 1);
    return QuantumChannel(partial_trace(n.choi(), dims, keep), n.in_dims(), SystemDims(std::move(kept)), false);
}

QuantumChannel compress_output(const QuantumChannel& n, const ComplexMatrix& p, const std::string& label) {
    if (p.rows() != n.d_out()) throw ArgumentError("compress_output: isometry row count mismatch");
    const int di = n.d_in(), s = int(p.cols()), d = n.d_out();
    ComplexMatrix j(long(di) * s, long(di) * s);
    const ComplexMatrix pa = p.adjoint();
    for (int a = 0; a < di; ++a)
        for (int b = 0; b < di; ++b) {
            const auto blk = n.choi().block(long(a) * d, long(b) * d, d, d);
            j.block(long(a) * s, long(b) * s, s, s) = pa * blk * p;
        }
    return QuantumChannel(std::move(j), n.in_dims(), SystemDims::single(label, s), false);
}

ComplexMatrix weyl(int a, int b, int d) {
    const double pi = std::acos(-1.0);
    ComplexMatrix x = ComplexMatrix::Zero(d, d), z = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        x((k + 1) % d, k) = 1.0;
        z(k, k) = std::polar(1.0, 2 * pi * k / d);
    }
    if (d == 2) z(1, 1) = -1.0;
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    for (int i = 0; i < ((a % d) + d) % d; ++i) u = x * u;
    ComplexMatrix zz = ComplexMatrix::Identity(d, d);
    for (int i = 0; i < ((b % d) + d) % d; ++i) zz = z * zz;
    return u * zz;
}

ComplexMatrix pauli_x(int d) { return weyl(1, 0, d); }
ComplexMatrix pauli_z(int d) { return weyl(0, 1, d); }

ComplexMatrix max_entangled(int d) {
    ComplexVector v = ComplexVector::Zero(long(d) * d);
    for (int i = 0; i < d; ++i) v(long(i) * d + i) = 1.0 / std::sqrt(double(d));
    return v * v.adjoint();
}

ComplexMatrix max_mixed(int d) { return ComplexMatrix::Identity(d, d) / double(d); }

ComplexMatrix computational_state(const std::string& bits) {
    if (bits.empty()) throw ArgumentError("computational_state: empty bit string");
    long idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw ArgumentError("computational_state: bit string must contain only 0/1");
        idx = idx * 2 + (c - '0');
    }
    const long d = 1L << bits.size();
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(idx, idx) = 1.0;
    return m;
}

ComplexMatrix basis_projector(int d, int k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(k, k) = 1.0;
    return m;
}

QuantumChannel identity_channel(int d, const std::string& label) {
    return unitary_channel(ComplexMatrix::Identity(d, d), SystemDims::single(label, d), SystemDims::single(label, d));
}

QuantumChannel unitary_channel(const ComplexMatrix& u, const SystemDims& in, const SystemDims& out) {
    return channel_from_kraus({u}, in, out);
}

QuantumChannel depolarizing(double p, int d, const std::string& label) {
    if (p < 0 || p > 1.0 + 1e-12) throw ArgumentError("depolarizing: p must lie in [0,1]");
    const auto dims = SystemDims::single(label, d);
    const ComplexMatrix j = (1.0 - p) * double(d) * max_entangled(d) +
                            p * ComplexMatrix::Identity(long(d) * d, long(d) * d) / double(d);
    return QuantumChannel(j, dims, dims, false);
}

QuantumChannel replacer_channel(const ComplexMatrix& sigma, const SystemDims& in, const SystemDims& out) {
    return QuantumChannel(tensor_product(ComplexMatrix::Identity(in.total(), in.total()), sigma), in, out);
}

QuantumChannel dephasing_channel(int d, const std::string& label) {
    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < d; ++k) ops.push_back(basis_projector(d, k));
    const auto dims = SystemDims::single(label, d);
    return channel_from_kraus(ops, dims, dims);
}

QuantumChannel quantum_one_time_pad(int a, int b) {
    if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw ArgumentError("quantum_one_time_pad: key bits must be 0/1");
    const auto dims = SystemDims::single("Q", 2);
    return unitary_channel(weyl(a, b, 2), dims, dims);
}

QuantumChannel qotp_average() {
    std::vector<ComplexMatrix> ops;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) ops.push_back(0.5 * weyl(a, b, 2));
    const auto dims = SystemDims::single("Q", 2);
    return channel_from_kraus(ops, dims, dims);
}

double depolarizing_diamond_distance(double p, int d) { return 2.0 * p * (double(d) * d - 1.0) / (double(d) * d); }
double depolarizing_p_for_diamond(double eps, int d) { return eps * double(d) * d / (2.0 * (double(d) * d - 1.0)); }

GadgetValue standard_gadget(const std::string& name, const std::vector<double>& params, const std::string& bits) {
    auto need = [&](std::size_t k) {
        if (params.size() < k) throw ArgumentError("gadget '" + name + "' needs " + std::to_string(k) + " parameter(s)");
    };
    if (name == "max_entangled") {
        need(1);
        const int d = int(params[0]);
        return DensityState(max_entangled(d), SystemDims({{"Qbar", d}, {"Q", d}}));
    }
    if (name == "max_mixed") {
        need(1);
        const int d = int(params[0]);
        return DensityState(max_mixed(d), SystemDims::single("Q", d));
    }
    if (name == "depolarizing") {
        need(2);
        return depolarizing(params[0], int(params[1]));
    }
    if (name == "computational_state") {
        ComplexMatrix m = computational_state(bits);
        std::vector<std::pair<std::string, int>> sys;
        for (std::size_t i = 0; i < bits.size(); ++i) sys.emplace_back("q" + std::to_string(i), 2);
        return DensityState(std::move(m), SystemDims(std::move(sys)));
    }
    throw ArgumentError("unknown gadget '" + name + "'");
}

std::string write_channel(const QuantumChannel& n) {
    std::ostringstream os;
    os << "CHOI " << n.d_in() << " " << n.d_out() << "\n" << write_matrix(n.choi());
    return os.str();
}

QuantumChannel read_channel(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    int di = 0, dout = 0;
    if (!(is >> tag >> di >> dout) || tag != "CHOI" || di < 1 || dout < 1)
        throw ArgumentError("channel file: expected header 'CHOI d_in d_out'");
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    ComplexMatrix j = read_matrix(rest);
    if (j.rows() != long(di) * dout || j.cols() != long(di) * dout)
        throw ArgumentError("channel file: matrix body is not (d_in*d_out) square");
    return QuantumChannel(std::move(j), SystemDims::single("in", di), SystemDims::single("out", dout));
}

void save_channel(const std::string& path, const QuantumChannel& n) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << write_channel(n);
}

QuantumChannel load_channel(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return read_channel(ss.str());
}

}  // namespace cdqs
