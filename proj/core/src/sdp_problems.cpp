#include "cdqs/distance.hpp"

#include "cdqs/errors.hpp"
#include "cdqs/linalg_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdqs {

int OutputDecomposition::support_rank() const {
    int r = 0;
    for (const auto& b : blocks) r += b.rank();
    return r;
}

int OutputDecomposition::largest_block() const {
    int r = 0;
    for (const auto& b : blocks) r = std::max(r, b.rank());
    return r;
}

ComplexMatrix OutputDecomposition::compress(const ComplexMatrix& x, int b) const {
    const auto& blk = blocks[b];
    const int k = int(blk.index.size());
    ComplexMatrix sub(k, k);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) sub(r, c) = x(blk.index[r], blk.index[c]);
    return blk.basis.adjoint() * sub * blk.basis;
}

void OutputDecomposition::embed_add(const ComplexMatrix& y, int b, ComplexMatrix& out) const {
    const auto& blk = blocks[b];
    const ComplexMatrix full = blk.basis * y * blk.basis.adjoint();
    const int k = int(blk.index.size());
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) out(blk.index[r], blk.index[c]) += full(r, c);
}

namespace {

OutputDecomposition decompose(int dim, const std::vector<const ComplexMatrix*>& ops, const ComplexMatrix& total,
                              int stride) {
    double scale = 0;
    for (const auto* op : ops) scale = std::max(scale, op->cwiseAbs().maxCoeff());
    const double tol = 1e-13 * std::max(1.0, scale);
    UnionFind uf(dim);
    std::vector<bool> active(dim, false);
    for (const auto* op : ops)
        for (Eigen::Index c = 0; c < op->cols(); ++c)
            for (Eigen::Index r = 0; r < op->rows(); ++r)
                if (std::abs((*op)(r, c)) > tol) {
                    const int a = int(r % stride), b = int(c % stride);
                    active[a] = active[b] = true;
                    uf.unite(a, b);
                }
    OutputDecomposition out;
    out.dim = dim;
    for (auto& g : uf.groups(active)) {
        const int k = int(g.size());
        ComplexMatrix sub(k, k);
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < k; ++r) sub(r, c) = total(g[r], g[c]);
        ComplexMatrix basis = support_basis(hermitian_part(sub));
        if (basis.cols() == 0) continue;
        out.blocks.push_back({std::move(g), std::move(basis)});
    }
    return out;
}

// Real-coefficient term of a linear functional on one block entry.
struct Term {
    int block, r, c;
    double coef;
};

// Adds the Hermitian matrix equation  sum_terms(p,q) = target(p,q)  for
// p <= q as real and imaginary scalar constraints.
template <class Terms>
void add_matrix_equation(SdpProblem& prob, int n, Terms&& terms, const ComplexMatrix* target) {
    for (int q = 0; q < n; ++q)
        for (int p = 0; p <= q; ++p) {
            BlockOperator re, im;
            for (const Term& t : terms(p, q)) {
                re.add_re(t.block, t.r, t.c, t.coef);
                if (p != q) im.add_im(t.block, t.r, t.c, t.coef);
            }
            const cplx v = target ? (*target)(p, q) : cplx(0.0);
            prob.add_constraint(std::move(re), v.real());
            if (p != q) prob.add_constraint(std::move(im), v.imag());
        }
}

void add_trace_equation(SdpProblem& prob, const std::vector<std::pair<int, int>>& blocks, double value) {
    BlockOperator op;
    for (auto [blk, n] : blocks)
        for (int i = 0; i < n; ++i) op.add(blk, i, i, 1.0);
    prob.add_constraint(std::move(op), value);
}

double upper_value(const SdpSolution& s) { return std::max(s.primal_value, s.dual_value); }

SdpStatus worst(SdpStatus a, SdpStatus b) {
    auto rank = [](SdpStatus s) { return s == SdpStatus::Optimal ? 0 : s == SdpStatus::MaxIter ? 1 : 2; };
    return rank(a) >= rank(b) ? a : b;
}

ComplexMatrix choi_block(const QuantumChannel& n, const OutputDecomposition& dec, int b) {
    const int din = n.d_in(), s = dec.blocks[b].rank();
    ComplexMatrix j(long(din) * s, long(din) * s);
    for (int a = 0; a < din; ++a)
        for (int c = 0; c < din; ++c) j.block(long(a) * s, long(c) * s, s, s) = dec.compress(n.image(a, c), b);
    return hermitian_part(j);
}

}  // namespace

OutputDecomposition decompose_channel_output(const QuantumChannel& n) {
    const int din = n.d_in(), dout = n.d_out();
    ComplexMatrix total = ComplexMatrix::Zero(dout, dout);
    for (int i = 0; i < din; ++i) total += n.image(i, i);
    return decompose(dout, {&n.choi()}, total, dout);
}

OutputDecomposition decompose_states(const std::vector<ComplexMatrix>& states) {
    if (states.empty()) throw ArgumentError("decompose_states: empty family");
    const int d = int(states.front().rows());
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    std::vector<const ComplexMatrix*> ops;
    for (const auto& s : states) {
        if (s.rows() != d || s.cols() != d) throw ArgumentError("decompose_states: dimension mismatch");
        total += s;
        ops.push_back(&s);
    }
    return decompose(d, ops, total, d);
}

DiamondResult diamond_norm(const ComplexMatrix& delta, int d_in, int d_out, const SdpOptions& opt) {
    const long n = long(d_in) * d_out;
    if (delta.rows() != n || delta.cols() != n) throw ArgumentError("diamond_norm: Choi dimension mismatch");
    if (!is_hermitian(delta, 1e-10)) throw ArgumentError("diamond_norm: map is not Hermiticity preserving");
    const ComplexMatrix j = hermitian_part(delta);
    const ComplexMatrix marg = partial_trace(j, std::vector<int>{d_in, d_out}, std::vector<bool>{true, false});
    const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
    if (marg.cwiseAbs().maxCoeff() > 1e-10 * scale) return diamond_norm_general(delta, d_in, d_out, opt);

    DiamondResult res;
    if (j.cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        res.status = SdpStatus::Optimal;
        res.worst_input = max_mixed(d_in);
        return res;
    }
    SdpProblem prob;
    prob.sense = Sense::Maximize;
    const int W = prob.add_block(int(n)), S = prob.add_block(int(n)), R = prob.add_block(d_in);
    prob.objective.add_dense(W, j);
    add_matrix_equation(
        prob, int(n),
        [&](int p, int q) {
            std::vector<Term> t{{W, p, q, 1.0}, {S, p, q, 1.0}};
            if (p % d_out == q % d_out) t.push_back({R, p / d_out, q / d_out, -1.0});
            return t;
        },
        nullptr);
    add_trace_equation(prob, {{R, d_in}}, 1.0);
    const SdpSolution sol = solve(prob, opt);
    res.status = sol.status;
    res.value = std::clamp(2.0 * upper_value(sol), 0.0, std::numeric_limits<double>::max());
    if (!sol.x.empty()) res.worst_input = hermitian_part(ComplexMatrix(sol.x[R].transpose()));
    return res;
}

DiamondResult diamond_norm_general(const ComplexMatrix& delta, int d_in, int d_out, const SdpOptions& opt) {
    const long n = long(d_in) * d_out;
    if (delta.rows() != n || delta.cols() != n) throw ArgumentError("diamond_norm: Choi dimension mismatch");
    if (!is_hermitian(delta, 1e-10)) throw ArgumentError("diamond_norm: map is not Hermiticity preserving");
    const ComplexMatrix j = hermitian_part(delta);
    SdpProblem prob;
    prob.sense = Sense::Maximize;
    const int B = prob.add_block(int(2 * n)), R0 = prob.add_block(d_in), R1 = prob.add_block(d_in);
    for (long c = 0; c < n; ++c)
        for (long r = 0; r < n; ++r)
            if (j(r, c) != cplx(0.0)) prob.objective.add(B, int(n + r), int(c), j(r, c) / 2.0);
    for (int side = 0; side < 2; ++side) {
        const int off = side * int(n), rho = side == 0 ? R0 : R1;
        add_matrix_equation(
            prob, int(n),
            [&](int p, int q) {
                std::vector<Term> t{{B, off + p, off + q, 1.0}};
                if (p % d_out == q % d_out) t.push_back({rho, p / d_out, q / d_out, -1.0});
                return t;
            },
            nullptr);
        add_trace_equation(prob, {{rho, d_in}}, 1.0);
    }
    const SdpSolution sol = solve(prob, opt);
    DiamondResult res;
    res.status = sol.status;
    res.value = std::max(0.0, upper_value(sol));
    if (!sol.x.empty()) res.worst_input = hermitian_part(ComplexMatrix(sol.x[R0].transpose()));
    return res;
}

DiamondResult diamond_distance(const QuantumChannel& a, const QuantumChannel& b, const SdpOptions& opt) {
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) throw ArgumentError("diamond_distance: dimension mismatch");
    return diamond_norm(a.choi() - b.choi(), a.d_in(), a.d_out(), opt);
}

DecoderResult optimal_decoder_fidelity(const QuantumChannel& n, const ComplexMatrix* input, const SdpOptions& opt) {
    const int dq = n.d_in(), dm = n.d_out();
    ComplexMatrix t = max_mixed(dq);
    if (input) {
        if (input->rows() != dq || input->cols() != dq) throw ArgumentError("optimal_decoder_fidelity: input dimension");
        t = hermitian_part(*input).transpose();
    }
    const OutputDecomposition dec = decompose_channel_output(n);
    DecoderResult res;
    res.status = SdpStatus::Optimal;
    std::vector<ComplexMatrix> dblocks;
    for (int b = 0; b < int(dec.blocks.size()); ++b) {
        const int s = dec.blocks[b].rank();
        const int nb = s * dq;
        ComplexMatrix w = ComplexMatrix::Zero(nb, nb);
        for (int q = 0; q < dq; ++q)
            for (int qq = 0; qq < dq; ++qq) {
                const ComplexMatrix img = dec.compress(n.image(q, qq), b);
                const ComplexMatrix tt = t.col(q) * t.row(qq);
                w += tensor_product(img, tt);
            }
        w = hermitian_part(ComplexMatrix(w.transpose()));
        SdpProblem prob;
        prob.sense = Sense::Maximize;
        const int X = prob.add_block(nb);
        prob.objective.add_dense(X, w);
        const ComplexMatrix eye = ComplexMatrix::Identity(s, s);
        add_matrix_equation(
            prob, s,
            [&](int k, int kk) {
                std::vector<Term> v;
                for (int q = 0; q < dq; ++q) v.push_back({X, k * dq + q, kk * dq + q, 1.0});
                return v;
            },
            &eye);
        const SdpSolution sol = solve(prob, opt);
        res.status = worst(res.status, sol.status);
        res.f_star += sol.primal_value;
        dblocks.push_back(sol.x.empty() ? ComplexMatrix(ComplexMatrix::Zero(nb, nb)) : hermitian_part(sol.x[X]));
    }

    // Decoder on the full message space; off-support inputs map to |0><0|.
    ComplexMatrix jd = ComplexMatrix::Zero(long(dm) * dq, long(dm) * dq);
    ComplexMatrix proj = ComplexMatrix::Zero(dm, dm);
    for (int b = 0; b < int(dec.blocks.size()); ++b) {
        const auto& blk = dec.blocks[b];
        const int s = blk.rank(), k = int(blk.index.size());
        const ComplexMatrix& p = blk.basis;
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < k; ++r) {
                ComplexMatrix acc = ComplexMatrix::Zero(dq, dq);
                for (int kk = 0; kk < s; ++kk)
                    for (int kr = 0; kr < s; ++kr) {
                        const cplx coef = std::conj(p(r, kr)) * p(c, kk);
                        if (coef != cplx(0.0)) acc += coef * dblocks[b].block(long(kr) * dq, long(kk) * dq, dq, dq);
                    }
                jd.block(long(blk.index[r]) * dq, long(blk.index[c]) * dq, dq, dq) = acc;
            }
        const ComplexMatrix pp = p * p.adjoint();
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < k; ++r) proj(blk.index[r], blk.index[c]) = pp(r, c);
    }
    const ComplexMatrix rest = ComplexMatrix::Identity(dm, dm) - proj;
    for (int c = 0; c < dm; ++c)
        for (int r = 0; r < dm; ++r)
            if (std::abs(rest(c, r)) > 1e-14) jd(long(r) * dq, long(c) * dq) += rest(c, r);
    jd = hermitian_part(jd);
    res.decoder = QuantumChannel(std::move(jd), n.out_dims(), n.in_dims(), false);

    // Choi of decoder o n, assembled blockwise.
    ComplexMatrix comp = ComplexMatrix::Zero(long(dq) * dq, long(dq) * dq);
    for (int i = 0; i < dq; ++i)
        for (int jj = 0; jj < dq; ++jj) {
            ComplexMatrix out = ComplexMatrix::Zero(dq, dq);
            const ComplexMatrix img = n.image(i, jj);
            for (int b = 0; b < int(dec.blocks.size()); ++b) {
                const ComplexMatrix y = dec.compress(img, b);
                const int s = dec.blocks[b].rank();
                for (int kk = 0; kk < s; ++kk)
                    for (int k = 0; k < s; ++k)
                        if (std::abs(y(k, kk)) > 0) out += y(k, kk) * dblocks[b].block(long(k) * dq, long(kk) * dq, dq, dq);
            }
            comp.block(long(i) * dq, long(jj) * dq, dq, dq) = out;
        }
    res.composed = hermitian_part(comp);
    return res;
}

SimulatorResult optimal_constant_simulator(const QuantumChannel& n, const SdpOptions& opt) {
    const int dq = n.d_in(), dm = n.d_out();
    const OutputDecomposition dec = decompose_channel_output(n);
    SdpProblem prob;
    struct Vars {
        int y, p, sigma, s;
    };
    std::vector<Vars> vars;
    for (int b = 0; b < int(dec.blocks.size()); ++b) {
        const int s = dec.blocks[b].rank();
        Vars v{};
        v.s = s;
        v.y = prob.add_block(dq * s);
        v.p = prob.add_block(dq * s);
        v.sigma = prob.add_block(s);
        vars.push_back(v);
    }
    const int T = prob.add_block(dq), t = prob.add_block(1);
    prob.objective.add(t, 0, 0, 2.0);
    for (int b = 0; b < int(dec.blocks.size()); ++b) {
        const Vars v = vars[b];
        const ComplexMatrix jb = choi_block(n, dec, b);
        add_matrix_equation(
            prob, dq * v.s,
            [&](int p, int q) {
                std::vector<Term> tt{{v.y, p, q, 1.0}, {v.p, p, q, -1.0}};
                if (p / v.s == q / v.s) tt.push_back({v.sigma, p % v.s, q % v.s, 1.0});
                return tt;
            },
            &jb);
    }
    add_matrix_equation(
        prob, dq,
        [&](int i, int j) {
            std::vector<Term> tt{{T, i, j, 1.0}};
            for (const Vars& v : vars)
                for (int k = 0; k < v.s; ++k) tt.push_back({v.y, i * v.s + k, j * v.s + k, 1.0});
            if (i == j) tt.push_back({t, 0, 0, -1.0});
            return tt;
        },
        nullptr);
    std::vector<std::pair<int, int>> sig;
    for (const Vars& v : vars) sig.emplace_back(v.sigma, v.s);
    add_trace_equation(prob, sig, 1.0);

    const SdpSolution sol = solve(prob, opt);
    SimulatorResult res;
    res.status = sol.status;
    res.delta_star = std::max(0.0, upper_value(sol));
    ComplexMatrix sigma = ComplexMatrix::Zero(dm, dm);
    if (!sol.x.empty())
        for (int b = 0; b < int(dec.blocks.size()); ++b) dec.embed_add(sol.x[vars[b].sigma], b, sigma);
    sigma = hermitian_part(sigma);
    const double tr = sigma.trace().real();
    if (tr > 0) sigma /= tr;
    res.sigma = DensityState(std::move(sigma), n.out_dims(), false);
    return res;
}

DiscriminationResult optimal_discrimination(const std::vector<ComplexMatrix>& states, const std::vector<double>& priors,
                                            const SdpOptions& opt) {
    if (states.size() != priors.size()) throw ArgumentError("optimal_discrimination: priors/states size mismatch");
    double total = 0;
    for (double p : priors) {
        if (p < 0) throw ArgumentError("optimal_discrimination: negative prior");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ArgumentError("optimal_discrimination: priors must sum to 1");
    const OutputDecomposition dec = decompose_states(states);
    DiscriminationResult res;
    res.status = SdpStatus::Optimal;
    for (int b = 0; b < int(dec.blocks.size()); ++b) {
        const int s = dec.blocks[b].rank();
        std::vector<ComplexMatrix> weighted;
        for (std::size_t z = 0; z < states.size(); ++z) weighted.push_back(priors[z] * hermitian_part(dec.compress(states[z], b)));
        // Identical weighted states need no measurement.
        bool trivial = true;
        for (std::size_t z = 1; z < weighted.size() && trivial; ++z) trivial = (weighted[z] - weighted[0]).norm() < 1e-14;
        if (trivial) {
            res.value += weighted[0].trace().real();
            continue;
        }
        SdpProblem prob;
        prob.sense = Sense::Maximize;
        std::vector<int> e;
        for (std::size_t z = 0; z < states.size(); ++z) {
            e.push_back(prob.add_block(s));
            prob.objective.add_dense(e.back(), weighted[z]);
        }
        const ComplexMatrix eye = ComplexMatrix::Identity(s, s);
        add_matrix_equation(
            prob, s,
            [&](int p, int q) {
                std::vector<Term> tt;
                for (int blk : e) tt.push_back({blk, p, q, 1.0});
                return tt;
            },
            &eye);
        const SdpSolution sol = solve(prob, opt);
        res.status = worst(res.status, sol.status);
        res.value += upper_value(sol);
    }
    return res;
}

}  // namespace cdqs
