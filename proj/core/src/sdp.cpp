#include "cdqs/sdp.hpp"

#include "cdqs/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <numeric>

namespace cdqs {

std::string to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "optimal";
        case SdpStatus::MaxIter: return "max_iter";
        case SdpStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

void BlockOperator::add(int block, int r, int c, cplx v) {
    if (v == cplx(0.0)) return;
    if (r == c) {
        entries_.push_back({block, r, r, cplx(v.real(), 0.0)});
    } else {
        entries_.push_back({block, r, c, v});
        entries_.push_back({block, c, r, std::conj(v)});
    }
}

void BlockOperator::add_re(int block, int p, int q, double coef) {
    if (p == q) add(block, p, p, coef);
    else add(block, q, p, cplx(coef / 2, 0.0));
}

void BlockOperator::add_im(int block, int p, int q, double coef) {
    if (p == q) return;
    add(block, q, p, cplx(0.0, -coef / 2));
}

void BlockOperator::add_dense(int block, const ComplexMatrix& h, double zero_tol) {
    for (Eigen::Index c = 0; c < h.cols(); ++c)
        for (Eigen::Index r = 0; r < h.rows(); ++r)
            if (std::abs(h(r, c)) > zero_tol) entries_.push_back({block, int(r), int(c), h(r, c)});
}

int SdpProblem::add_block(int dim) {
    if (dim < 1) throw ArgumentError("SdpProblem: block dimension must be >= 1");
    block_dims.push_back(dim);
    return int(block_dims.size()) - 1;
}

int SdpProblem::add_constraint(BlockOperator op, double bound, Relation rel) {
    constraints.push_back({std::move(op), bound, rel});
    return int(constraints.size()) - 1;
}

void SdpProblem::validate() const {
    auto check = [&](const BlockOperator& op, const std::string& what) {
        std::vector<ComplexMatrix> acc(block_dims.size());
        for (const auto& e : op.entries()) {
            if (e.block < 0 || e.block >= int(block_dims.size()))
                throw ArgumentError(what + ": entry refers to an unknown block");
            const int n = block_dims[e.block];
            if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n)
                throw ArgumentError(what + ": entry outside its block");
            if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
                throw ArgumentError(what + ": non-finite coefficient");
            if (acc[e.block].size() == 0) acc[e.block] = ComplexMatrix::Zero(n, n);
            acc[e.block](e.row, e.col) += e.value;
        }
        for (const auto& a : acc)
            if (a.size() && !is_hermitian(a, 1e-12)) throw ArgumentError(what + ": operator is not Hermitian");
    };
    check(objective, "objective");
    for (std::size_t i = 0; i < constraints.size(); ++i) check(constraints[i].op, "constraint " + std::to_string(i));
}

int default_max_iterations() {
    if (const char* env = std::getenv("CDQS_SDP_MAX_ITER")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 120;
}

namespace {

struct Entry {
    int r, c;
    cplx v;
};

struct Segment {
    int con;
    std::vector<Entry> e;
};

using Blocks = std::vector<ComplexMatrix>;

struct Instance {
    std::vector<int> n;                       // all blocks, slack blocks appended
    std::vector<std::vector<Segment>> segs;   // per block
    std::vector<std::vector<Entry>> cost;     // per block
    RealVector b;
    int m = 0;
    long ntot = 0;
};

double inner(const Blocks& a, const Blocks& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].adjoint().cwiseProduct(b[k].transpose())).sum().real();
    return s;
}

double fro(const Blocks& a) {
    double s = 0;
    for (const auto& x : a) s += x.squaredNorm();
    return std::sqrt(s);
}

// Re Tr(A W) for a segment.
double seg_apply(const std::vector<Entry>& e, const ComplexMatrix& w) {
    double s = 0;
    for (const auto& t : e) s += (t.v * w(t.c, t.r)).real();
    return s;
}

RealVector op_apply(const Instance& in, const Blocks& w) {
    RealVector out = RealVector::Zero(in.m);
    for (std::size_t k = 0; k < in.n.size(); ++k)
        for (const auto& s : in.segs[k]) out(s.con) += seg_apply(s.e, w[k]);
    return out;
}

Blocks op_adjoint(const Instance& in, const RealVector& y) {
    Blocks out;
    for (std::size_t k = 0; k < in.n.size(); ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(in.n[k], in.n[k]);
        for (const auto& s : in.segs[k]) {
            const double yi = y(s.con);
            if (yi == 0.0) continue;
            for (const auto& t : s.e) a(t.r, t.c) += yi * t.v;
        }
        out.push_back(std::move(a));
    }
    return out;
}

Blocks cost_blocks(const Instance& in) {
    Blocks c;
    for (std::size_t k = 0; k < in.n.size(); ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(in.n[k], in.n[k]);
        for (const auto& t : in.cost[k]) a(t.r, t.c) += t.v;
        c.push_back(std::move(a));
    }
    return c;
}

bool chol_inverse(const ComplexMatrix& a, ComplexMatrix& inv) {
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) return false;
    inv = llt.solve(ComplexMatrix::Identity(a.rows(), a.cols()));
    inv = (inv + inv.adjoint()).eval() * 0.5;
    return true;
}

// Largest alpha <= 1 keeping x + alpha*dx positive definite, damped by gamma.
double step_length(const Blocks& x, const Blocks& dx, double gamma) {
    double alpha = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double lmin;
        if (x[k].rows() == 1) {
            lmin = dx[k](0, 0).real() / x[k](0, 0).real();
        } else {
            Eigen::LLT<ComplexMatrix> llt(x[k]);
            if (llt.info() != Eigen::Success) return 0.0;
            ComplexMatrix t = llt.matrixL().solve(dx[k]);
            t = llt.matrixL().solve(t.adjoint().eval()).adjoint();
            t = (t + t.adjoint()).eval() * 0.5;
            lmin = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(t, Eigen::EigenvaluesOnly).eigenvalues()(0);
        }
        if (lmin < 0) alpha = std::min(alpha, -gamma / lmin);
    }
    return alpha;
}

class SchurSystem {
public:
    explicit SchurSystem(const Instance& in) : in_(in) {
        // Constraint pairs that share a block.
        std::vector<std::vector<int>> touch(in.n.size());
        for (std::size_t k = 0; k < in.n.size(); ++k)
            for (const auto& s : in.segs[k]) touch[k].push_back(s.con);
        long pairs = 0;
        for (const auto& t : touch) pairs += long(t.size()) * long(t.size());
        dense_ = in.m <= 2500 || double(pairs) > 0.3 * double(in.m) * double(in.m);
        if (double(in.m) * in.m > 6.4e7 && dense_) dense_ = false;
    }

    void build(const Blocks& x, const Blocks& zinv) {
        const int m = in_.m;
        if (dense_) dense_m_ = Eigen::MatrixXd::Zero(m, m);
        else trip_.clear();
        for (std::size_t k = 0; k < in_.n.size(); ++k) {
            const auto& segs = in_.segs[k];
            if (segs.empty()) continue;
            const int nb = in_.n[k];
            const ComplexMatrix& X = x[k];
            const ComplexMatrix& Zi = zinv[k];
            ComplexMatrix h(nb, nb);
            for (const auto& sj : segs) {
                // H = Zinv A_j X
                if (long(sj.e.size()) > 2L * nb) {
                    ComplexMatrix a = ComplexMatrix::Zero(nb, nb);
                    for (const auto& t : sj.e) a(t.r, t.c) += t.v;
                    h.noalias() = Zi * a * X;
                } else {
                    h.setZero();
                    for (const auto& t : sj.e) h.noalias() += (t.v * Zi.col(t.r)) * X.row(t.c);
                }
                for (const auto& si : segs) {
                    if (si.con < sj.con) continue;
                    const double v = seg_apply(si.e, h);
                    if (dense_) {
                        dense_m_(si.con, sj.con) += v;
                    } else {
                        trip_.emplace_back(si.con, sj.con, v);
                    }
                }
            }
        }
        if (dense_) {
            for (int j = 0; j < m; ++j)
                for (int i = j + 1; i < m; ++i) dense_m_(j, i) = dense_m_(i, j);
        }
    }

    bool factor() {
        const int m = in_.m;
        if (dense_) {
            double reg = 0;
            for (int attempt = 0; attempt < 4; ++attempt) {
                Eigen::MatrixXd a = dense_m_;
                if (reg > 0) a.diagonal().array() += reg;
                llt_.compute(a);
                if (llt_.info() == Eigen::Success) return true;
                reg = (reg == 0 ? 1e-13 : reg * 100) * std::max(1.0, dense_m_.diagonal().cwiseAbs().maxCoeff());
            }
            return false;
        }
        Eigen::SparseMatrix<double> lower(m, m);
        lower.setFromTriplets(trip_.begin(), trip_.end());
        double reg = 0;
        double dmax = 0;
        for (int k = 0; k < lower.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(lower, k); it; ++it)
                if (it.row() == it.col()) dmax = std::max(dmax, std::abs(it.value()));
        for (int attempt = 0; attempt < 4; ++attempt) {
            Eigen::SparseMatrix<double> a = lower;
            if (reg > 0)
                for (int i = 0; i < m; ++i) a.coeffRef(i, i) += reg;
            sllt_.compute(a);
            if (sllt_.info() == Eigen::Success) return true;
            reg = (reg == 0 ? 1e-13 : reg * 100) * std::max(1.0, dmax);
        }
        return false;
    }

    RealVector solve(const RealVector& rhs) const { return dense_ ? RealVector(llt_.solve(rhs)) : RealVector(sllt_.solve(rhs)); }

private:
    const Instance& in_;
    bool dense_ = true;
    Eigen::MatrixXd dense_m_;
    std::vector<Eigen::Triplet<double>> trip_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower> sllt_;
};

Instance build_instance(const SdpProblem& p, std::vector<int>& slack_block) {
    Instance in;
    in.n = p.block_dims;
    in.m = int(p.constraints.size());
    in.b = RealVector(in.m);
    slack_block.assign(in.m, -1);
    for (int i = 0; i < in.m; ++i)
        if (p.constraints[i].relation == Relation::LessEqual) {
            slack_block[i] = int(in.n.size());
            in.n.push_back(1);
        }
    in.segs.assign(in.n.size(), {});
    in.cost.assign(in.n.size(), {});
    const double sign = p.sense == Sense::Maximize ? -1.0 : 1.0;
    for (const auto& e : p.objective.entries()) in.cost[e.block].push_back({e.row, e.col, sign * e.value});
    for (int i = 0; i < in.m; ++i) {
        in.b(i) = p.constraints[i].bound;
        std::vector<std::vector<Entry>> per(in.n.size());
        for (const auto& e : p.constraints[i].op.entries()) per[e.block].push_back({e.row, e.col, e.value});
        for (std::size_t k = 0; k < per.size(); ++k)
            if (!per[k].empty()) in.segs[k].push_back({i, std::move(per[k])});
        if (slack_block[i] >= 0) in.segs[slack_block[i]].push_back({i, {{0, 0, cplx(1.0)}}});
    }
    for (int d : in.n) in.ntot += d;
    return in;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt) {
    p.validate();
    const int max_iter = opt.max_iter > 0 ? opt.max_iter : default_max_iterations();
    std::vector<int> slack_block;
    const Instance in = build_instance(p, slack_block);
    const int m = in.m;
    const std::size_t nblk = in.n.size();
    const double sense = p.sense == Sense::Maximize ? -1.0 : 1.0;

    SdpSolution sol;
    // Trivially infeasible rows.
    for (int i = 0; i < m; ++i) {
        bool empty = true;
        for (std::size_t k = 0; k < nblk && empty; ++k)
            for (const auto& s : in.segs[k])
                if (s.con == i) { empty = false; break; }
        if (empty && std::abs(in.b(i)) > 0) {
            sol.status = SdpStatus::Infeasible;
            return sol;
        }
    }

    const Blocks C = cost_blocks(in);
    const double normC = fro(C), normb = in.b.norm();

    // Starting point.
    Blocks X(nblk), Z(nblk);
    RealVector y = RealVector::Zero(m);
    std::vector<double> seg_norm(m, 0.0);
    for (std::size_t k = 0; k < nblk; ++k) {
        double amax = 0, bratio = 0;
        for (const auto& s : in.segs[k]) {
            double f = 0;
            for (const auto& t : s.e) f += std::norm(t.v);
            f = std::sqrt(f);
            amax = std::max(amax, f);
            bratio = std::max(bratio, (1.0 + std::abs(in.b(s.con))) / (1.0 + f));
        }
        const double n = in.n[k];
        const double xi = std::max({10.0, std::sqrt(n), n * bratio});
        const double eta = std::max({10.0, std::sqrt(n), amax, C[k].norm()});
        X[k] = xi * ComplexMatrix::Identity(in.n[k], in.n[k]);
        Z[k] = eta * ComplexMatrix::Identity(in.n[k], in.n[k]);
    }

    SchurSystem schur(in);
    const double gamma = 0.95;
    // Best iterate by its worst residual; returned if the target tolerance
    // is not reached before progress stalls.
    double best_err = std::numeric_limits<double>::infinity();
    Blocks bestX, bestZ;
    RealVector besty;
    double best_gap = 0, best_pinf = 0, best_dinf = 0;
    int stalled = 0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const RealVector rp = in.b - op_apply(in, X);
        Blocks Aty = op_adjoint(in, y);
        Blocks Rd(nblk);
        for (std::size_t k = 0; k < nblk; ++k) Rd[k] = C[k] - Z[k] - Aty[k];
        const double pobj = inner(C, X), dobj = in.b.dot(y);
        const double mu = inner(X, Z) / double(in.ntot);
        sol.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        sol.primal_infeasibility = rp.norm() / (1.0 + normb);
        sol.dual_infeasibility = fro(Rd) / (1.0 + normC);
        if (opt.verbose)
            std::cerr << "it " << it << " pobj " << pobj << " dobj " << dobj << " gap " << sol.relative_gap
                      << " pinf " << sol.primal_infeasibility << " dinf " << sol.dual_infeasibility << " mu " << mu << "\n";
        if (sol.relative_gap < opt.tol && sol.primal_infeasibility < opt.tol && sol.dual_infeasibility < opt.tol) {
            sol.status = SdpStatus::Optimal;
            break;
        }
        const double err = std::max({sol.relative_gap, sol.primal_infeasibility, sol.dual_infeasibility});
        if (err < 0.5 * best_err) {
            stalled = 0;
        } else if (++stalled >= 6 && best_err < opt.accept_tol) {
            break;
        }
        if (err < best_err) {
            best_err = err;
            bestX = X;
            bestZ = Z;
            besty = y;
            best_gap = sol.relative_gap;
            best_pinf = sol.primal_infeasibility;
            best_dinf = sol.dual_infeasibility;
        }
        // Farkas-type certificates once iterates diverge.
        const double ynorm = y.norm();
        if (ynorm > 1e7 * (1.0 + normb + normC) && dobj > 0) {
            RealVector yh = y / dobj;
            Blocks a = op_adjoint(in, yh);
            double lmax = -1e300;
            for (const auto& blk : a)
                lmax = std::max(lmax, Eigen::SelfAdjointEigenSolver<ComplexMatrix>(blk, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
            if (lmax < 1e-6) {
                sol.status = SdpStatus::Infeasible;
                break;
            }
        }
        const double xnorm = fro(X);
        if (xnorm > 1e7 * (1.0 + normb + normC) && pobj < 0) {
            Blocks xh = X;
            for (auto& blk : xh) blk /= -pobj;
            if (op_apply(in, xh).norm() < 1e-6) {
                sol.status = SdpStatus::Infeasible;
                break;
            }
        }

        Blocks Zinv(nblk);
        bool ok = true;
        for (std::size_t k = 0; k < nblk && ok; ++k) ok = chol_inverse(Z[k], Zinv[k]);
        if (!ok) break;
        schur.build(X, Zinv);
        if (!schur.factor()) break;

        Blocks ZinvRdX(nblk);
        for (std::size_t k = 0; k < nblk; ++k) ZinvRdX[k] = Zinv[k] * Rd[k] * X[k];

        auto direction = [&](double sigma, const Blocks* dzp, const Blocks* dxp, Blocks& dX, RealVector& dy, Blocks& dZ) {
            Blocks rc(nblk);
            for (std::size_t k = 0; k < nblk; ++k) {
                rc[k] = sigma * mu * Zinv[k] - X[k] - ZinvRdX[k];
                if (dzp) rc[k] -= Zinv[k] * (*dzp)[k] * (*dxp)[k];
            }
            const RealVector rhs = rp - op_apply(in, rc);
            dy = schur.solve(rhs);
            const Blocks ady = op_adjoint(in, dy);
            dX.resize(nblk);
            dZ.resize(nblk);
            for (std::size_t k = 0; k < nblk; ++k) {
                dZ[k] = Rd[k] - ady[k];
                ComplexMatrix t = rc[k] + Zinv[k] * ady[k] * X[k];
                dX[k] = (t + t.adjoint()) * 0.5;
            }
        };

        Blocks dXp, dZp, dX, dZ;
        RealVector dyp, dy;
        direction(0.0, nullptr, nullptr, dXp, dyp, dZp);
        const double ap = step_length(X, dXp, 1.0), ad = step_length(Z, dZp, 1.0);
        double newgap = 0;
        for (std::size_t k = 0; k < nblk; ++k)
            newgap += ((X[k] + ap * dXp[k]).adjoint().cwiseProduct((Z[k] + ad * dZp[k]).transpose())).sum().real();
        double sigma = std::pow(std::max(newgap, 0.0) / (mu * double(in.ntot)), 3.0);
        sigma = std::clamp(sigma, 0.0, 1.0);
        direction(sigma, &dZp, &dXp, dX, dy, dZ);
        const double alpha_p = step_length(X, dX, gamma), alpha_d = step_length(Z, dZ, gamma);
        if (alpha_p < 1e-12 && alpha_d < 1e-12) break;
        for (std::size_t k = 0; k < nblk; ++k) {
            X[k] += alpha_p * dX[k];
            Z[k] += alpha_d * dZ[k];
            X[k] = (X[k] + X[k].adjoint()).eval() * 0.5;
            Z[k] = (Z[k] + Z[k].adjoint()).eval() * 0.5;
        }
        y += alpha_d * dy;
    }
    sol.iterations = it;
    if (sol.status == SdpStatus::MaxIter && !bestX.empty()) {
        X = std::move(bestX);
        Z = std::move(bestZ);
        y = std::move(besty);
        sol.relative_gap = best_gap;
        sol.primal_infeasibility = best_pinf;
        sol.dual_infeasibility = best_dinf;
        if (best_err < opt.accept_tol) sol.status = SdpStatus::Optimal;
    }
    if (sol.status != SdpStatus::Infeasible) {
        const double pobj = inner(C, X), dobj = in.b.dot(y);
        sol.primal_value = sense * pobj;
        sol.dual_value = sense * dobj;
    }
    for (std::size_t k = 0; k < p.block_dims.size(); ++k) {
        sol.x.push_back(X[k]);
        sol.z.push_back(Z[k]);
    }
    sol.y.assign(y.data(), y.data() + m);
    if (sense < 0)
        for (auto& v : sol.y) v = -v;
    return sol;
}

}  // namespace cdqs
