#include "cdqs/linalg_blocks.hpp"

#include "cdqs/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cdqs {

UnionFind::UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void UnionFind::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a; else parent_[a] = b;
}

std::vector<std::vector<int>> UnionFind::groups(const std::vector<bool>& active) {
    const int n = int(parent_.size());
    std::vector<int> slot(n, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (!active[i]) continue;
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = int(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

std::vector<std::vector<int>> sparsity_components(const ComplexMatrix& a, double zero_tol) {
    if (a.rows() != a.cols()) throw ArgumentError("sparsity_components: matrix not square");
    const int n = int(a.rows());
    UnionFind uf(n);
    std::vector<bool> active(n, false);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (std::abs(a(i, j)) > zero_tol) {
                active[i] = active[j] = true;
                if (i != j) uf.unite(i, j);
            }
    return uf.groups(active);
}

double BlockedEig::min_eigenvalue() const {
    long counted = 0;
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) {
        counted += b.values.size();
        if (b.values.size()) m = std::min(m, b.values.minCoeff());
    }
    if (counted < dim) m = std::min(m, 0.0);
    return std::isinf(m) ? 0.0 : m;
}

double BlockedEig::max_eigenvalue() const {
    long counted = 0;
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) {
        counted += b.values.size();
        if (b.values.size()) m = std::max(m, b.values.maxCoeff());
    }
    if (counted < dim) m = std::max(m, 0.0);
    return std::isinf(m) ? 0.0 : m;
}

double BlockedEig::trace_norm() const {
    double s = 0;
    for (const auto& b : blocks) s += b.values.cwiseAbs().sum();
    return s;
}

std::vector<double> BlockedEig::all_values() const {
    std::vector<double> v;
    for (const auto& b : blocks)
        for (Eigen::Index i = 0; i < b.values.size(); ++i) v.push_back(b.values(i));
    v.resize(dim, 0.0);
    std::sort(v.begin(), v.end());
    return v;
}

BlockedEig blocked_eigh(const ComplexMatrix& h, double zero_tol) {
    BlockedEig out;
    out.dim = h.rows();
    for (auto& comp : sparsity_components(h, zero_tol)) {
        const int k = int(comp.size());
        ComplexMatrix sub(k, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i) sub(i, j) = h(comp[i], comp[j]);
        sub = hermitian_part(sub);
        EigBlock b;
        b.index = std::move(comp);
        if (k == 1) {
            b.values = RealVector::Constant(1, sub(0, 0).real());
            b.vectors = ComplexMatrix::Ones(1, 1);
        } else {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sub);
            if (es.info() != Eigen::Success) throw NumericError("blocked_eigh: eigensolver failed");
            b.values = es.eigenvalues();
            b.vectors = es.eigenvectors();
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

namespace {

// Row-reduces the rows of r (k x n) in place; returns the rank.
int rref_rows(ComplexMatrix& r, double tol) {
    const int k = int(r.rows()), n = int(r.cols());
    int row = 0;
    for (int col = 0; col < n && row < k; ++col) {
        int best = row;
        for (int i = row + 1; i < k; ++i)
            if (std::abs(r(i, col)) > std::abs(r(best, col))) best = i;
        if (std::abs(r(best, col)) <= tol) continue;
        r.row(row).swap(r.row(best));
        r.row(row) /= r(row, col);
        for (int i = 0; i < k; ++i)
            if (i != row && std::abs(r(i, col)) > 0) r.row(i) -= r(i, col) * r.row(row);
        ++row;
    }
    return row;
}

void fix_phase(ComplexVector& v, double rel) {
    const double m = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > rel * m) {
            const cplx ph = std::abs(v(i)) > 0 ? std::conj(v(i)) / std::abs(v(i)) : cplx(1.0);
            v *= ph;
            return;
        }
}

}  // namespace

std::vector<SparseEigenpair> canonical_spectrum(const ComplexMatrix& h, double drop_below,
                                                double degeneracy_tol) {
    const double scale = h.cwiseAbs().maxCoeff();
    const BlockedEig eig = blocked_eigh(h, 1e-14 * std::max(scale, 1.0));
    std::vector<SparseEigenpair> out;
    for (const auto& b : eig.blocks) {
        const int nv = int(b.values.size());
        int start = 0;
        while (start < nv) {
            if (b.values(start) <= drop_below) { ++start; continue; }
            int end = start + 1;
            while (end < nv && std::abs(b.values(end) - b.values(start)) <=
                                   degeneracy_tol * std::max(1.0, std::abs(b.values(start))))
                ++end;
            const int k = end - start;
            ComplexMatrix rows = b.vectors.middleCols(start, k).transpose();
            if (k > 1) {
                const int rank = rref_rows(rows, 1e-8);
                if (rank != k) throw NumericError("canonical_spectrum: degenerate cluster lost rank");
                for (int i = 0; i < k; ++i) {
                    for (int j = 0; j < i; ++j) rows.row(i) -= rows.row(j).dot(rows.row(i)) * rows.row(j);
                    rows.row(i).normalize();
                }
            }
            const double mean = b.values.segment(start, k).mean();
            for (int i = 0; i < k; ++i) {
                ComplexVector v = rows.row(i).transpose();
                fix_phase(v, 1e-6);
                SparseEigenpair p;
                p.value = k > 1 ? mean : b.values(start + i);
                std::vector<std::pair<int, cplx>> nz;
                for (Eigen::Index t = 0; t < v.size(); ++t)
                    if (std::abs(v(t)) > 1e-13) nz.emplace_back(b.index[t], v(t));
                std::sort(nz.begin(), nz.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
                p.index.reserve(nz.size());
                p.coeffs.resize(Eigen::Index(nz.size()));
                for (std::size_t t = 0; t < nz.size(); ++t) {
                    p.index.push_back(nz[t].first);
                    p.coeffs(Eigen::Index(t)) = nz[t].second;
                }
                const double m = p.coeffs.size() ? p.coeffs.cwiseAbs().maxCoeff() : 0.0;
                p.lead = -1;
                for (Eigen::Index t = 0; t < p.coeffs.size() && p.lead < 0; ++t)
                    if (std::abs(p.coeffs(t)) > 1e-6 * m) p.lead = p.index[t];
                out.push_back(std::move(p));
            }
            start = end;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const SparseEigenpair& a, const SparseEigenpair& b) {
        if (a.pivot() != b.pivot()) return a.pivot() < b.pivot();
        return a.value > b.value;
    });
    return out;
}

ComplexMatrix support_basis(const ComplexMatrix& psd, double tol) {
    const double top = std::max(1.0, psd.cwiseAbs().maxCoeff());
    const auto pairs = canonical_spectrum(psd, tol * top);
    ComplexMatrix p = ComplexMatrix::Zero(psd.rows(), Eigen::Index(pairs.size()));
    for (std::size_t c = 0; c < pairs.size(); ++c)
        for (std::size_t t = 0; t < pairs[c].index.size(); ++t)
            p(pairs[c].index[t], Eigen::Index(c)) = pairs[c].coeffs(Eigen::Index(t));
    return p;
}

}  // namespace cdqs
