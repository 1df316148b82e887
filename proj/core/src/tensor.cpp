#include "cdqs/tensor.hpp"

#include "cdqs/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace cdqs {

namespace {
std::atomic<std::size_t> g_entry_cap{std::size_t{1} << 20};
}

std::size_t tensor_entry_cap() { return g_entry_cap.load(); }
void set_tensor_entry_cap(std::size_t entries) { g_entry_cap.store(entries); }

SystemDims::SystemDims(std::initializer_list<std::pair<std::string, int>> systems)
    : systems_(systems) {
    validate();
}

SystemDims::SystemDims(std::vector<std::pair<std::string, int>> systems)
    : systems_(std::move(systems)) {
    validate();
}

SystemDims SystemDims::single(const std::string& label, int dim) { return SystemDims({{label, dim}}); }

void SystemDims::validate() const {
    std::set<std::string> seen;
    for (const auto& [label, dim] : systems_) {
        if (dim < 1) throw ArgumentError("system '" + label + "' has dimension < 1");
        if (!seen.insert(label).second) throw ArgumentError("duplicate system label '" + label + "'");
    }
}

long SystemDims::total() const {
    long t = 1;
    for (const auto& s : systems_) t *= s.second;
    return t;
}

std::size_t SystemDims::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < systems_.size(); ++i)
        if (systems_[i].first == label) return i;
    throw ArgumentError("unknown system label '" + label + "'");
}

bool SystemDims::contains(const std::string& label) const {
    return std::any_of(systems_.begin(), systems_.end(), [&](const auto& s) { return s.first == label; });
}

SystemDims SystemDims::concat(const SystemDims& other) const {
    auto all = systems_;
    all.insert(all.end(), other.systems_.begin(), other.systems_.end());
    return SystemDims(std::move(all));
}

SystemDims SystemDims::subset(const std::vector<std::string>& labels) const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& l : labels) out.emplace_back(l, dim_of(l));
    return SystemDims(std::move(out));
}

SystemDims SystemDims::relabel(const std::string& prefix) const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [l, d] : systems_) out.emplace_back(prefix + l, d);
    return SystemDims(std::move(out));
}

std::vector<int> SystemDims::dims() const {
    std::vector<int> d;
    for (const auto& s : systems_) d.push_back(s.second);
    return d;
}

std::string SystemDims::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < systems_.size(); ++i) {
        if (i) os << ",";
        os << systems_[i].first << ":" << systems_[i].second;
    }
    return os.str();
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double entries = double(a.rows()) * b.rows() * double(a.cols()) * b.cols();
    if (entries > double(tensor_entry_cap()))
        throw CapacityError("tensor_product result exceeds the entry cap (" +
                            std::to_string(tensor_entry_cap()) + ")");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix tensor_product(std::initializer_list<ComplexMatrix> factors) {
    ComplexMatrix acc = ComplexMatrix::Ones(1, 1);
    for (const auto& f : factors) acc = tensor_product(acc, f);
    return acc;
}

namespace {

// Maps a flattened index in the permuted ordering back to the original one.
std::vector<long> permutation_map(const std::vector<int>& dims, const std::vector<int>& perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n) throw ArgumentError("permutation length mismatch");
    std::vector<int> check(perm);
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < n; ++i)
        if (check[i] != int(i)) throw ArgumentError("invalid permutation");
    std::vector<long> stride(n, 1);
    for (int i = int(n) - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
    long total = 1;
    for (int d : dims) total *= d;
    std::vector<int> newdims(n);
    for (std::size_t k = 0; k < n; ++k) newdims[k] = dims[perm[k]];
    std::vector<long> map(total);
    std::vector<int> digit(n, 0);
    for (long idx = 0; idx < total; ++idx) {
        long src = 0;
        for (std::size_t k = 0; k < n; ++k) src += digit[k] * stride[perm[k]];
        map[idx] = src;
        for (int k = int(n) - 1; k >= 0; --k) {
            if (++digit[k] < newdims[k]) break;
            digit[k] = 0;
        }
    }
    return map;
}

}  // namespace

ComplexMatrix permute_systems(const ComplexMatrix& rho, const std::vector<int>& dims,
                              const std::vector<int>& perm) {
    const auto map = permutation_map(dims, perm);
    const long n = long(map.size());
    if (rho.rows() != n || rho.cols() != n) throw ArgumentError("permute_systems: dimension mismatch");
    ComplexMatrix out(n, n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) out(i, j) = rho(map[i], map[j]);
    return out;
}

ComplexVector permute_systems(const ComplexVector& psi, const std::vector<int>& dims,
                              const std::vector<int>& perm) {
    const auto map = permutation_map(dims, perm);
    if (psi.size() != long(map.size())) throw ArgumentError("permute_systems: dimension mismatch");
    ComplexVector out(psi.size());
    for (long i = 0; i < psi.size(); ++i) out(i) = psi(map[i]);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<bool>& keep) {
    if (keep.size() != dims.size()) throw ArgumentError("partial_trace: keep mask length mismatch");
    long total = 1;
    for (int d : dims) total *= d;
    if (rho.rows() != total || rho.cols() != total)
        throw ArgumentError("partial_trace: matrix is not square with the declared dimensions");
    std::vector<int> perm;
    long dk = 1, dt = 1;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (keep[i]) { perm.push_back(int(i)); dk *= dims[i]; }
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!keep[i]) { perm.push_back(int(i)); dt *= dims[i]; }
    bool identity = true;
    for (std::size_t i = 0; i < perm.size(); ++i) identity = identity && perm[i] == int(i);
    const ComplexMatrix p = identity ? rho : permute_systems(rho, dims, perm);
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (long j = 0; j < dk; ++j)
        for (long i = 0; i < dk; ++i) {
            cplx s = 0;
            for (long t = 0; t < dt; ++t) s += p(i * dt + t, j * dt + t);
            out(i, j) = s;
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemDims& dims,
                            const std::vector<std::string>& keep) {
    std::vector<bool> mask(dims.size(), false);
    for (const auto& l : keep) mask[dims.index_of(l)] = true;
    return partial_trace(rho, dims.dims(), mask);
}

bool is_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_norm(const ComplexMatrix& a) { return hermitian_eigenvalues(a).cwiseAbs().sum(); }

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw ArgumentError("trace_distance: dimension mismatch");
    if (!is_hermitian(rho, 1e-10) || !is_hermitian(sigma, 1e-10))
        throw ArgumentError("trace_distance: non-Hermitian input");
    return trace_norm(rho - sigma);
}

double hilbert_schmidt_sq(const ComplexMatrix& a) { return a.squaredNorm(); }

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
    RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    for (const auto* m : {&rho, &sigma}) {
        if (!is_hermitian(*m, 1e-10)) throw ArgumentError("fidelity: non-Hermitian input");
        const RealVector ev = hermitian_eigenvalues(*m);
        if (ev.minCoeff() < -kPsdTol) throw ArgumentError("fidelity: input has a negative eigenvalue");
        if (std::abs(ev.sum() - 1.0) > kPsdTol) throw ArgumentError("fidelity: input is not unit trace");
    }
    const ComplexMatrix s = psd_sqrt(rho);
    const ComplexMatrix inner = s * sigma * s;
    const double root = hermitian_eigenvalues(inner).cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(root * root, 0.0, 1.0);
}

ComplexMatrix haar_random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw ArgumentError("haar_random_unitary: dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    ComplexMatrix z(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const double mag = std::abs(r(i, i));
        const cplx phase = mag > 0 ? r(i, i) / mag : cplx(1.0);
        q.col(i) *= phase;
    }
    return q;
}

ComplexMatrix random_density_matrix(int dim, std::uint64_t seed, int rank) {
    if (rank <= 0) rank = dim;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(dim, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < dim; ++i) a(i, j) = cplx(g(rng), g(rng));
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return hermitian_part(rho);
}

ComplexVector random_pure_state(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
    return v.normalized();
}

std::string write_matrix(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << "\n" << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << "  ";
            os << m(i, j).real() << " " << m(i, j).imag();
        }
        os << "\n";
    }
    return os.str();
}

ComplexMatrix read_matrix(const std::string& text) {
    std::istringstream is(text);
    long rows = -1, cols = -1;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw ArgumentError("matrix text: expected 'rows cols' header");
    ComplexMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            double re, im;
            if (!(is >> re >> im))
                throw ArgumentError("matrix text: missing entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            m(i, j) = cplx(re, im);
        }
    std::string extra;
    if (is >> extra) throw ArgumentError("matrix text: trailing data after " + std::to_string(rows * cols) + " entries");
    if (!is_finite(m)) throw ArgumentError("matrix text: non-finite entry");
    return m;
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << write_matrix(m);
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return read_matrix(ss.str());
}

}  // namespace cdqs
