#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace cdqs {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

// Upper bound on the number of entries produced by tensor_product.
std::size_t tensor_entry_cap();
void set_tensor_entry_cap(std::size_t entries);

// Ordered subsystem labels with dimensions. The first system is the most
// significant digit of a flattened index.
class SystemDims {
public:
    SystemDims() = default;
    SystemDims(std::initializer_list<std::pair<std::string, int>> systems);
    explicit SystemDims(std::vector<std::pair<std::string, int>> systems);

    static SystemDims single(const std::string& label, int dim);

    std::size_t size() const { return systems_.size(); }
    bool empty() const { return systems_.empty(); }
    const std::string& label(std::size_t i) const { return systems_[i].first; }
    int dim(std::size_t i) const { return systems_[i].second; }
    const std::vector<std::pair<std::string, int>>& systems() const { return systems_; }

    long total() const;
    std::size_t index_of(const std::string& label) const;  // throws ArgumentError
    bool contains(const std::string& label) const;
    int dim_of(const std::string& label) const { return dim(index_of(label)); }

    SystemDims concat(const SystemDims& other) const;
    SystemDims subset(const std::vector<std::string>& labels) const;
    SystemDims relabel(const std::string& prefix) const;
    std::vector<int> dims() const;
    std::string describe() const;

    bool operator==(const SystemDims& o) const { return systems_ == o.systems_; }

private:
    void validate() const;
    std::vector<std::pair<std::string, int>> systems_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::initializer_list<ComplexMatrix> factors);

// Reorders subsystems: result system k is input system perm[k].
ComplexMatrix permute_systems(const ComplexMatrix& rho, const std::vector<int>& dims,
                              const std::vector<int>& perm);
ComplexVector permute_systems(const ComplexVector& psi, const std::vector<int>& dims,
                              const std::vector<int>& perm);

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemDims& dims,
                            const std::vector<std::string>& keep);
// Index form: keep[i] tells whether subsystem i survives.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<bool>& keep);

bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);
bool is_finite(const ComplexMatrix& a);
ComplexMatrix hermitian_part(const ComplexMatrix& a);

RealVector hermitian_eigenvalues(const ComplexMatrix& a);
double trace_norm(const ComplexMatrix& a);  // a Hermitian
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double hilbert_schmidt_sq(const ComplexMatrix& a);
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);  // squared (Uhlmann) fidelity
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

ComplexMatrix haar_random_unitary(int dim, std::uint64_t seed);
ComplexMatrix random_density_matrix(int dim, std::uint64_t seed, int rank = 0);
ComplexVector random_pure_state(int dim, std::uint64_t seed);

// Text format: "rows cols" then row-major "re im" pairs.
std::string write_matrix(const ComplexMatrix& m);
ComplexMatrix read_matrix(const std::string& text);
void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

}  // namespace cdqs
