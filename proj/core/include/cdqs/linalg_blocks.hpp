#pragma once

#include "cdqs/tensor.hpp"

#include <vector>

namespace cdqs {

// Connected components of the sparsity graph of a square matrix.
// Rows/columns whose entries are all below zero_tol are dropped.
std::vector<std::vector<int>> sparsity_components(const ComplexMatrix& a, double zero_tol = 0.0);

class UnionFind {
public:
    explicit UnionFind(int n);
    int find(int x);
    void unite(int a, int b);
    // Groups ordered by smallest member; members ascending.
    std::vector<std::vector<int>> groups(const std::vector<bool>& active);

private:
    std::vector<int> parent_;
};

struct EigBlock {
    std::vector<int> index;     // global coordinates of this block
    RealVector values;          // ascending
    ComplexMatrix vectors;      // index.size() x values.size()
};

// Eigendecomposition of a Hermitian matrix done separately on each
// connected component. Dropped coordinates carry eigenvalue 0.
struct BlockedEig {
    long dim = 0;
    std::vector<EigBlock> blocks;

    double min_eigenvalue() const;
    double max_eigenvalue() const;
    double trace_norm() const;
    std::vector<double> all_values() const;
};

BlockedEig blocked_eigh(const ComplexMatrix& h, double zero_tol = 0.0);

// An eigenpair with a sparse eigenvector in global coordinates.
struct SparseEigenpair {
    double value = 0;
    std::vector<int> index;
    ComplexVector coeffs;
    int lead = -1;  // first coordinate carrying non-negligible weight
    int pivot() const { return lead; }
};

// Nonzero spectrum in canonical form: degenerate clusters rebased to an
// orthonormalised reduced-row-echelon basis, phases fixed so the first
// significant coefficient is real positive, sorted by pivot coordinate.
std::vector<SparseEigenpair> canonical_spectrum(const ComplexMatrix& h, double drop_below,
                                                double degeneracy_tol = 1e-9);

// Orthonormal basis (columns) of the range of a PSD matrix.
ComplexMatrix support_basis(const ComplexMatrix& psd, double tol = 1e-10);

}  // namespace cdqs
