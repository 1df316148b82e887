#pragma once

#include "cdqs/tensor.hpp"

#include <string>
#include <vector>

namespace cdqs {

enum class Relation { Equal, LessEqual };
enum class Sense { Minimize, Maximize };
enum class SdpStatus { Optimal, MaxIter, Infeasible };

std::string to_string(SdpStatus s);

struct SparseEntry {
    int block;
    int row;
    int col;
    cplx value;
};

// Hermitian operator on a block-diagonal variable, stored entrywise.
class BlockOperator {
public:
    // Adds v at (r,c) and conj(v) at (c,r) when r != c.
    void add(int block, int r, int c, cplx v);
    // Adds the functional X -> coef * Re X(p,q) (resp. Im X(p,q)).
    void add_re(int block, int p, int q, double coef);
    void add_im(int block, int p, int q, double coef);
    // Adds the functional X -> Re Tr(H X_block) for a dense Hermitian H.
    void add_dense(int block, const ComplexMatrix& h, double zero_tol = 0.0);

    const std::vector<SparseEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<SparseEntry> entries_;
};

struct SdpConstraint {
    BlockOperator op;
    double bound = 0.0;
    Relation relation = Relation::Equal;
};

// optimise <C,X> = Re Tr(C X) over block-diagonal X >= 0 subject to
// <A_i,X> (= or <=) b_i.
struct SdpProblem {
    std::vector<int> block_dims;
    Sense sense = Sense::Minimize;
    BlockOperator objective;
    std::vector<SdpConstraint> constraints;

    int add_block(int dim);
    int add_constraint(BlockOperator op, double bound, Relation rel = Relation::Equal);
    void validate() const;
};

struct SdpOptions {
    double tol = 1e-9;
    // Residual level still reported as optimal once progress stalls.
    double accept_tol = 1e-7;
    int max_iter = 0;  // 0: CDQS_SDP_MAX_ITER or 120
    bool verbose = false;
};

struct SdpSolution {
    SdpStatus status = SdpStatus::MaxIter;
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<ComplexMatrix> x;  // primal witness, one entry per problem block
    std::vector<ComplexMatrix> z;  // dual slack
    std::vector<double> y;         // dual multipliers, one per constraint
    int iterations = 0;
    double relative_gap = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;

    bool optimal() const { return status == SdpStatus::Optimal; }
};

int default_max_iterations();
SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {});

}  // namespace cdqs
