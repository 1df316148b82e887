#pragma once

#include "cdqs/channel.hpp"
#include "cdqs/sdp.hpp"

#include <vector>

namespace cdqs {

// Direct-sum structure of a family of operators on a common space: the
// connected components of their joint sparsity pattern, each compressed to
// the support of the family inside it. Operators from the family are
// block diagonal in this decomposition and vanish off the supports.
struct OutputBlock {
    std::vector<int> index;  // original coordinates
    ComplexMatrix basis;     // index.size() x rank, orthonormal columns
    int rank() const { return int(basis.cols()); }
};

struct OutputDecomposition {
    int dim = 0;
    std::vector<OutputBlock> blocks;

    int support_rank() const;
    int largest_block() const;
    // basis^dag X[index, index] basis for block b
    ComplexMatrix compress(const ComplexMatrix& x, int b) const;
    // Inverse embedding of a block operator into the full space.
    void embed_add(const ComplexMatrix& y, int b, ComplexMatrix& out) const;
};

OutputDecomposition decompose_channel_output(const QuantumChannel& n);
OutputDecomposition decompose_states(const std::vector<ComplexMatrix>& states);

struct DiamondResult {
    double value = 0.0;
    SdpStatus status = SdpStatus::MaxIter;
    ComplexMatrix worst_input;  // channel input state attaining the value
};

// Diamond norm of the Hermiticity-preserving map with Choi matrix delta.
// Trace-annihilating maps use the single-state program; others the
// two-state program.
DiamondResult diamond_norm(const ComplexMatrix& delta, int d_in, int d_out, const SdpOptions& opt = {});
DiamondResult diamond_norm_general(const ComplexMatrix& delta, int d_in, int d_out, const SdpOptions& opt = {});
DiamondResult diamond_distance(const QuantumChannel& a, const QuantumChannel& b, const SdpOptions& opt = {});

struct DecoderResult {
    double f_star = 0.0;
    SdpStatus status = SdpStatus::MaxIter;
    QuantumChannel decoder;    // M -> Q
    ComplexMatrix composed;    // Choi of decoder o n
};

// Maximises <psi|(id (x) D o N)(psi)|psi> over decoders D, where psi
// purifies the input state (maximally mixed when none is given).
DecoderResult optimal_decoder_fidelity(const QuantumChannel& n, const ComplexMatrix* input = nullptr,
                                       const SdpOptions& opt = {});

struct SimulatorResult {
    double delta_star = 0.0;
    SdpStatus status = SdpStatus::MaxIter;
    DensityState sigma;
};

// min over states sigma of || N - (X -> Tr(X) sigma) ||_diamond
SimulatorResult optimal_constant_simulator(const QuantumChannel& n, const SdpOptions& opt = {});

struct DiscriminationResult {
    double value = 0.0;
    SdpStatus status = SdpStatus::MaxIter;
};

DiscriminationResult optimal_discrimination(const std::vector<ComplexMatrix>& states,
                                            const std::vector<double>& priors, const SdpOptions& opt = {});

}  // namespace cdqs
