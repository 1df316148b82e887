#pragma once

#include "cdqs/tensor.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cdqs {

// Choi matrices may exceed the tensor_product cap when built directly from
// sparse Kraus data; they are bounded separately.
std::size_t choi_entry_cap();
void set_choi_entry_cap(std::size_t entries);

struct DensityState {
    ComplexMatrix matrix;
    SystemDims dims;

    DensityState() = default;
    DensityState(ComplexMatrix m, SystemDims d, bool validate = true);
    void validate(double tol = kPsdTol) const;
    long dim() const { return matrix.rows(); }
};

// CPTP map stored as J = sum_ij |i><j| (x) N(|i><j|), input first, Tr J = d_in.
class QuantumChannel {
public:
    QuantumChannel() = default;
    QuantumChannel(ComplexMatrix choi, SystemDims in, SystemDims out, bool validate = true);

    const ComplexMatrix& choi() const { return choi_; }
    const SystemDims& in_dims() const { return in_; }
    const SystemDims& out_dims() const { return out_; }
    int d_in() const { return int(in_.total()); }
    int d_out() const { return int(out_.total()); }

    // N(|i><j|): the (i,j) block of the Choi matrix.
    ComplexMatrix image(int i, int j) const { return choi_.block(long(i) * d_out(), long(j) * d_out(), d_out(), d_out()); }
    ComplexMatrix apply(const ComplexMatrix& rho) const;

    // Throws ArgumentError naming the failed invariant.
    void validate(double tol = kPsdTol) const;
    double min_choi_eigenvalue() const;
    double tp_violation() const;

    QuantumChannel with_dims(SystemDims in, SystemDims out) const;

private:
    ComplexMatrix choi_;
    SystemDims in_, out_;
};

struct StinespringIsometry {
    ComplexMatrix v;  // (d_out * env_dim) x d_in, ordering out (x) env
    int env_dim = 0;
};

QuantumChannel channel_from_kraus(const std::vector<ComplexMatrix>& ops, const SystemDims& in,
                                  const SystemDims& out, bool check_completeness = true);
// Canonical Kraus operators from the Choi spectrum (eigenvalues below drop discarded).
std::vector<ComplexMatrix> kraus_operators(const QuantumChannel& n, double drop = 1e-11);
StinespringIsometry stinespring(const QuantumChannel& n, double drop = 1e-11);
QuantumChannel complementary_channel(const QuantumChannel& n, const std::string& env_label = "E");
QuantumChannel channel_from_isometry(const ComplexMatrix& v, const SystemDims& in, const SystemDims& out,
                                     const SystemDims& traced);

// second o first
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel affine_mix(const QuantumChannel& a, const QuantumChannel& b, double weight_b);

// Applies n to the listed subsystems of x. The output systems of n replace
// the targets at the position of the first target; other systems keep order.
std::pair<ComplexMatrix, SystemDims> apply_local(const QuantumChannel& n, const ComplexMatrix& x,
                                                 const SystemDims& x_dims,
                                                 const std::vector<std::string>& targets);
// Same, with the remaining systems of x preceded by the channel output.
ComplexMatrix apply_first(const ComplexMatrix& choi, int d_t, int d_o, const ComplexMatrix& x_perm, int d_r);

// Choi matrix of an arbitrary linear map given by its action on |i><j|.
template <class F>
ComplexMatrix choi_of(int d_in, int d_out, F&& map) {
    ComplexMatrix j = ComplexMatrix::Zero(long(d_in) * d_out, long(d_in) * d_out);
    for (int a = 0; a < d_in; ++a)
        for (int b = 0; b < d_in; ++b) {
            ComplexMatrix e = ComplexMatrix::Zero(d_in, d_in);
            e(a, b) = 1.0;
            j.block(long(a) * d_out, long(b) * d_out, d_out, d_out) = map(e);
        }
    return j;
}

// Reorders the systems of a channel's output.
QuantumChannel permute_output(const QuantumChannel& n, const std::vector<std::string>& order);
QuantumChannel permute_input(const QuantumChannel& n, const std::vector<std::string>& order);
QuantumChannel trace_out_outputs(const QuantumChannel& n, const std::vector<std::string>& discard);
// Restricts the output to the range of an isometry p (d_out x s): X -> p^dag X p.
QuantumChannel compress_output(const QuantumChannel& n, const ComplexMatrix& p, const std::string& label);

// Gadgets.
ComplexMatrix pauli_x(int d = 2);
ComplexMatrix pauli_z(int d = 2);
ComplexMatrix weyl(int a, int b, int d);  // X^a Z^b on C^d
ComplexMatrix max_entangled(int d);       // normalised |Phi+><Phi+| on d x d
ComplexMatrix max_mixed(int d);
ComplexMatrix computational_state(const std::string& bits);
ComplexMatrix basis_projector(int d, int k);

QuantumChannel identity_channel(int d, const std::string& label = "Q");
QuantumChannel unitary_channel(const ComplexMatrix& u, const SystemDims& in, const SystemDims& out);
QuantumChannel depolarizing(double p, int d, const std::string& label = "Q");
QuantumChannel replacer_channel(const ComplexMatrix& sigma, const SystemDims& in, const SystemDims& out);
QuantumChannel dephasing_channel(int d, const std::string& label = "Q");
QuantumChannel quantum_one_time_pad(int a, int b);
QuantumChannel qotp_average();
// Depolarizing parameter whose diamond distance to the identity is eps.
double depolarizing_p_for_diamond(double eps, int d);
double depolarizing_diamond_distance(double p, int d);

using GadgetValue = std::variant<DensityState, QuantumChannel>;
// name in {max_entangled, max_mixed, depolarizing, computational_state}
GadgetValue standard_gadget(const std::string& name, const std::vector<double>& params,
                            const std::string& bits = "");

// File format: "CHOI d_in d_out" header followed by the matrix body.
std::string write_channel(const QuantumChannel& n);
QuantumChannel read_channel(const std::string& text);
void save_channel(const std::string& path, const QuantumChannel& n);
QuantumChannel load_channel(const std::string& path);

}  // namespace cdqs
