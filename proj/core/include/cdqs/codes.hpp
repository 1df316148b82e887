#pragma once

#include "cdqs/channel.hpp"

#include <string>
#include <vector>

namespace cdqs {

// Stabilizer code with one logical qubit and a minimum-weight lookup decoder.
struct CodeSpec {
    std::string name;
    int m = 0;  // physical qubits
    int k = 1;  // logical qubits
    int t = 0;  // correctable errors
    std::vector<std::string> stabilizers;  // Pauli strings over IXYZ
    std::string logical_x, logical_z;
    ComplexMatrix encoder;   // 2^m x 2^k isometry
    QuantumChannel decoder;  // 2^m -> 2^k

    int distance() const { return 2 * t + 1; }
};

// "five_qubit" ([[5,1,3]]) or "steane" ([[7,1,3]]).
CodeSpec code_catalog(const std::string& name);
std::vector<std::string> code_names();

// Dense matrix of a Pauli string, qubit 0 most significant.
ComplexMatrix pauli_string(const std::string& s);
int pauli_weight(const std::string& s);
// All Pauli strings of length m with weight <= w, by increasing weight.
std::vector<std::string> paulis_up_to_weight(int m, int w);

// Decoder o (Pauli error) o encoder as a logical channel.
QuantumChannel logical_channel_for_error(const CodeSpec& code, const std::string& error);

double binary_entropy(double p);
// 1 - 2 H2(2 alpha) for 0 < alpha < 1/2.
double code_rate(double alpha);
// False when 2 alpha > 1/4, where the rate formula is not a reliable
// existence statement.
bool code_rate_in_valid_regime(double alpha);
// Error exponent per physical qubit with t = alpha m:
// -(H2(alpha) + alpha log2(e eps)).
double error_exponent(double alpha, double eps);
// Threshold (t+1)/(m-t-1) for noise_bound; infinity when m <= t+1.
double noise_threshold(int m, int t);
// 2 C(m, t+1) (e eps)^(t+1). Throws ArgumentError unless eps < threshold.
double noise_bound(int m, int t, double eps);
double binomial(int n, int r);

struct AmplifyParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double epsilon_in = 0.0;
    double bound = 0.0;
    bool precondition = false;
};
AmplifyParams amplify_params(const CodeSpec& code, double eps);

}  // namespace cdqs
