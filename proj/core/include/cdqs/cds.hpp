#pragma once

#include "cdqs/predicate.hpp"
#include "cdqs/verification.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cdqs {

struct CdsProtocol {
    std::string name;
    Predicate f;
    int secret_size = 2;
    int randomness_size = 1;
    std::vector<double> randomness_weights;  // empty means uniform
    int m0_size = 1, m1_size = 1;
    std::function<int(int x, int z, int r)> m0;
    std::function<int(int y, int r)> m1;
    double declared_eps = 0.0, declared_delta = 0.0;

    long communication_bits() const;
    double randomness_prob(int r) const;
    void validate() const;
};

// Exhaustive verification: MAP correctness on 1-inputs and the exact
// minimax simulator distance (an LP) on 0-inputs.
VerificationReport verify_cds_exact(const CdsProtocol& p, double tol = 1e-9);

// Largest |R| * |Z| accepted by verify_cds_exact.
inline constexpr long kCdsEnumerationCap = 1000000;

}  // namespace cdqs
