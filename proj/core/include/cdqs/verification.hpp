#pragma once

#include "cdqs/channel.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cdqs {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct InputRow {
    int x = 0, y = 0;
    bool f = false;
    double eps_ub = kNaN;
    double eps_lb = kNaN;
    double delta_ub = kNaN;
    double success = kNaN;  // classical MAP success or certified decoder fidelity
    std::string status = "optimal";
    double seconds = 0.0;
    std::optional<QuantumChannel> decoder;
    std::optional<DensityState> simulator;
};

struct VerificationReport {
    std::string protocol;
    std::string kind;  // cds | cdqs | frouting
    std::string predicate;
    int n = 0;
    double declared_eps = 0.0, declared_delta = 0.0;
    double tol = 1e-6;
    std::vector<InputRow> rows;
    double eps_hat = 0.0, delta_hat = 0.0;
    bool complete = true;
    bool pass = false;
    double wall_seconds = 0.0;
    long message_bits = 0;  // classical bits, or qubits for quantum messages

    // Recomputes maxima, completeness and the pass flag from the rows.
    void finalize();
    const InputRow& row(int x, int y) const;
};

// Evaluates fn(i) for i in [0, count) on a pool of hardware threads.
template <class Fn>
void parallel_rows(int count, Fn&& fn);

}  // namespace cdqs

#include "cdqs/detail/parallel.hpp"
