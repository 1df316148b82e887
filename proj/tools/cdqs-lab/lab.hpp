#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cdqs::lab {

enum ExitCode : int { kPass = 0, kUsage = 1, kAssertion = 2, kNumeric = 3 };

struct RunConfig {
    std::string command;  // verify | transform | reduce | list-protocols
    std::string action;   // transform or reduction name
    std::string protocol = "eq";
    int n = 1;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::string out = "-";
    bool timing = true;
    // transform
    std::string code = "five_qubit";
    double noise_eps = 0.0;
    std::string save_dir;
    bool verify_output = false;
    // reduce
    std::string mode = "oracle";
    long samples = 0;
    int trials = 1;
    int ell = 1;
    double eps = 0.09;
    double noise = 0.0;

    void validate() const;  // throws ArgumentError
};

// Executes one command and writes its report. Diagnostics go to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// Parses argv (without the program name handling) and runs.
int main_entry(int argc, char** argv);
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdqs::lab
