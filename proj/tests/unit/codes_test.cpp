#include "cdqs/amplify.hpp"
#include "cdqs/codes.hpp"
#include "cdqs/errors.hpp"
#include "cdqs/zoo.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace cdqs;

TEST(codes, stabilizers_commute_and_fix_the_code_space) {
    for (const auto& name : code_names()) {
        const CodeSpec c = code_catalog(name);
        const long d = 1L << c.m;
        const ComplexMatrix proj = c.encoder * c.encoder.adjoint();
        for (const auto& s : c.stabilizers) {
            const ComplexMatrix g = pauli_string(s);
            EXPECT_LT((g * proj - proj).norm(), 1e-10) << name << " " << s;
            for (const auto& s2 : c.stabilizers) {
                const ComplexMatrix h = pauli_string(s2);
                EXPECT_LT((g * h - h * g).norm(), 1e-10);
            }
        }
        EXPECT_EQ(c.encoder.rows(), d);
        EXPECT_LT((c.encoder.adjoint() * c.encoder - ComplexMatrix::Identity(2, 2)).norm(), 1e-10);
    }
}

TEST(codes, corrects_every_single_qubit_pauli) {
    for (const auto& name : code_names()) {
        const CodeSpec c = code_catalog(name);
        for (const auto& e : paulis_up_to_weight(c.m, c.t)) {
            const QuantumChannel l = logical_channel_for_error(c, e);
            EXPECT_LT((l.choi() - identity_channel(2).choi()).norm(), 1e-9) << name << " " << e;
        }
    }
    EXPECT_EQ(paulis_up_to_weight(5, 1).size(), 16u);
    EXPECT_EQ(pauli_weight("IXIZY"), 3);
}

TEST(codes, rate_and_thresholds) {
    EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
    EXPECT_NEAR(code_rate(0.495), 0.838414, 1e-6);
    EXPECT_THROW(code_rate(0.6), ArgumentError);
    EXPECT_TRUE(code_rate_in_valid_regime(0.1));
    EXPECT_FALSE(code_rate_in_valid_regime(0.2));
    EXPECT_NEAR(noise_threshold(5, 1), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(noise_bound(5, 1, 0.01), 2 * 10 * std::pow(std::exp(1.0) * 0.01, 2), 1e-12);
    EXPECT_THROW(noise_bound(5, 1, 0.7), ArgumentError);
    EXPECT_EQ(binomial(7, 2), 21.0);
    EXPECT_NEAR(error_exponent(0.495, 0.09), 5.5e-3, 5e-5);
}

TEST(amplify, five_qubit_meets_bound) {
    const CodeSpec c = code_catalog("five_qubit");
    const AmplifyResult a = amplify(depolarizing(depolarizing_p_for_diamond(0.01, 2), 2), c);
    EXPECT_EQ(a.status, "optimal");
    EXPECT_NEAR(a.instance_error, 0.01, 1e-6);
    EXPECT_TRUE(a.holds);
    EXPECT_LT(a.measured_error, a.instance_error);
    EXPECT_NEAR(a.bound, 0.0147781, 1e-6);
}

TEST(amplify, steane_on_protocol_instance) {
    const QuantumChannel inst = protocol_instance(cdqs_equality(1), 0, 0, 0.01);
    const AmplifyResult a = amplify(inst, code_catalog("steane"));
    EXPECT_TRUE(a.holds);
    EXPECT_LE(a.measured_error, 0.031);
}

TEST(amplify, refuses_above_threshold) {
    EXPECT_THROW(amplify(depolarizing(1.0, 2), code_catalog("five_qubit")), ArgumentError);
    EXPECT_FALSE(amplify_params(code_catalog("five_qubit"), 0.7).precondition);
}
