#include "cdqs/transforms.hpp"
#include "cdqs/zoo.hpp"

#include "gtest/gtest.h"

using namespace cdqs;

TEST(transforms, negation_flips_predicate_and_respects_size_bound) {
    const CdqsProtocol eq = cdqs_equality(1);
    const CdqsProtocol neq = negate(eq);
    EXPECT_EQ(neq.f, Predicate::nonequality(1));
    EXPECT_LE(neq.message_qubits(), negation_message_bound(eq) + 1e-12);
    const VerificationReport r = verify_cdqs(neq);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.eps_hat, 1e-6);
    EXPECT_LE(r.delta_hat, 1e-6);
    EXPECT_EQ(negate(neq).f, Predicate::equality(1));
}

TEST(transforms, and_or_tables) {
    const CdqsProtocol a = and_compose(cdqs_direct(Predicate::alice_bit(1), 2), cdqs_teleport(Predicate::bob_bit(1), 4));
    const CdqsProtocol o = or_compose(cdqs_direct(Predicate::alice_bit(1), 3), cdqs_teleport(Predicate::bob_bit(1), 3));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            EXPECT_EQ(a.f(x, y), x == 1 && y == 1);
            EXPECT_EQ(o.f(x, y), x == 1 || y == 1);
        }
}

TEST(transforms, and_error_adds) {
    const double e = 0.02;
    const CdqsProtocol a = and_compose(with_secret_noise(cdqs_direct(Predicate::alice_bit(1), 2), e),
                                       with_secret_noise(cdqs_teleport(Predicate::bob_bit(1), 4), e));
    const VerificationReport r = verify_cdqs(a);
    EXPECT_TRUE(r.complete);
    EXPECT_LE(r.eps_hat, 2 * e + 1e-3);
    EXPECT_GE(r.eps_hat, e);
}

TEST(transforms, or_privacy_adds) {
    const double e = 0.02;
    const CdqsProtocol o = or_compose(cdqs_direct(Predicate::alice_bit(1), 3, e), cdqs_teleport(Predicate::bob_bit(1), 3, e));
    const VerificationReport r = verify_cdqs(o);
    EXPECT_TRUE(r.complete);
    EXPECT_LE(r.delta_hat, 2 * e + 1e-3);
}

TEST(transforms, message_noise_degrades_correctness) {
    const VerificationReport r = verify_cdqs(with_message_noise(cdqs_equality(1), 0.1));
    EXPECT_GT(r.eps_hat, 0.01);
    EXPECT_LE(r.delta_hat, 1e-6);
}
