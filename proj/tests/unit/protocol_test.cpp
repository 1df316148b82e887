#include "cdqs/errors.hpp"
#include "cdqs/frouting.hpp"
#include "cdqs/zoo.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace cdqs;

TEST(predicate, named_tables) {
    const Predicate eq = Predicate::equality(2);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) EXPECT_EQ(eq(x, y), x == y);
    const Predicate ip = Predicate::inner_product(2);
    EXPECT_TRUE(ip(3, 1));
    EXPECT_FALSE(ip(3, 3));
    EXPECT_EQ(eq.negated(), Predicate::nonequality(2));
    EXPECT_EQ(Predicate::named("IP", 2), ip);
}

TEST(predicate, hex_round_trip) {
    const Predicate gt = Predicate::greater_than(2);
    EXPECT_EQ(Predicate::from_hex(2, gt.to_hex()), gt);
    EXPECT_EQ(Predicate::equality(1).to_hex(), "9");
    EXPECT_THROW(Predicate::from_hex(1, "zz"), ArgumentError);
    EXPECT_THROW(Predicate::equality(7), ArgumentError);
}

TEST(cds, equality_and_inner_product_are_perfect) {
    for (int n = 1; n <= 3; ++n) {
        const VerificationReport eq = verify_cds_exact(cds_equality(n));
        EXPECT_EQ(eq.eps_hat, 0.0);
        EXPECT_EQ(eq.delta_hat, 0.0);
        EXPECT_EQ(eq.message_bits, 2);
        const VerificationReport ip = verify_cds_exact(cds_inner_product(n));
        EXPECT_EQ(ip.eps_hat, 0.0);
        EXPECT_EQ(ip.delta_hat, 0.0);
        EXPECT_EQ(ip.message_bits, n + 2);
        EXPECT_EQ(ip.rows.size(), std::size_t(1) << (2 * n));
    }
}

TEST(cds, leaky_message_is_detected) {
    CdsProtocol p = cds_equality(1);
    p.m1 = [](int y, int) { return y; };  // Bob ignores the randomness
    p.m1_size = 2;
    const VerificationReport r = verify_cds_exact(p);
    EXPECT_GT(r.eps_hat + r.delta_hat, 0.1);
    EXPECT_FALSE(r.pass);
}

TEST(cdqs, lifted_equality_certifies) {
    const VerificationReport r = verify_cdqs(cdqs_equality(1));
    EXPECT_TRUE(r.complete);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.eps_hat, 1e-6);
    EXPECT_LE(r.delta_hat, 1e-6);
    for (const auto& w : r.rows)
        if (w.f) EXPECT_LE(w.eps_lb, w.eps_ub + 1e-7);
}

TEST(cdqs, embedded_cds_is_private_but_dephases_the_secret) {
    const VerificationReport r = verify_cdqs(embed_cds(cds_equality(1)));
    EXPECT_TRUE(r.complete);
    EXPECT_LE(r.delta_hat, 1e-6);
    EXPECT_NEAR(r.eps_hat, 1.0, 1e-6);
}

TEST(cdqs, leak_shows_up_as_delta) {
    const VerificationReport r = verify_cdqs(cdqs_direct(Predicate::alice_bit(1), 2, 0.1));
    EXPECT_TRUE(r.complete);
    EXPECT_GT(r.delta_hat, 0.05);
}

TEST(cdqs, decoupling_sandwich_on_noisy_identity) {
    for (double p : {0.0, 0.1, 0.4}) {
        const DecouplingValues v = decoupling_check(depolarizing(p, 2));
        EXPECT_TRUE(v.holds) << p;
        EXPECT_LE(v.lhs, v.mid + 1e-6);
        EXPECT_LE(v.mid, v.rhs + 1e-6);
    }
}

TEST(frouting, direct_and_teleport_route_correctly) {
    for (const auto& p : {frouting_direct(Predicate::alice_bit(1), 2), frouting_teleport(Predicate::bob_bit(1), 2)}) {
        const VerificationReport r = verify_frouting(p);
        EXPECT_TRUE(r.pass) << p.name;
        EXPECT_LE(r.eps_hat, 1e-6) << p.name;
    }
}

TEST(frouting, keeping_the_system_fails_on_one_inputs) {
    const VerificationReport r = verify_frouting(frouting_always_keep(Predicate::alice_bit(1), 2));
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.eps_hat, 1.5, 1e-5);
}

TEST(frouting, conversion_to_cdqs) {
    const CdqsProtocol c = frouting_to_cdqs(frouting_direct(Predicate::alice_bit(1), 2, 0.02));
    const VerificationReport r = verify_cdqs(c);
    EXPECT_TRUE(r.complete);
    EXPECT_LE(r.eps_hat, c.declared_eps + 1e-6);
    EXPECT_LE(r.delta_hat, c.declared_delta + 1e-6);
}

TEST(zoo, catalog_names_resolve) {
    for (const auto& name : protocol_names()) {
        if (is_cds_name(name))
            EXPECT_NO_THROW(named_cds(name, 1).validate()) << name;
        else
            EXPECT_NO_THROW(named_cdqs(name, 1).validate()) << name;
    }
    EXPECT_THROW(named_cdqs("nope", 1), ArgumentError);
}
