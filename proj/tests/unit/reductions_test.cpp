#include "cdqs/errors.hpp"
#include "cdqs/reductions.hpp"
#include "cdqs/transforms.hpp"
#include "cdqs/zoo.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace cdqs;

TEST(l2, exact_matches_closed_form) {
    for (int i = 0; i < 50; ++i) {
        const Distribution d0 = Distribution::random(2 + i % 7, 10 + i), d1 = Distribution::random(2 + i % 7, 500 + i);
        EXPECT_NEAR(l2_distinguisher_exact(d0, d1), 0.5 + l2_distance_sq(d0, d1) / 8.0, 1e-12);
    }
}

TEST(l2, identical_distributions_give_one_half) {
    const Distribution d = Distribution::random(5, 3);
    EXPECT_NEAR(l2_distinguisher_exact(d, d), 0.5, 1e-15);
}

TEST(l2, sampled_tracks_exact) {
    const Distribution d0({0.7, 0.3}), d1({0.1, 0.9});
    EXPECT_NEAR(l2_distinguisher_sampled(d0, d1, 200000, 4), l2_distinguisher_exact(d0, d1), 0.005);
}

TEST(l2, run_uses_three_bits) {
    int calls0 = 0, calls1 = 0;
    auto o0 = [&] { ++calls0; return 0; };
    auto o1 = [&] { ++calls1; return 1; };
    EXPECT_EQ(l2_distinguisher_run(o0, o1, 0b001), 1);  // b1 = 0 outputs b3
    EXPECT_EQ(l2_distinguisher_run(o0, o1, 0b110), 1);  // cross pair differs
    EXPECT_EQ(l2_distinguisher_run(o0, o0, 0b111), 0);  // cross pair collides
    EXPECT_EQ(l2_distinguisher_run(o0, o1, 0b100), 1);  // (D0, D0) collides
    EXPECT_LE(calls0 + calls1, 6);
}

TEST(l2, invalid_distribution_rejected) { EXPECT_THROW(Distribution({0.5, 0.6}), ArgumentError); }

TEST(haar, identity_within_sampling_error) {
    const HaarCheck h = haar_l2_identity_check(random_density_matrix(4, 1), random_density_matrix(4, 2), 2000, 3);
    EXPECT_NEAR(h.estimate, h.exact, 4 * h.std_error + 1e-12);
}

TEST(haar, bell_state_against_maximally_mixed) {
    const HaarCheck h = haar_l2_identity_check(max_entangled(2), max_mixed(4), 2000, 8);
    EXPECT_NEAR(h.exact, 0.15, 1e-14);
    EXPECT_NEAR(h.estimate, 0.15, 0.05 * 0.15);
}

TEST(oneway, equality_classified_in_oracle_mode) {
    const OneWayReport r = one_way_reduction(cdqs_equality(1));
    EXPECT_TRUE(r.all_correct);
    EXPECT_TRUE(r.gap_ok);
    EXPECT_EQ(r.rows.size(), 4u);
}

TEST(oneway, copy_count_formula) {
    OneWayOptions o;
    EXPECT_EQ(tomography_copies(8, o), long(std::ceil(10.0 * 64 * std::log(1 / 0.05) / (0.1 * 0.1))));
    o.eps_tilde = 0.0;
    EXPECT_THROW(tomography_copies(8, o), ArgumentError);
}

TEST(pp, s0_closed_form) {
    EXPECT_NEAR(pp_s0(0.09, 8), 0.00601362, 1e-8);
    const double a = 1.5;
    EXPECT_NEAR(pp_s0(0.0, 4), a * a / (4 * 4 * 5 + a * a), 1e-15);
}

TEST(pp, perfectly_private_equality) {
    const PpReport r = pp_reduction(named_cdqs("eq_pp", 1));
    EXPECT_TRUE(r.valid);
    EXPECT_TRUE(r.marginal_ok);
    EXPECT_NEAR(r.s, r.s0 / 2, 1e-15);
    for (const auto& w : r.rows) {
        if (w.f)
            EXPECT_GT(w.accept, 0.5);
        else
            EXPECT_NEAR(w.accept, (1 + r.s) / 2, 1e-12);
    }
}

TEST(qip, perfect_equality_ell_two) {
    const QipTranscript q = qip2_from_cdqs(cdqs_equality(1), 2);
    EXPECT_NEAR(q.completeness, 1.0, 1e-6);
    EXPECT_NEAR(q.soundness_bound, 0.25, 1e-6);
    EXPECT_DOUBLE_EQ(q.communication, q.t + 3);
    EXPECT_LT(q.soundness_bound, q.completeness);
}

TEST(zk, perfect_protocol_has_zero_distance) {
    const HvqszkResult r = hvqszk_check(cdqs_equality(1), 1);
    EXPECT_NEAR(r.distance, 0.0, 1e-6);
    EXPECT_TRUE(r.holds);
}

TEST(zk, bound_holds_under_noise) {
    const HvqszkResult r = hvqszk_check(with_message_noise(cdqs_equality(1), 0.05), 1);
    EXPECT_TRUE(r.holds);
    EXPECT_GT(r.distance, 0.0);
    EXPECT_LE(r.distance, r.bound);
}
