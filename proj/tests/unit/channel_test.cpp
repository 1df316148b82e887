#include "cdqs/channel.hpp"
#include "cdqs/distance.hpp"
#include "cdqs/errors.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace cdqs;

namespace {

QuantumChannel random_channel(int d_in, int d_out, int d_env, std::uint64_t seed) {
    const ComplexMatrix u = haar_random_unitary(d_out * d_env, seed);
    return channel_from_isometry(u.leftCols(d_in), SystemDims::single("Q", d_in), SystemDims::single("B", d_out),
                                 SystemDims::single("E", d_env));
}

}  // namespace

TEST(channel, identity_choi_is_unnormalised_max_entangled) {
    const QuantumChannel id = identity_channel(2);
    EXPECT_LT((id.choi() - 2.0 * max_entangled(2)).norm(), 1e-14);
    EXPECT_NO_THROW(id.validate());
}

TEST(channel, kraus_round_trip) {
    for (int i = 0; i < 5; ++i) {
        const QuantumChannel n = random_channel(2, 3, 2, 40 + i);
        const QuantumChannel back = channel_from_kraus(kraus_operators(n), n.in_dims(), n.out_dims());
        EXPECT_LT((back.choi() - n.choi()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(channel, apply_matches_kraus_sum) {
    const QuantumChannel n = random_channel(2, 2, 3, 7);
    const ComplexMatrix rho = random_density_matrix(2, 8);
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (const auto& k : kraus_operators(n)) out += k * rho * k.adjoint();
    EXPECT_LT((n.apply(rho) - out).norm(), 1e-12);
}

TEST(channel, complementary_of_unitary_is_constant) {
    const QuantumChannel u =
        unitary_channel(haar_random_unitary(2, 3), SystemDims::single("Q", 2), SystemDims::single("Q", 2));
    const QuantumChannel c = complementary_channel(u);
    EXPECT_EQ(c.d_out(), 1);
}

TEST(channel, compose_depolarizing) {
    const QuantumChannel a = depolarizing(0.2, 2), b = depolarizing(0.3, 2);
    const QuantumChannel ab = compose(a, b);
    const QuantumChannel expect = depolarizing(1 - 0.8 * 0.7, 2);
    EXPECT_LT((ab.choi() - expect.choi()).norm(), 1e-13);
}

TEST(channel, rejects_non_cptp) {
    ComplexMatrix j = identity_channel(2).choi();
    j(0, 0) = -0.5;
    j(3, 3) = 2.5;
    EXPECT_THROW(QuantumChannel(j, SystemDims::single("Q", 2), SystemDims::single("Q", 2)).validate(), ArgumentError);
    std::vector<ComplexMatrix> k = {ComplexMatrix::Identity(2, 2) * 1.1};
    EXPECT_THROW(channel_from_kraus(k, SystemDims::single("Q", 2), SystemDims::single("Q", 2)), ArgumentError);
}

TEST(channel, depolarizing_diamond_distances) {
    EXPECT_NEAR(diamond_distance(identity_channel(2), depolarizing(1.0, 2)).value, 1.5, 1e-6);
    EXPECT_NEAR(diamond_distance(identity_channel(2), depolarizing(0.3, 2)).value, 0.45, 1e-6);
    EXPECT_NEAR(depolarizing_diamond_distance(0.3, 2), 0.45, 1e-12);
    EXPECT_NEAR(depolarizing_p_for_diamond(0.45, 2), 0.3, 1e-12);
    const QuantumChannel z = unitary_channel(pauli_z(2), SystemDims::single("Q", 2), SystemDims::single("Q", 2));
    EXPECT_NEAR(diamond_distance(identity_channel(2), z).value, 2.0, 1e-6);
}

TEST(channel, decoder_and_simulator_extremes) {
    EXPECT_NEAR(optimal_decoder_fidelity(identity_channel(2)).f_star, 1.0, 1e-7);
    EXPECT_NEAR(optimal_decoder_fidelity(depolarizing(1.0, 2)).f_star, 0.25, 1e-7);
    EXPECT_NEAR(optimal_constant_simulator(depolarizing(1.0, 2)).delta_star, 0.0, 1e-7);
    EXPECT_NEAR(optimal_constant_simulator(depolarizing(0.3, 2)).delta_star, 0.7 * 1.5, 1e-6);
}

TEST(channel, helstrom_discrimination) {
    const ComplexMatrix r1 = random_density_matrix(3, 1), r2 = random_density_matrix(3, 2);
    EXPECT_NEAR(optimal_discrimination({r1, r2}, {0.5, 0.5}).value, 0.5 + trace_distance(r1, r2) / 4, 1e-7);
    const ComplexMatrix a = basis_projector(2, 0);
    EXPECT_NEAR(optimal_discrimination({a, a, a, a}, {0.25, 0.25, 0.25, 0.25}).value, 0.25, 1e-7);
}

TEST(channel, text_round_trip) {
    const QuantumChannel n = random_channel(2, 2, 2, 99);
    const QuantumChannel back = read_channel(write_channel(n));
    EXPECT_EQ(back.choi(), n.choi());
    EXPECT_THROW(read_channel("CHAN 2 2\n"), ArgumentError);
}
