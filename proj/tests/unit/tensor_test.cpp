#include "cdqs/errors.hpp"
#include "cdqs/tensor.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace cdqs;

TEST(tensor, product_and_partial_trace) {
    const ComplexMatrix a = random_density_matrix(2, 1), b = random_density_matrix(3, 2);
    const ComplexMatrix ab = tensor_product(a, b);
    ASSERT_EQ(ab.rows(), 6);
    const SystemDims dims{{"A", 2}, {"B", 3}};
    EXPECT_LT((partial_trace(ab, dims, {"A"}) - a).norm(), 1e-14);
    EXPECT_LT((partial_trace(ab, dims, {"B"}) - b).norm(), 1e-14);
}

TEST(tensor, permute_swaps_factors) {
    const ComplexMatrix a = random_density_matrix(2, 3), b = random_density_matrix(3, 4);
    const ComplexMatrix swapped = permute_systems(tensor_product(a, b), {2, 3}, {1, 0});
    EXPECT_LT((swapped - tensor_product(b, a)).norm(), 1e-14);
}

TEST(tensor, system_dims_lookup) {
    const SystemDims d{{"Q", 2}, {"L", 4}};
    EXPECT_EQ(d.total(), 8);
    EXPECT_EQ(d.index_of("L"), 1u);
    EXPECT_TRUE(d.contains("Q"));
    EXPECT_THROW(d.index_of("X"), ArgumentError);
}

TEST(tensor, distances_on_known_states) {
    ComplexMatrix z0 = ComplexMatrix::Zero(2, 2), z1 = ComplexMatrix::Zero(2, 2);
    z0(0, 0) = 1;
    z1(1, 1) = 1;
    EXPECT_NEAR(trace_distance(z0, z1), 2.0, 1e-14);
    EXPECT_NEAR(fidelity(z0, z1), 0.0, 1e-12);
    const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
    EXPECT_NEAR(fidelity(z0, mixed), 0.5, 1e-12);
    EXPECT_NEAR(trace_distance(z0, mixed), 1.0, 1e-14);
}

TEST(tensor, haar_unitary_is_unitary_and_seeded) {
    const ComplexMatrix u = haar_random_unitary(5, 11);
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(5, 5)).norm(), 1e-12);
    EXPECT_EQ(u, haar_random_unitary(5, 11));
    EXPECT_NE(u, haar_random_unitary(5, 12));
}

TEST(tensor, random_density_matrix_rank) {
    const ComplexMatrix r = random_density_matrix(4, 9, 2);
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-13);
    const RealVector ev = hermitian_eigenvalues(r);
    int rank = 0;
    for (int i = 0; i < ev.size(); ++i) rank += ev(i) > 1e-12 ? 1 : 0;
    EXPECT_EQ(rank, 2);
}

TEST(tensor, matrix_text_round_trip_is_exact) {
    const ComplexMatrix m = random_density_matrix(3, 5);
    EXPECT_EQ(read_matrix(write_matrix(m)), m);
    EXPECT_THROW(read_matrix("2 2\n1 0 0 0\n"), ArgumentError);
}

TEST(tensor, entry_cap_raises_capacity_error) {
    const std::size_t old = tensor_entry_cap();
    set_tensor_entry_cap(16);
    EXPECT_THROW(tensor_product(ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(4, 4)), CapacityError);
    set_tensor_entry_cap(old);
}
