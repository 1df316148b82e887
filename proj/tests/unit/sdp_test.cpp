#include "cdqs/sdp.hpp"
#include "cdqs/tensor.hpp"

#include "gtest/gtest.h"

using namespace cdqs;

TEST(sdp, largest_eigenvalue_of_hermitian) {
    ComplexMatrix h = random_density_matrix(6, 3);
    h(0, 1) += cplx(0, 0.3);
    h(1, 0) -= cplx(0, 0.3);
    SdpProblem p;
    const int b = p.add_block(6);
    p.sense = Sense::Maximize;
    p.objective.add_dense(b, h, 0);
    BlockOperator t;
    for (int i = 0; i < 6; ++i) t.add(b, i, i, 1);
    p.add_constraint(t, 1, Relation::Equal);
    const SdpSolution s = solve(p);
    ASSERT_EQ(s.status, SdpStatus::Optimal);
    EXPECT_NEAR(s.primal_value, hermitian_eigenvalues(h).maxCoeff(), 1e-7);
    EXPECT_NEAR(s.primal_value, s.dual_value, 1e-7);
}

TEST(sdp, diagonal_box) {
    SdpProblem p;
    const int b = p.add_block(2);
    p.sense = Sense::Maximize;
    p.objective.add(b, 0, 0, 1);
    p.objective.add(b, 1, 1, 1);
    for (int r = 0; r < 2; ++r)
        for (int c = r; c < 2; ++c) {
            BlockOperator o;
            o.add_re(b, r, c, 1);
            p.add_constraint(o, r == c ? 1 : 0, r == c ? Relation::LessEqual : Relation::Equal);
            if (r != c) {
                BlockOperator o2;
                o2.add_im(b, r, c, 1);
                p.add_constraint(o2, 0, Relation::Equal);
            }
        }
    const SdpSolution s = solve(p);
    ASSERT_EQ(s.status, SdpStatus::Optimal);
    EXPECT_NEAR(s.primal_value, 2.0, 1e-7);
}

TEST(sdp, negative_trace_is_infeasible) {
    SdpProblem p;
    const int b = p.add_block(2);
    p.objective.add(b, 0, 0, 1);
    BlockOperator t;
    t.add(b, 0, 0, 1);
    t.add(b, 1, 1, 1);
    p.add_constraint(t, -1, Relation::Equal);
    EXPECT_EQ(solve(p).status, SdpStatus::Infeasible);
}

TEST(sdp, iteration_cap_from_environment) {
    setenv("CDQS_SDP_MAX_ITER", "7", 1);
    EXPECT_EQ(default_max_iterations(), 7);
    unsetenv("CDQS_SDP_MAX_ITER");
}
