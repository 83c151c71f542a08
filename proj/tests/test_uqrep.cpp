#include "qflag/uqrep.hpp"

#include <gtest/gtest.h>

using namespace qflag;

namespace {

bool intertwines(const SMatrix& X, const ModuleRep& A, const ModuleRep& B) {
    for (int a = 0; a < A.rank(); ++a) {
        if (!(X * A.E[a] - B.E[a] * X).is_zero()) return false;
        if (!(X * A.F[a] - B.F[a] * X).is_zero()) return false;
        if (!(X * A.K[a] - B.K[a] * X).is_zero()) return false;
    }
    return true;
}

SMatrix eval_at_one_flip_check(const BraidMatrix& B) {
    SMatrix diff = B.mat - flip_matrix(B.dv, B.dw);
    SMatrix out(diff.rows(), diff.cols());
    for (size_t i = 0; i < diff.rows(); ++i)
        for (size_t j = 0; j < diff.cols(); ++j) out(i, j) = Scalar(diff(i, j).eval(1));
    return out;
}

}  // namespace

TEST(UqRep, VectorRepExamples) {
    ModuleRep V = vector_rep(2);
    EXPECT_EQ(V.dim, 2u);
    EXPECT_EQ(V.K[0](0, 0), Scalar::q());
    EXPECT_EQ(V.K[0](1, 1), Scalar::q_pow(-1));
    EXPECT_THROW(vector_rep(1), std::invalid_argument);
    for (int N = 2; N <= 6; ++N) {
        ModuleRep W = vector_rep(N);
        EXPECT_EQ(W.dim, static_cast<size_t>(N));
        SMatrix hw(N, 1);
        hw(0, 0) = Scalar(1);
        SMatrix img = W.E[0] * (W.F[0] * hw);
        EXPECT_FALSE(img.is_zero());
        EXPECT_TRUE(img(0, 0) != Scalar());
        for (int j = 1; j < N; ++j) EXPECT_TRUE(img(j, 0).is_zero());
    }
}

TEST(UqRep, RelationsHoldForConstructedReps) {
    for (int N = 2; N <= 6; ++N) {
        ModuleRep V = vector_rep(N), D = dual_rep(V);
        std::string why;
        EXPECT_TRUE(check_relations(V, all_roots(N), &why)) << why;
        EXPECT_TRUE(check_relations(D, all_roots(N), &why)) << why;
        if (N <= 4) {
            EXPECT_TRUE(check_relations(tensor(V, D), all_roots(N), &why)) << why;
            EXPECT_TRUE(check_relations(tensor(D, V), all_roots(N), &why)) << why;
            EXPECT_TRUE(check_relations(tensor(V, V), all_roots(N), &why)) << why;
        }
    }
    ModuleRep V = vector_rep(3);
    EXPECT_TRUE(check_relations(tensor(tensor(V, V), dual_rep(V)), all_roots(3)));
}

TEST(UqRep, DualWeightsNegated) {
    ModuleRep V = vector_rep(2), D = dual_rep(V);
    ASSERT_EQ(D.weights.size(), 2u);
    EXPECT_EQ(D.weights[0], std::vector<int>{-1});
    EXPECT_EQ(D.weights[1], std::vector<int>{1});
    // as a set of weights the dual is the reversed, negated list
    EXPECT_EQ(D.weights[0][0], -V.weights[0][0]);
    EXPECT_EQ(D.weights[1][0], V.weights[0][0]);
    EXPECT_EQ(tensor(V, D).dim, 4u);
}

TEST(UqRep, InvariantVectors) {
    ModuleRep V2 = vector_rep(2);
    EXPECT_EQ(invariant_vectors(tensor(V2, dual_rep(V2)), all_roots(2)).cols(), 1u);
    ModuleRep V3 = vector_rep(3);
    SMatrix inv = invariant_vectors(tensor(V3, dual_rep(V3)), all_roots(3));
    ASSERT_EQ(inv.cols(), 1u);
    ModuleRep T = tensor(V3, dual_rep(V3));
    for (int a = 0; a < 2; ++a) {
        EXPECT_TRUE((T.E[a] * inv).is_zero());
        EXPECT_TRUE((T.F[a] * inv).is_zero());
    }
    EXPECT_EQ(invariant_vectors(trivial_rep(3), all_roots(3)).cols(), 1u);
    EXPECT_EQ(invariant_vectors(V3, all_roots(3)).cols(), 0u);
}

TEST(UqRep, BraidingVectorEigenvalues) {
    for (int N = 2; N <= 4; ++N) {
        ModuleRep V = vector_rep(N);
        BraidMatrix B = braiding(V, V);
        size_t d = N * N;
        SMatrix I = SMatrix::identity(d);
        SMatrix A = B.mat - I, C = B.mat + Scalar::q_pow(-2) * I;
        EXPECT_TRUE((A * C).is_zero());
        EXPECT_EQ(d - A.rank(), static_cast<size_t>(N * (N + 1) / 2));
        EXPECT_EQ(d - C.rank(), static_cast<size_t>(N * (N - 1) / 2));
        EXPECT_TRUE(eval_at_one_flip_check(B).is_zero());
    }
}

TEST(UqRep, BraidingsIntertwineAllPairs) {
    for (int N = 2; N <= 3; ++N) {
        ModuleRep V = vector_rep(N), D = dual_rep(V);
        for (auto* X : {&V, &D})
            for (auto* Y : {&V, &D}) {
                BraidMatrix B = braiding(*X, *Y);
                EXPECT_TRUE(intertwines(B.mat, tensor(*X, *Y), tensor(*Y, *X))) << B.source;
                EXPECT_TRUE(eval_at_one_flip_check(B).is_zero()) << B.source;
            }
    }
}

TEST(UqRep, BraidRelation) {
    for (int N = 2; N <= 3; ++N) {
        ModuleRep V = vector_rep(N), D = dual_rep(V);
        size_t d = N;
        SMatrix I = SMatrix::identity(d);
        // (R_{YZ} x 1)(1 x R_{XZ})(R_{XY} x 1) = (1 x R_{XY})(R_{XZ} x 1)(1 x R_{YZ}) on X (x) Y (x) Z
        for (auto* X : {&V, &D})
            for (auto* Y : {&V, &D})
                for (auto* Z : {&V, &D}) {
                    SMatrix rxy = braiding(*X, *Y).mat, rxz = braiding(*X, *Z).mat, ryz = braiding(*Y, *Z).mat;
                    SMatrix lhs = SMatrix::kron(ryz, I) * SMatrix::kron(I, rxz) * SMatrix::kron(rxy, I);
                    SMatrix rhs = SMatrix::kron(I, rxy) * SMatrix::kron(rxz, I) * SMatrix::kron(I, ryz);
                    EXPECT_TRUE((lhs - rhs).is_zero()) << X->label << Y->label << Z->label;
                }
    }
}

TEST(UqRep, DoubleBraidingScalarOnSummands) {
    ModuleRep V = vector_rep(3), D = dual_rep(V);
    SMatrix I = SMatrix::identity(9);
    SMatrix vv = braiding(V, V).mat * braiding(V, V).mat;
    EXPECT_TRUE(((vv - I) * (vv - Scalar::q_pow(-4) * I)).is_zero());
    SMatrix vd = braiding(D, V).mat * braiding(V, D).mat;
    EXPECT_TRUE(intertwines(vd, tensor(V, D), tensor(V, D)));
    // trivial plus adjoint: a quadratic minimal polynomial
    ModuleRep T = tensor(V, D);
    SMatrix inv = invariant_vectors(T, all_roots(3));
    SMatrix img = vd * inv;
    Scalar lam = img(0, 0) / inv(0, 0);
    EXPECT_TRUE((img - lam * inv).is_zero());
    SMatrix rest = vd - lam * I;
    EXPECT_EQ(rest.rank(), 8u);
}
