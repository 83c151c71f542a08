#include "qflag/metric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qflag;

namespace {

struct Ctx {
    FiberAlgebra F;
    HodgeData h;
    std::map<Bideg, GramMatrix> G;
    GradedOperator Lambda;
    explicit Ctx(int n) : F(FiberAlgebra::build(n)), h(build_hodge(F)), G(all_grams(F, h)) {
        Lambda = dual_lefschetz(F, h.L, G);
    }
};

FiberForm random_form(const FiberAlgebra& F, int a, int b, std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-2, 2), e(-2, 2);
    FiberForm x = F.word(Word{}, Scalar(0));
    for (const Word& w : F.basis(a, b)) x += F.word(w, Scalar(c(rng)) * Scalar::q_pow(e(rng)) + Scalar(c(rng)) * Scalar::i());
    return x;
}

}  // namespace

TEST(Metric, PairingExamples) {
    Ctx s(2);
    for (int i = 0; i < 2; ++i) {
        EXPECT_EQ(metric_pairing(s.F, s.h, s.F.gen_plus(i), s.F.gen_plus(i)).eval(1), GaussQ(1));
        for (int j = 0; j < 2; ++j) {
            EXPECT_TRUE(metric_pairing(s.F, s.h, s.F.gen_plus(i), s.F.gen_minus(j)).is_zero());
            if (i != j) EXPECT_TRUE(metric_pairing(s.F, s.h, s.F.gen_plus(i), s.F.gen_plus(j)).is_zero());
        }
    }
    EXPECT_TRUE(metric_pairing(s.F, s.h, s.F.unit(), s.F.gen_plus(0)).is_zero());
}

TEST(Metric, GramInvariants) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        for (auto& [d, g] : s.G) {
            CheckResult r = check_gram(g);
            EXPECT_TRUE(r.ok) << r.detail;
            EXPECT_EQ(g.mat, g.mat.adjoint());
            for (size_t i = 0; i < g.mat.rows(); ++i)
                for (size_t j = 0; j < g.mat.cols(); ++j) {
                    EXPECT_FALSE(g.mat(i, j).has_pole_at(1));
                    EXPECT_EQ(g.mat(i, j).eval(1), GaussQ(i == j ? 1 : 0));
                }
        }
    }
}

TEST(Metric, DegreeOneDiagonal) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        for (Bideg d : {Bideg{1, 0}, Bideg{0, 1}}) {
            const SMatrix& m = s.G.at(d).mat;
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < m.cols(); ++j)
                    if (i != j) EXPECT_TRUE(m(i, j).is_zero());
        }
    }
}

TEST(Metric, StarExchangesBidegrees) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b) {
                auto B = s.F.basis(a, b);
                for (size_t i = 0; i < B.size(); ++i)
                    for (size_t j = 0; j < B.size(); ++j) {
                        FiberForm x = s.F.word(B[i]), y = s.F.word(B[j]);
                        Scalar lhs = metric_pairing(s.F, s.h, s.F.star(x), s.F.star(y));
                        EXPECT_EQ(lhs.eval(1), metric_pairing(s.F, s.h, y, x).eval(1));
                    }
            }
    }
}

TEST(Metric, StarExchangeBrokenAwayFromOne) {
    Ctx s(1);
    EXPECT_EQ(s.G.at({1, 0}).mat(0, 0), Scalar(1));
    EXPECT_EQ(s.G.at({0, 1}).mat(0, 0), Scalar::q_pow(-2));
}

TEST(Metric, DualLefschetz) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        EXPECT_TRUE(s.Lambda.apply(s.F, s.F.unit()).is_zero());
        FiberForm lk = s.Lambda.apply(s.F, s.h.kappa);
        ASSERT_EQ(lk.terms.size(), 1u);
        EXPECT_EQ(lk.coeff(Word{}).eval(1), GaussQ(n));
        std::mt19937 rng(n);
        for (int t = 0; t < 4; ++t) {
            std::uniform_int_distribution<int> pick(0, n - 1);
            int a = pick(rng), b = pick(rng);
            FiberForm x = random_form(s.F, a, b, rng), y = random_form(s.F, a + 1, b + 1, rng);
            EXPECT_EQ(metric_pairing(s.F, s.h, s.h.L.apply(s.F, x), y),
                      metric_pairing(s.F, s.h, x, s.Lambda.apply(s.F, y)));
        }
    }
}

TEST(Metric, Sl2Relations) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        Sl2Report r = verify_sl2(s.F, s.h.L, s.Lambda, s.h.H);
        EXPECT_TRUE(r.ok);
        for (auto& f : r.failures) ADD_FAILURE() << f;
        for (auto& [d, m] : r.r_LLambda) EXPECT_TRUE(m.is_zero());
    }
}

TEST(Metric, DegreeOneFormula) {
    for (int n = 1; n <= 3; ++n) {
        Ctx s(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                FiberForm x = s.F.gen_plus(i), y = s.F.gen_plus(j);
                EXPECT_EQ(degree_one_pairing(s.F, s.h, x, y), metric_pairing(s.F, s.h, x, y));
                // on the antiholomorphic block the printed i becomes -i
                FiberForm u = s.F.gen_minus(i), v = s.F.gen_minus(j);
                EXPECT_EQ(degree_one_pairing(s.F, s.h, u, v), Scalar(-1) * metric_pairing(s.F, s.h, u, v));
            }
    }
}
