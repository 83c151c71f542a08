#include "qflag/positivity.hpp"

#include <gtest/gtest.h>

using namespace qflag;

namespace {

GaussQ det_oracle(GMatrix m) {
    // cofactor expansion, fine for the small blocks used here
    const size_t n = m.rows();
    if (n == 0) return GaussQ(1);
    if (n == 1) return m(0, 0);
    GaussQ d(0);
    for (size_t c = 0; c < n; ++c) {
        GMatrix sub(n - 1, n - 1);
        for (size_t i = 1; i < n; ++i)
            for (size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) sub(i - 1, jj++) = m(i, j);
        GaussQ t = m(0, c) * det_oracle(sub);
        d = (c % 2) ? d - t : d + t;
    }
    return d;
}

}  // namespace

TEST(Positivity, CertificateCoversOneHalfToTwo) {
    PositivityCertificate c = certify_positivity(1, {mpq_class(1, 4), mpq_class(4)});
    ASSERT_TRUE(c.ok) << c.detail;
    EXPECT_LE(c.interval.lo, mpq_class(1, 2));
    EXPECT_GE(c.interval.hi, mpq_class(2));
    for (auto& m : c.minors) {
        EXPECT_EQ(m.report.sign, Sign::Positive);
        EXPECT_EQ(m.minor.eval(1), GaussQ(1));
    }
}

TEST(Positivity, CertificateNTwo) {
    PositivityCertificate c = certify_positivity(2, {mpq_class(1, 10), mpq_class(10)});
    ASSERT_TRUE(c.ok) << c.detail;
    EXPECT_LT(c.interval.lo, 1);
    EXPECT_GT(c.interval.hi, 1);
    for (auto& m : c.minors) {
        EXPECT_TRUE(m.minor.is_real());
        EXPECT_EQ(m.minor.eval(1), GaussQ(1));
    }
}

TEST(Positivity, MinorsMatchEvaluatedDeterminants) {
    FiberAlgebra F = FiberAlgebra::build(2);
    HodgeData h = build_hodge(F);
    auto grams = all_grams(F, h);
    PositivityCertificate c = certify_positivity(F, h, grams, {mpq_class(1, 2), mpq_class(2)});
    for (const mpq_class q0 : {mpq_class(2, 3), mpq_class(1), mpq_class(7, 4)}) {
        for (auto& m : c.minors) {
            GMatrix G = evaluate(grams.at(m.bideg).mat, q0);
            GMatrix lead(m.order, m.order);
            for (size_t i = 0; i < m.order; ++i)
                for (size_t j = 0; j < m.order; ++j) lead(i, j) = G(i, j);
            EXPECT_EQ(m.minor.eval(q0), det_oracle(lead));
        }
    }
}

TEST(Positivity, PointVerdicts) {
    PointVerdict v1 = positivity_at(1, mpq_class(1));
    EXPECT_TRUE(v1.positive);
    for (auto& [d, piv] : v1.pivots)
        for (auto& p : piv) EXPECT_EQ(p, GaussQ(1));
    EXPECT_TRUE(positivity_at(1, mpq_class(3, 2)).positive);
    EXPECT_TRUE(positivity_at(2, mpq_class(1)).positive);
}

TEST(Positivity, PointVerdictAgreesWithCertificate) {
    FiberAlgebra F = FiberAlgebra::build(2);
    HodgeData h = build_hodge(F);
    auto grams = all_grams(F, h);
    PositivityCertificate c = certify_positivity(F, h, grams, {mpq_class(1, 3), mpq_class(3)});
    ASSERT_TRUE(c.ok);
    for (int t = 1; t < 8; ++t) {
        mpq_class q0 = c.interval.lo + (c.interval.hi - c.interval.lo) * mpq_class(t, 8);
        EXPECT_TRUE(positivity_at(grams, q0).positive) << q0;
    }
}

TEST(Positivity, ShrinkingWindowNeverEnlarges) {
    PositivityCertificate wide = certify_positivity(1, {mpq_class(1, 8), mpq_class(8)});
    PositivityCertificate narrow = certify_positivity(1, {mpq_class(1, 2), mpq_class(3)});
    EXPECT_GE(narrow.interval.lo, wide.interval.lo);
    EXPECT_LE(narrow.interval.hi, wide.interval.hi);
}

TEST(Positivity, ShrinksPastRoots) {
    // synthetic block with minor (q-2)(3q-1)/(-2): equal to 1 at q=1, roots 1/3 and 2
    FiberAlgebra F = FiberAlgebra::build(1);
    HodgeData h = build_hodge(F);
    std::map<Bideg, GramMatrix> grams;
    GramMatrix G{{0, 0}, SMatrix(1, 1)};
    G.mat(0, 0) = Scalar(QPoly({mpq_class(-1), mpq_class(7, 2), mpq_class(-3, 2)}), QPoly(), QPoly(mpq_class(1)));
    grams[{0, 0}] = G;
    ASSERT_EQ(G.mat(0, 0).eval(1), GaussQ(1));
    PositivityCertificate c = certify_positivity(F, h, grams, {mpq_class(1, 10), mpq_class(10)});
    ASSERT_TRUE(c.ok) << c.detail;
    EXPECT_GE(c.interval.lo, mpq_class(1, 3));
    EXPECT_LE(c.interval.hi, mpq_class(2));
    EXPECT_EQ(c.critical.size(), 2u);
    EXPECT_FALSE(positivity_at(grams, mpq_class(5, 2)).positive);
}

TEST(Positivity, DegenerateMinorRejected) {
    FiberAlgebra F = FiberAlgebra::build(1);
    HodgeData h = build_hodge(F);
    std::map<Bideg, GramMatrix> grams;
    grams[{0, 0}] = GramMatrix{{0, 0}, SMatrix(1, 1)};
    EXPECT_FALSE(certify_positivity(F, h, grams, {mpq_class(1, 2), mpq_class(2)}).ok);
    EXPECT_THROW(certify_positivity(F, h, grams, {mpq_class(2), mpq_class(3)}), std::invalid_argument);
}

TEST(Positivity, ExclusionSet) {
    for (int n = 1; n <= 3; ++n) {
        auto e = exclusion_set(n, {mpq_class(1, 100), mpq_class(100)});
        EXPECT_EQ(e.size(), static_cast<size_t>(n));
        for (auto& x : e)
            for (auto& iv : x.roots) EXPECT_FALSE(iv.contains(1));
    }
    auto e1 = exclusion_set(1, {mpq_class(0), mpq_class(10)});
    ASSERT_EQ(e1.size(), 1u);
    EXPECT_TRUE(e1[0].roots.empty());
}
