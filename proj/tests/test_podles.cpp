#include "qflag/podles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace qflag;

namespace {

double q_number(int n, double q) { return (std::pow(q, n) - std::pow(q, -n)) / (q - 1 / q); }

// classical eigenvalue (l + j)(l - j + 1) of the lowering Laplacian on right weight j
double classical(double l, double j) { return (l + j) * (l - j + 1); }

}  // namespace

TEST(Podles, SectionBlocks) {
    TruncatedSections s = build_sections(0, 4);
    ASSERT_EQ(s.blocks.size(), 3u);
    EXPECT_EQ(s.blocks[0].dim, 1u);
    EXPECT_EQ(s.blocks[1].dim, 3u);
    EXPECT_EQ(s.blocks[2].dim, 5u);
    TruncatedSections h = build_sections(1, 5);
    EXPECT_EQ(h.blocks.front().twice_l, 1);
    for (auto& b : h.blocks)
        for (size_t i = 0; i < b.dim; ++i) EXPECT_GT(b.gram(i, i).eval(mpq_class(1, 2)).re, 0);
    EXPECT_THROW(build_sections(5, 3), std::invalid_argument);
}

TEST(Podles, CurvatureFromOperators) {
    EXPECT_EQ(curvature_scalar(dolbeault_operators(-1, 5)), Scalar(1));
    EXPECT_EQ(curvature_scalar(dolbeault_operators(1, 5)), Scalar(1));
    EXPECT_EQ(curvature_scalar(dolbeault_operators(0, 4)), Scalar(0));
    // 1 + q^-2 + q^-4
    Scalar three = Scalar(1) + Scalar::q_pow(-2) + Scalar::q_pow(-4);
    EXPECT_EQ(curvature_scalar(dolbeault_operators(-3, 7)), three);
    EXPECT_EQ(curvature_scalar(dolbeault_operators(3, 7)), three);
    for (int k = -5; k <= 5; ++k)
        if (k != 0) EXPECT_EQ(curvature_scalar(dolbeault_operators(k, 9)), podles_curvature(k).theta) << k;
}

TEST(Podles, ClassicalSpectrum) {
    for (int k : {0, -1, -2, 2, 3}) {
        TwistedComplex C = dolbeault_operators(k, 8);
        Spectrum S = laplace_spectrum(C, 1.0);
        double j0 = -k / 2.0;
        for (auto& b : S.blocks) {
            double l = b.twice_l / 2.0;
            for (double v : b.dbar_degree0) EXPECT_NEAR(v, classical(l, j0), 1e-9) << k << " " << l;
            if (k == 0)
                for (double v : b.dbar_degree0) EXPECT_NEAR(v, l * (l + 1), 1e-9);
        }
    }
}

TEST(Podles, QuantumSpectrumDegreeZero) {
    // q^(1-|k|) [l+j][l-j+1] on degree 0
    for (double q : {0.5, 0.9, 1.3}) {
        for (int k : {-1, -2, -4, 2}) {
            Spectrum S = laplace_spectrum(dolbeault_operators(k, 9), q);
            int J0 = -k;
            for (auto& b : S.blocks) {
                int L2 = b.twice_l;
                double want = std::pow(q, 1 - std::abs(k)) * q_number((L2 + J0) / 2, q) * q_number((L2 - J0) / 2 + 1, q);
                for (double v : b.dbar_degree0) EXPECT_NEAR(v, want, 1e-9 * std::max(1.0, want));
            }
        }
    }
}

TEST(Podles, MultiplicitiesComeInCopies) {
    TwistedComplex C = dolbeault_operators(-3, 9);
    Spectrum S = laplace_spectrum(C, 0.7);
    for (auto& b : S.blocks) {
        std::map<long, int> count;
        for (double v : b.dbar_all) ++count[std::lround(v * 1e6)];
        for (auto& [v, c] : count) EXPECT_EQ(c % (b.twice_l + 1), 0) << b.twice_l;
    }
}

TEST(Podles, HarmonicForms) {
    // holomorphic sections of E_k: k + 1; harmonic (0,1)-forms of E_-k: k - 1
    for (int k = 1; k <= 4; ++k) {
        size_t pos = 0, neg = 0;
        for (auto& b : laplace_spectrum(dolbeault_operators(k, 2 * k + 4), 0.8).blocks) pos += b.kernel_antiholo;
        for (auto& b : laplace_spectrum(dolbeault_operators(-k, 2 * k + 4), 0.8).blocks) neg += b.kernel_antiholo;
        EXPECT_EQ(pos, size_t(k + 1));
        EXPECT_EQ(neg, size_t(k - 1));
    }
}

TEST(Podles, GapExamples) {
    GapReport r = verify_gap_and_identities(-2, 16, mpq_class(1));
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.min_nonzero, 2.0, 1e-9);
    GapReport r3 = verify_gap_and_identities(-3, 15, mpq_class(1));
    EXPECT_EQ(r3.multiplicity_degree0, 4u);
    GapReport e = verify_gap_and_identities(-3, 9, mpq_class(1, 2), true);
    EXPECT_TRUE(e.ok);
    EXPECT_EQ(e.theta_exact, Scalar(quantum_integer(3, -2)).str());
    EXPECT_EQ(e.min_exact, e.theta_exact);
    EXPECT_DOUBLE_EQ(e.theta, 1 + 4 + 16);
}

TEST(Podles, GapGrid) {
    for (int k : {1, 2, 3, 5})
        for (mpq_class q : {mpq_class(1, 2), mpq_class(9, 10), mpq_class(1), mpq_class(11, 10), mpq_class(2)}) {
            int cutoff = k + 12;
            GapReport f = verify_gap_and_identities(-k, cutoff, q);
            EXPECT_TRUE(f.ok) << k << " " << q << (f.failures.empty() ? "" : f.failures[0]);
            double theta = 0;
            for (int j = 0; j < k; ++j) theta += std::pow(q.get_d(), -2 * j);
            EXPECT_NEAR(f.min_nonzero, theta, 1e-9 * theta);
            EXPECT_NEAR(f.dirac_gap, std::sqrt(theta), 1e-9 * theta);
            GapReport x = verify_gap_and_identities(-k, cutoff, q, true);
            EXPECT_TRUE(x.ok) << k << " " << q;
            EXPECT_EQ(x.residual_akizuki_nakano, 0);
            EXPECT_EQ(x.residual_anticommutators, 0);
        }
}

TEST(Podles, Errors) {
    EXPECT_THROW(verify_gap_and_identities(2, 10, mpq_class(1)), std::invalid_argument);
    EXPECT_THROW(verify_gap_and_identities(-3, 4, mpq_class(1)), std::invalid_argument);
    EXPECT_THROW(verify_gap_and_identities(-3, 10, mpq_class(0)), std::invalid_argument);
}
