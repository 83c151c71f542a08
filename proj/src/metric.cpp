#include "qflag/metric.hpp"

#include <stdexcept>

namespace qflag {

namespace {

Bideg plus(Bideg d, int s) { return {d.first + s, d.second + s}; }

bool valid(const FiberAlgebra& F, Bideg d) {
    return d.first >= 0 && d.second >= 0 && d.first <= F.n() && d.second <= F.n();
}

int total_degree(const FiberForm& x) {
    int k = -1;
    for (auto& [w, c] : x.terms) {
        if (k >= 0 && w.degree() != k) throw std::invalid_argument("form is not homogeneous");
        k = w.degree();
    }
    return k;
}

Scalar scalar_part(const FiberForm& x) { return x.coeff(Word{}); }

std::string bname(Bideg d) { return "(" + std::to_string(d.first) + "," + std::to_string(d.second) + ")"; }

}  // namespace

Scalar metric_pairing(const FiberAlgebra& F, const HodgeData& h, const FiberForm& x, const FiberForm& y) {
    int kx = total_degree(x), ky = total_degree(y);
    if (kx < 0 || ky < 0 || kx != ky) return Scalar(0);
    FiberForm inner = h.star.apply(F, F.star(y));
    return scalar_part(h.star.apply(F, F.wedge(x, inner)));
}

Scalar degree_one_pairing(const FiberAlgebra& F, const HodgeData& h, const FiberForm& x, const FiberForm& y) {
    const int M = F.M();
    FiberForm p = x;
    for (int s = 0; s < M - 1; ++s) p = F.wedge(p, h.kappa);
    p = F.wedge(p, F.star(y));
    Scalar f(1);
    for (int s = 2; s <= M - 1; ++s) f = f * Scalar(s);
    return Scalar::i() / f * scalar_part(h.star.apply(F, p));
}

GramMatrix gram(const FiberAlgebra& F, const HodgeData& h, Bideg d) {
    auto B = F.basis(d.first, d.second);
    std::vector<FiberForm> duals;
    for (const Word& w : B) duals.push_back(h.star.apply(F, F.star(F.word(w))));
    GramMatrix G{d, SMatrix(B.size(), B.size())};
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j)
            G.mat(i, j) = scalar_part(h.star.apply(F, F.wedge(F.word(B[i]), duals[j])));
    return G;
}

std::map<Bideg, GramMatrix> all_grams(const FiberAlgebra& F, const HodgeData& h) {
    std::map<Bideg, GramMatrix> out;
    for (int a = 0; a <= F.n(); ++a)
        for (int b = 0; b <= F.n(); ++b) out[{a, b}] = gram(F, h, {a, b});
    return out;
}

CheckResult check_gram(const GramMatrix& G) {
    if (!(G.mat == G.mat.adjoint())) return {false, "Gram matrix " + bname(G.bideg) + " is not conjugate-symmetric"};
    for (size_t i = 0; i < G.mat.rows(); ++i)
        for (size_t j = 0; j < G.mat.cols(); ++j) {
            if (G.mat(i, j).has_pole_at(1)) return {false, "Gram entry has a pole at q=1"};
            if (!(G.mat(i, j).eval(1) == GaussQ(i == j ? 1 : 0)))
                return {false, "Gram matrix " + bname(G.bideg) + " is not the identity at q=1"};
        }
    return {true, "conjugate-symmetric, identity at q=1"};
}

GradedOperator dual_lefschetz(const FiberAlgebra& F, const GradedOperator& L,
                              const std::map<Bideg, GramMatrix>& grams) {
    GradedOperator Lam{"Lambda", F.n(), Bideg{-1, -1}, {}};
    for (auto& [d, b] : L.blocks) {
        const SMatrix& Gs = grams.at(d).mat;
        const SMatrix& Gt = grams.at(b.dst).mat;
        if (Gs.rank() != Gs.rows()) throw std::runtime_error("singular Gram block " + bname(d));
        // g(Lx, y) = x^T L^T Gt conj(y) = x^T Gs conj(Lambda y)
        SMatrix m = (Gs.inverse() * b.mat.transpose() * Gt).conj();
        Lam.blocks[b.dst] = {b.dst, d, m};
    }
    return Lam;
}

Sl2Report verify_sl2(const FiberAlgebra& F, const GradedOperator& L, const GradedOperator& Lambda,
                     const GradedOperator& H) {
    Sl2Report rep;
    rep.ok = true;
    for (int a = 0; a <= F.n(); ++a)
        for (int b = 0; b <= F.n(); ++b) {
            Bideg d{a, b}, up = plus(d, 1), dn = plus(d, -1);
            SMatrix Ld = L.block(F, d), Lamd = Lambda.block(F, d), Hd = H.block(F, d);
            SMatrix LLam = Lamd.rows() ? L.block(F, dn) * Lamd : SMatrix(Hd.rows(), Hd.cols());
            SMatrix LamL = Ld.rows() ? Lambda.block(F, up) * Ld : SMatrix(Hd.rows(), Hd.cols());
            rep.r_LLambda[d] = LLam - LamL - Hd;
            if (valid(F, up)) rep.r_HL[d] = H.block(F, up) * Ld - Ld * Hd - Scalar(2) * Ld;
            if (valid(F, dn)) rep.r_HLambda[d] = H.block(F, dn) * Lamd - Lamd * Hd + Scalar(2) * Lamd;
        }
    auto scan = [&](const std::map<Bideg, SMatrix>& r, const std::string& what) {
        for (auto& [d, m] : r)
            if (!m.is_zero()) {
                rep.ok = false;
                rep.failures.push_back(what + " nonzero on " + bname(d));
            }
    };
    scan(rep.r_LLambda, "[L,Lambda]-H");
    scan(rep.r_HL, "[H,L]-2L");
    scan(rep.r_HLambda, "[H,Lambda]+2Lambda");
    return rep;
}

}  // namespace qflag
