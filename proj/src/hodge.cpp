#include "qflag/hodge.hpp"

#include <stdexcept>

namespace qflag {

namespace {

size_t block_dim(const FiberAlgebra& F, Bideg d) {
    if (d.first < 0 || d.second < 0 || d.first > F.n() || d.second > F.n()) return 0;
    return F.basis(d.first, d.second).size();
}

std::vector<Bideg> all_bidegrees(int n) {
    std::vector<Bideg> out;
    for (int k = 0; k <= 2 * n; ++k)
        for (int a = 0; a <= n; ++a)
            if (k - a >= 0 && k - a <= n) out.push_back({a, k - a});
    return out;
}

GradedOperator identity_op(const FiberAlgebra& F) {
    GradedOperator I{"1", F.n(), Bideg{0, 0}, {}};
    for (Bideg d : all_bidegrees(F.n())) I.blocks[d] = {d, d, SMatrix::identity(block_dim(F, d))};
    return I;
}

Scalar factorial(int k) {
    Scalar f(1);
    for (int i = 2; i <= k; ++i) f = f * Scalar(i);
    return f;
}

}  // namespace

SMatrix GradedOperator::block(const FiberAlgebra& F, Bideg src) const {
    auto it = blocks.find(src);
    if (it != blocks.end()) return it->second.mat;
    Bideg dst = shift ? Bideg{src.first + shift->first, src.second + shift->second} : src;
    return SMatrix(block_dim(F, dst), block_dim(F, src));
}

FiberForm GradedOperator::apply(const FiberAlgebra& F, const FiberForm& x) const {
    std::map<Bideg, FiberForm> parts;
    for (auto& [w, c] : x.terms) parts[{w.a(), w.b()}].add(w, c);
    FiberForm out = F.word(Word{}, Scalar(0));
    for (auto& [d, part] : parts) {
        auto it = blocks.find(d);
        if (it == blocks.end()) continue;
        SMatrix y = it->second.mat * F.coords(part, d.first, d.second);
        out += F.from_coords(y, 0, it->second.dst.first, it->second.dst.second);
    }
    return out;
}

GradedOperator compose(const GradedOperator& x, const GradedOperator& y) {
    GradedOperator out{x.name + y.name, x.n, std::nullopt, {}};
    if (x.shift && y.shift) out.shift = Bideg{x.shift->first + y.shift->first, x.shift->second + y.shift->second};
    for (auto& [d, b] : y.blocks) {
        auto it = x.blocks.find(b.dst);
        if (it == x.blocks.end()) continue;
        out.blocks[d] = {d, it->second.dst, it->second.mat * b.mat};
    }
    return out;
}

GradedOperator operator-(const GradedOperator& x, const GradedOperator& y) {
    GradedOperator out = x;
    out.name = x.name + "-" + y.name;
    for (auto& [d, b] : y.blocks) {
        auto it = out.blocks.find(d);
        if (it == out.blocks.end()) {
            out.blocks[d] = {d, b.dst, Scalar(-1) * b.mat};
        } else {
            if (it->second.dst != b.dst) throw std::invalid_argument("operators have different targets");
            it->second.mat = it->second.mat - b.mat;
        }
    }
    return out;
}

GradedOperator scaled(const Scalar& s, const GradedOperator& x) {
    GradedOperator out = x;
    for (auto& [d, b] : out.blocks) b.mat = s * b.mat;
    return out;
}

bool is_zero(const GradedOperator& x) {
    for (auto& [d, b] : x.blocks)
        if (!b.mat.is_zero()) return false;
    return true;
}

FiberForm kahler_form(const FiberAlgebra& F) {
    const int n = F.n();
    const SMatrix& kv = F.kappa_vector();
    FiberForm k = F.word(Word{}, Scalar(0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!kv(a * n + b, 0).is_zero()) k += kv(a * n + b, 0) * F.wedge(F.gen_plus(a), F.gen_minus(b));
    CheckResult ok = check_kahler_form(F, k);
    if (!ok.ok) throw std::runtime_error("Kahler form: " + ok.detail);
    return k;
}

CheckResult check_kahler_form(const FiberAlgebra& F, const FiberForm& kappa) {
    const int n = F.n();
    for (auto& [w, c] : kappa.terms) {
        if (w.a() != 1 || w.b() != 1) return {false, "not of bidegree (1,1)"};
        GaussQ at1 = c.eval(1);
        if (!(at1 == GaussQ(w.K == w.L ? 1 : 0))) return {false, "q=1 limit is not the sum of e+_i e-_i"};
    }
    if (!(F.star(kappa) == kappa)) return {false, "not real"};
    for (int g = 0; g < 2 * n; ++g) {
        FiberForm e = g < n ? F.gen_plus(g) : F.gen_minus(g - n);
        if (!(F.wedge(kappa, e) == F.wedge(e, kappa))) return {false, "not central"};
    }
    return {true, "real, central, classical limit sum e+_i e-_i"};
}

GradedOperator lefschetz_L(const FiberAlgebra& F, const FiberForm& kappa) {
    const int n = F.n();
    GradedOperator L{"L", n, Bideg{1, 1}, {}};
    for (Bideg d : all_bidegrees(n)) {
        Bideg t{d.first + 1, d.second + 1};
        if (t.first > n || t.second > n) continue;
        auto B = F.basis(d.first, d.second);
        SMatrix m(block_dim(F, t), B.size());
        for (size_t j = 0; j < B.size(); ++j) {
            FiberForm y = F.wedge(kappa, F.word(B[j]));
            SMatrix c = F.coords(y, t.first, t.second);
            for (size_t i = 0; i < m.rows(); ++i) m(i, j) = c(i, 0);
        }
        L.blocks[d] = {d, t, m};
    }
    return L;
}

GradedOperator counting_H(const FiberAlgebra& F) {
    GradedOperator H{"H", F.n(), Bideg{0, 0}, {}};
    for (Bideg d : all_bidegrees(F.n()))
        H.blocks[d] = {d, d, Scalar(d.first + d.second - F.M()) * SMatrix::identity(block_dim(F, d))};
    return H;
}

GradedOperator lefschetz_power(const FiberAlgebra& F, const GradedOperator& L, int j) {
    GradedOperator out = identity_op(F);
    for (int s = 0; s < j; ++s) out = compose(L, out);
    out.name = "L^" + std::to_string(j);
    out.shift = Bideg{j, j};
    return out;
}

LefschetzIsoReport check_lefschetz_iso(const FiberAlgebra& F, const GradedOperator& L) {
    const int M = F.M();
    LefschetzIsoReport rep;
    rep.holds = true;
    for (int k = 0; k < M; ++k) {
        GradedOperator P = lefschetz_power(F, L, M - k);
        DegreeDeterminant dd;
        dd.k = k;
        dd.det = Scalar(1);
        for (int a = 0; a <= k; ++a) {
            Bideg d{a, k - a};
            if (d.first > F.n() || d.second > F.n()) continue;
            Scalar det = P.block(F, d).det();
            dd.blocks[d] = det;
            dd.det = dd.det * det;
        }
        if (dd.det.is_zero()) rep.holds = false;
        rep.degrees.push_back(dd);
    }
    rep.verdict = rep.holds ? "Hermitian-structure condition holds" : "Hermitian-structure condition fails";
    return rep;
}

LefschetzDecomposition primitive_decomposition(const FiberAlgebra& F, const GradedOperator& L) {
    const int M = F.M();
    LefschetzDecomposition D;
    std::vector<GradedOperator> powers;
    for (int j = 0; j <= M + 1; ++j) powers.push_back(lefschetz_power(F, L, j));
    for (Bideg d : all_bidegrees(F.n())) {
        int m = d.first + d.second;
        if (m > M) continue;
        D.primitive[d] = powers[M - m + 1].block(F, d).nullspace();
    }
    for (Bideg d : all_bidegrees(F.n())) {
        int k = d.first + d.second;
        SMatrix C(block_dim(F, d), 0);
        std::vector<LefschetzPiece> pieces;
        for (int j = 0; j <= std::min(d.first, d.second); ++j) {
            Bideg p{d.first - j, d.second - j};
            int m = k - 2 * j;
            if (m > M || j > M - m) continue;
            const SMatrix& P = D.primitive.at(p);
            if (P.cols() == 0) continue;
            SMatrix cols = powers[j].block(F, p) * P;
            pieces.push_back({j, p, C.cols(), cols.cols()});
            C = SMatrix::hcat(C, cols);
        }
        if (C.cols() != C.rows() || C.rank() != C.rows())
            throw std::runtime_error("Lefschetz splitting fails in bidegree (" + std::to_string(d.first) + "," +
                                     std::to_string(d.second) + ")");
        D.change[d] = C;
        D.pieces[d] = pieces;
    }
    return D;
}

Scalar weil_coefficient(int M, int a, int b, int j) {
    int m = a + b;
    Scalar s = (m * (m + 1) / 2) % 2 ? Scalar(-1) : Scalar(1);
    return s * Scalar::i().pow(a - b) * factorial(j) / factorial(M - m - j);
}

GradedOperator hodge_star(const FiberAlgebra& F, const GradedOperator& L, const LefschetzDecomposition& D) {
    const int M = F.M();
    GradedOperator S{"*", F.n(), std::nullopt, {}};
    std::vector<GradedOperator> powers;
    for (int j = 0; j <= M; ++j) powers.push_back(lefschetz_power(F, L, j));
    for (auto& [d, C] : D.change) {
        Bideg t{M - d.second, M - d.first};
        SMatrix img(block_dim(F, t), 0);
        for (const LefschetzPiece& pc : D.pieces.at(d)) {
            int m = pc.primitive.first + pc.primitive.second;
            Scalar c = weil_coefficient(M, pc.primitive.first, pc.primitive.second, pc.j);
            SMatrix cols = powers[M - m - pc.j].block(F, pc.primitive) * D.primitive.at(pc.primitive);
            img = SMatrix::hcat(img, c * cols);
        }
        S.blocks[d] = {d, t, img * C.inverse()};
    }
    return S;
}

CheckResult check_hodge_star(const FiberAlgebra& F, const GradedOperator& S) {
    const int M = F.M();
    for (auto& [d, b] : S.blocks) {
        if (b.dst != Bideg{M - d.second, M - d.first}) return {false, "wrong target bidegree"};
        const OpBlock& back = S.blocks.at(b.dst);
        int k = d.first + d.second;
        SMatrix sq = back.mat * b.mat;
        if (!(sq == Scalar(k % 2 ? -1 : 1) * SMatrix::identity(sq.rows()))) return {false, "*^2 != (-1)^k"};
    }
    for (int k = 0; k <= 2 * F.n(); ++k)
        for (const Word& w : F.basis(k)) {
            FiberForm x = F.word(w);
            if (!(F.star(S.apply(F, x)) == S.apply(F, F.star(x))))
                return {false, "* does not commute with the star involution"};
        }
    return {true, "*^2 = (-1)^k, bidegree (a,b) -> (M-b,M-a), * is a star map"};
}

HodgeData build_hodge(const FiberAlgebra& F) {
    HodgeData h;
    h.kappa = kahler_form(F);
    h.L = lefschetz_L(F, h.kappa);
    h.H = counting_H(F);
    h.iso = check_lefschetz_iso(F, h.L);
    if (!h.iso.holds) throw std::runtime_error("Lefschetz map is not an isomorphism over the rational function field");
    h.decomposition = primitive_decomposition(F, h.L);
    h.star = hodge_star(F, h.L, h.decomposition);
    return h;
}

}  // namespace qflag
