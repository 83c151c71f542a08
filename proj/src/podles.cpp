#include "qflag/podles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace qflag {

namespace {

using CMat = Eigen::MatrixXcd;

// product over i = -l .. j-1 of [l-i][l+i+1], all in twice units
Scalar weight_norm(int L2, int J2) {
    Scalar p(1);
    for (int I2 = -L2; I2 < J2; I2 += 2) p = p * sym_qint((L2 - I2) / 2) * sym_qint((L2 + I2) / 2 + 1);
    return p;
}

// F u_j = [l+j][l-j+1] u_{j-1}
Scalar lowering(int L2, int J2) { return sym_qint((L2 + J2) / 2) * sym_qint((L2 - J2) / 2 + 1); }

bool fits(int L2, int J2) { return std::abs(J2) <= L2 && (L2 - J2) % 2 == 0; }

Scalar haar(int L2, int M2) { return Scalar::q_pow(-M2) / sym_qint(L2 + 1); }

int sign_of_twist(int k) { return k < 0 ? 1 : -1; }

const Component* find(const ComplexBlock& B, int a, int b) {
    for (const Component& c : B.comps)
        if (c.a == a && c.b == b) return &c;
    return nullptr;
}

// adjoint of A with respect to the diagonal inner product G
SMatrix g_adjoint(const SMatrix& A, const SMatrix& G) {
    SMatrix out = A.adjoint();
    for (size_t i = 0; i < out.rows(); ++i)
        for (size_t j = 0; j < out.cols(); ++j)
            if (!out(i, j).is_zero()) out(i, j) = out(i, j) * G(j, j) / G(i, i);
    return out;
}

CMat to_eigen(const GMatrix& m) {
    CMat out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out(i, j) = {m(i, j).re.get_d(), m(i, j).im.get_d()};
    return out;
}

// Hermitian representative sqrt(G) A sqrt(G)^-1 of a G-self-adjoint operator
CMat symmetrise(const CMat& A, const Eigen::VectorXd& g) {
    Eigen::VectorXd s = g.cwiseSqrt();
    CMat out = s.asDiagonal() * A * s.cwiseInverse().asDiagonal();
    return (out + out.adjoint()) / 2.0;
}

std::vector<double> eigenvalues(const CMat& H, const std::vector<size_t>& idx) {
    if (idx.empty()) return {};
    CMat sub(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) sub(i, j) = H(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<CMat> es(sub, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

std::vector<size_t> all_indices(size_t n) {
    std::vector<size_t> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TruncatedSections build_sections(int k, int twice_lmax) {
    if (twice_lmax < std::abs(k)) throw std::invalid_argument("cutoff below first admissible l");
    TruncatedSections S{k, twice_lmax, {}};
    const int J0 = -k;
    for (int L2 = std::abs(k); L2 <= twice_lmax; L2 += 2) {
        SectionBlock b{L2, static_cast<size_t>(L2 + 1), SMatrix(L2 + 1, L2 + 1)};
        Scalar p = weight_norm(L2, J0);
        for (int m = 0; m <= L2; ++m) b.gram(m, m) = haar(L2, 2 * m - L2) * p;
        S.blocks.push_back(b);
    }
    return S;
}

TwistedComplex dolbeault_operators(int k, int twice_lmax) {
    if (twice_lmax < std::abs(k)) throw std::invalid_argument("cutoff below first admissible l");
    TwistedComplex C;
    C.k = k;
    C.twice_lmax = twice_lmax;
    C.weight = Scalar::q_pow(1 - std::abs(k));
    const Scalar& w = C.weight;
    const Scalar I = Scalar::i();
    const int J0 = -k;
    for (int L2 = std::abs(k) % 2; L2 <= twice_lmax; L2 += 2) {
        ComplexBlock B;
        B.twice_l = L2;
        const size_t copies = L2 + 1;
        const int layout[4][3] = {{0, 0, J0}, {0, 1, J0 - 2}, {1, 0, J0 + 2}, {1, 1, J0}};
        for (auto& c : layout)
            if (fits(L2, c[2])) {
                B.comps.push_back({c[0], c[1], c[2], B.dim});
                B.dim += copies;
            }
        if (B.comps.empty()) continue;
        const size_t N = B.dim;
        B.gram = SMatrix(N, N);
        for (const Component& c : B.comps) {
            Scalar phi = (c.a + c.b == 1) ? w : Scalar(1);
            Scalar p = weight_norm(L2, c.twice_j) * phi;
            for (size_t m = 0; m < copies; ++m) B.gram(c.offset + m, c.offset + m) = haar(L2, 2 * int(m) - L2) * p;
        }
        B.dbar = B.del = B.L = SMatrix(N, N);
        auto put = [&](SMatrix& X, const Component* src, const Component* dst, const Scalar& s) {
            if (!src || !dst || s.is_zero()) return;
            for (size_t m = 0; m < copies; ++m) X(dst->offset + m, src->offset + m) = s;
        };
        const Component *c00 = find(B, 0, 0), *c01 = find(B, 0, 1), *c10 = find(B, 1, 0), *c11 = find(B, 1, 1);
        if (c00) {
            put(B.dbar, c00, c01, lowering(L2, J0));
            put(B.del, c00, c10, Scalar(1));
            put(B.L, c00, c11, Scalar(1));
        }
        if (c10) put(B.dbar, c10, c11, -I * w * lowering(L2, J0 + 2));
        if (c01) put(B.del, c01, c11, I * w);
        B.dbar_adj = g_adjoint(B.dbar, B.gram);
        B.del_adj = g_adjoint(B.del, B.gram);
        B.Lambda = g_adjoint(B.L, B.gram);
        B.lap_dbar = B.dbar * B.dbar_adj + B.dbar_adj * B.dbar;
        B.lap_del = B.del * B.del_adj + B.del_adj * B.del;
        SMatrix nab = B.del + B.dbar, nab_adj = B.del_adj + B.dbar_adj;
        B.lap_nabla = nab * nab_adj + nab_adj * nab;
        B.dirac_dbar = B.dbar + B.dbar_adj;
        for (const Component& c : B.comps) {
            for (size_t m = 0; m < copies; ++m) {
                if (c.a == 0) B.antiholo.push_back(c.offset + m);
                if (c.a == 0 && c.b == 0) B.degree0.push_back(c.offset + m);
            }
        }
        C.blocks.push_back(std::move(B));
    }
    return C;
}

Scalar curvature_scalar(const TwistedComplex& C) {
    std::optional<Scalar> c;
    for (const ComplexBlock& B : C.blocks) {
        SMatrix nab = B.del + B.dbar;
        SMatrix sq = nab * nab;
        if (B.L.is_zero()) {
            if (!sq.is_zero()) throw std::runtime_error("curvature is not a multiple of L");
            continue;
        }
        const Component *c00 = find(B, 0, 0), *c11 = find(B, 1, 1);
        Scalar here = sq(c11->offset, c00->offset);
        if (!(sq == here * B.L)) throw std::runtime_error("curvature is not a multiple of L");
        if (c && !(*c == here)) throw std::runtime_error("calibration failure: curvature not constant across blocks");
        c = here;
    }
    if (!c) throw std::runtime_error("no block carries the Kahler form");
    if (C.k == 0) {
        if (!c->is_zero()) throw std::runtime_error("flat twist with nonzero curvature");
        return Scalar(0);
    }
    // nabla^2 = s i theta L, s = +1 for negative twists
    return *c / (Scalar(sign_of_twist(C.k)) * Scalar::i());
}

Spectrum laplace_spectrum(const TwistedComplex& C, const mpq_class& q0) {
    if (q0 <= 0) throw std::invalid_argument("q must be positive");
    Spectrum S;
    S.q0 = q0.get_d();
    for (const ComplexBlock& B : C.blocks) {
        GMatrix G = evaluate(B.gram, q0);
        Eigen::VectorXd g(B.dim);
        for (size_t i = 0; i < B.dim; ++i) g(i) = G(i, i).re.get_d();
        CMat dbar = symmetrise(to_eigen(evaluate(B.lap_dbar, q0)), g);
        CMat del = symmetrise(to_eigen(evaluate(B.lap_del, q0)), g);
        CMat nab = symmetrise(to_eigen(evaluate(B.lap_nabla, q0)), g);
        CMat dir = symmetrise(to_eigen(evaluate(B.dirac_dbar, q0)), g);
        BlockSpectrum bs;
        bs.twice_l = B.twice_l;
        auto all = all_indices(B.dim);
        bs.dbar_all = eigenvalues(dbar, all);
        bs.del_all = eigenvalues(del, all);
        bs.nabla_all = eigenvalues(nab, all);
        bs.dbar_antiholo = eigenvalues(dbar, B.antiholo);
        bs.dbar_degree0 = eigenvalues(dbar, B.degree0);
        bs.dirac_antiholo = eigenvalues(dir, B.antiholo);
        double scale = 1;
        for (double v : bs.dbar_antiholo) scale = std::max(scale, std::abs(v));
        for (double v : bs.dbar_antiholo)
            if (std::abs(v) <= 1e-10 * scale) ++bs.kernel_antiholo;
        S.blocks.push_back(std::move(bs));
    }
    return S;
}

Spectrum laplace_spectrum(const TwistedComplex& C, double q0) { return laplace_spectrum(C, mpq_class(q0)); }

GapReport verify_gap_and_identities(int k, int twice_lmax, const mpq_class& q0, bool exact) {
    if (k >= 0) throw std::invalid_argument("twist must be negative");
    if (q0 <= 0) throw std::invalid_argument("q must be positive");
    if (twice_lmax < std::abs(k) + 2) throw std::invalid_argument("cutoff below first admissible l");
    GapReport R;
    R.k = k;
    R.q0 = q0.get_d();
    R.exact = exact;
    static std::mutex mu;
    static std::map<std::pair<int, int>, TwistedComplex> cache;
    TwistedComplex C;
    bool cached = false;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({k, twice_lmax});
        if (it != cache.end()) {
            C = it->second;
            cached = true;
        }
    }
    if (!cached) {
        C = dolbeault_operators(k, twice_lmax);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(std::pair{k, twice_lmax}, C);
    }
    Scalar theta = curvature_scalar(C);
    Scalar expect = podles_curvature(k).theta;
    if (!(theta == expect)) R.failures.push_back("curvature " + theta.str() + " differs from " + expect.str());
    GaussQ th = theta.eval(q0);
    R.theta = th.re.get_d();
    const double tol = 1e-9;

    if (exact) {
        R.theta_exact = theta.str();
        // every Laplacian is diagonal in the weight basis, so its spectrum is read off exactly
        std::optional<Scalar> best;
        GaussQ best_val;
        for (const ComplexBlock& B : C.blocks) {
            // [i nabla^2, Lambda]
            SMatrix inab = Scalar::i() * ((B.del + B.dbar) * (B.del + B.dbar));
            SMatrix comm = inab * B.Lambda - B.Lambda * inab;
            SMatrix resid = B.lap_dbar - B.lap_del - comm;
            if (!resid.is_zero()) R.residual_akizuki_nakano = 1;
            SMatrix a1 = B.del * B.dbar_adj + B.dbar_adj * B.del, a2 = B.dbar * B.del_adj + B.del_adj * B.dbar;
            if (!a1.is_zero() || !a2.is_zero()) R.residual_anticommutators = 1;
            if (!(B.lap_nabla == B.lap_del + B.lap_dbar)) R.residual_nabla = 1;
            if (!(B.dirac_dbar * B.dirac_dbar == B.lap_dbar)) R.residual_dirac = 1;
            for (size_t i : B.antiholo)
                for (size_t j : B.antiholo)
                    if (i != j && !B.lap_dbar(i, j).is_zero()) R.failures.push_back("Laplacian not diagonal");
            for (size_t i : B.antiholo) {
                const Scalar& e = B.lap_dbar(i, i);
                if (e.is_zero()) continue;
                GaussQ v = e.eval(q0);
                if (!best || v.re < best_val.re) {
                    best = e;
                    best_val = v;
                    R.min_twice_l = B.twice_l;
                }
            }
        }
        if (best) {
            R.min_exact = best->str();
            R.min_nonzero = best_val.re.get_d();
            R.attained = best_val == th;
            R.gap_ok = best_val.re >= th.re;
            for (const ComplexBlock& B : C.blocks)
                for (size_t i : B.degree0)
                    if (B.lap_dbar(i, i).eval(q0) == th) ++R.multiplicity_degree0;
        }
        R.dirac_gap = std::sqrt(R.min_nonzero);
    } else {
        Spectrum S = laplace_spectrum(C, q0);
        double best = INFINITY;
        for (const BlockSpectrum& b : S.blocks) {
            double scale = 1;
            for (double v : b.dbar_antiholo) scale = std::max(scale, std::abs(v));
            for (double v : b.dbar_antiholo)
                if (v > 1e-10 * scale && v < best) {
                    best = v;
                    R.min_twice_l = b.twice_l;
                }
        }
        R.min_nonzero = best;
        R.attained = std::abs(best - R.theta) <= tol * std::max(1.0, R.theta);
        R.gap_ok = best >= R.theta * (1 - tol);
        for (const BlockSpectrum& b : S.blocks)
            for (double v : b.dbar_degree0)
                if (std::abs(v - R.theta) <= tol * std::max(1.0, R.theta)) ++R.multiplicity_degree0;
        double dg = INFINITY;
        for (const BlockSpectrum& b : S.blocks)
            for (double v : b.dirac_antiholo)
                if (std::abs(v) > 1e-6) dg = std::min(dg, std::abs(v));
        R.dirac_gap = dg;
        if (std::abs(dg - std::sqrt(R.theta)) > tol * std::max(1.0, std::sqrt(R.theta)))
            R.failures.push_back("Dirac gap differs from sqrt(theta)");
        for (const ComplexBlock& B : C.blocks) {
            GMatrix G = evaluate(B.gram, q0);
            Eigen::VectorXd g(B.dim);
            for (size_t i = 0; i < B.dim; ++i) g(i) = G(i, i).re.get_d();
            auto ev = [&](const SMatrix& m) { return to_eigen(evaluate(m, q0)); };
            CMat dbar = ev(B.dbar), del = ev(B.del), dbar_a = ev(B.dbar_adj), del_a = ev(B.del_adj), Lam = ev(B.Lambda);
            CMat ld = ev(B.lap_dbar), lp = ev(B.lap_del), ln = ev(B.lap_nabla), dir = ev(B.dirac_dbar);
            CMat nab = del + dbar;
            CMat inab = std::complex<double>(0, 1) * nab * nab;
            double sc = std::max({1.0, max_abs(ld), max_abs(lp)});
            R.residual_akizuki_nakano =
                std::max(R.residual_akizuki_nakano, max_abs(ld - lp - (inab * Lam - Lam * inab)) / sc);
            R.residual_anticommutators = std::max(
                {R.residual_anticommutators, max_abs(del * dbar_a + dbar_a * del) / sc,
                 max_abs(dbar * del_a + del_a * dbar) / sc});
            R.residual_nabla = std::max(R.residual_nabla, max_abs(ln - lp - ld) / sc);
            R.residual_dirac = std::max(R.residual_dirac, max_abs(dir * dir - ld) / sc);
        }
    }
    if (!R.gap_ok) R.failures.push_back("spectral gap below theta");
    if (!R.attained) R.failures.push_back("gap theta not attained");
    if (R.multiplicity_degree0 != static_cast<size_t>(-k + 1))
        R.failures.push_back("eigenspace dimension " + std::to_string(R.multiplicity_degree0) + " in degree 0");
    if (R.min_twice_l != -k) R.failures.push_back("gap not attained at l = |k|/2");
    if (R.residual_akizuki_nakano > tol) R.failures.push_back("Akizuki-Nakano identity fails");
    if (R.residual_anticommutators > tol) R.failures.push_back("anticommutators do not vanish");
    if (R.residual_nabla > tol) R.failures.push_back("Laplace sum rule fails");
    if (R.residual_dirac > tol) R.failures.push_back("Dirac square differs from the Laplacian");
    R.ok = R.failures.empty();
    return R;
}

}  // namespace qflag
