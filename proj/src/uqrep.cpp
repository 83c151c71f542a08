#include "qflag/uqrep.hpp"

#include <map>
#include <stdexcept>

namespace qflag {

namespace {

int cartan(int a, int b) { return a == b ? 2 : (std::abs(a - b) == 1 ? -1 : 0); }

SMatrix diag_inverse(const SMatrix& k) {
    SMatrix m(k.rows(), k.cols());
    for (size_t i = 0; i < k.rows(); ++i) m(i, i) = k(i, i).inverse();
    return m;
}

std::string kind_tag(const ModuleRep& V) {
    return V.label.empty() ? std::string("rep") : V.label;
}

SMatrix partial_transpose_first(const SMatrix& R, size_t dv, size_t dw) {
    SMatrix out(dv * dw, dv * dw);
    for (size_t i = 0; i < dv; ++i)
        for (size_t j = 0; j < dw; ++j)
            for (size_t i2 = 0; i2 < dv; ++i2)
                for (size_t j2 = 0; j2 < dw; ++j2) out(i2 * dw + j2, i * dw + j) = R(i * dw + j2, i2 * dw + j);
    return out;
}

SMatrix partial_transpose_second(const SMatrix& R, size_t dv, size_t dw) {
    SMatrix out(dv * dw, dv * dw);
    for (size_t i = 0; i < dv; ++i)
        for (size_t j = 0; j < dw; ++j)
            for (size_t i2 = 0; i2 < dv; ++i2)
                for (size_t j2 = 0; j2 < dw; ++j2) out(i2 * dw + j2, i * dw + j) = R(i2 * dw + j, i * dw + j2);
    return out;
}

// R-form on V (x) V for the vector rep: eigenvalue 1 on the summand through v_1 (x) v_1, -q^-2 on the other
SMatrix vector_rmatrix(const ModuleRep& V) {
    ModuleRep T = tensor(V, V);
    auto ends = intertwiners(T, T, all_roots(V.N));
    if (ends.size() != 2) throw std::logic_error("V (x) V is expected to have two simple summands");
    size_t d = T.dim;
    SMatrix Y = ends[0];
    bool scalar = true;
    for (size_t i = 0; i < d && scalar; ++i)
        for (size_t j = 0; j < d; ++j)
            if ((i == j && Y(i, i) != Y(0, 0)) || (i != j && !Y(i, j).is_zero())) {
                scalar = false;
                break;
            }
    if (scalar) Y = ends[1];
    Scalar lam_s = Y(0, 0);
    Scalar tr;
    for (size_t i = 0; i < d; ++i) tr += Y(i, i);
    long ds = static_cast<long>(V.dim * (V.dim + 1) / 2), dl = static_cast<long>(V.dim * (V.dim - 1) / 2);
    Scalar lam_l = (tr - Scalar(ds) * lam_s) / Scalar(dl);
    SMatrix P_l = (lam_l - lam_s).inverse() * (Y - lam_s * SMatrix::identity(d));
    SMatrix P_s = SMatrix::identity(d) - P_l;
    SMatrix Rhat = P_s - Scalar::q_pow(-2) * P_l;
    return flip_matrix(V.dim, V.dim) * Rhat;  // R = tau R^ (tau is an involution here)
}

}  // namespace

SMatrix ModuleRep::K_inv(int a) const { return diag_inverse(K[a]); }

std::vector<int> all_roots(int N) {
    std::vector<int> r;
    for (int a = 0; a < N - 1; ++a) r.push_back(a);
    return r;
}

ModuleRep vector_rep(int N) {
    if (N < 2) throw std::invalid_argument("vector_rep requires N >= 2");
    ModuleRep V;
    V.N = N;
    V.dim = N;
    V.kind = RepKind::Vector;
    V.label = "V";
    for (int j = 0; j < N; ++j) {
        std::vector<int> w(N - 1, 0);
        if (j < N - 1) w[j] += 1;
        if (j > 0) w[j - 1] -= 1;
        V.weights.push_back(w);
    }
    for (int a = 0; a < N - 1; ++a) {
        SMatrix E(N, N), F(N, N), K(N, N);
        E(a, a + 1) = Scalar(1);
        F(a + 1, a) = Scalar(1);
        for (int j = 0; j < N; ++j) K(j, j) = Scalar::q_pow(V.weights[j][a]);
        V.E.push_back(E);
        V.F.push_back(F);
        V.K.push_back(K);
    }
    return V;
}

ModuleRep trivial_rep(int N) {
    ModuleRep V;
    V.N = N;
    V.dim = 1;
    V.label = "1";
    V.weights.push_back(std::vector<int>(N - 1, 0));
    for (int a = 0; a < N - 1; ++a) {
        V.E.emplace_back(1, 1);
        V.F.emplace_back(1, 1);
        V.K.push_back(SMatrix::identity(1));
    }
    return V;
}

ModuleRep dual_rep(const ModuleRep& V) {
    ModuleRep D;
    D.N = V.N;
    D.dim = V.dim;
    D.kind = V.kind == RepKind::Vector ? RepKind::Dual : (V.kind == RepKind::Dual ? RepKind::Other : RepKind::Other);
    D.label = V.label + "*";
    for (auto& w : V.weights) {
        std::vector<int> m(w.size());
        for (size_t a = 0; a < w.size(); ++a) m[a] = -w[a];
        D.weights.push_back(m);
    }
    for (int a = 0; a < V.rank(); ++a) {
        SMatrix Ki = V.K_inv(a);
        // S(E) = -E K^-1, S(F) = -K F, S(K) = K^-1, transposed
        D.E.push_back((Scalar(-1) * (V.E[a] * Ki)).transpose());
        D.F.push_back((Scalar(-1) * (V.K[a] * V.F[a])).transpose());
        D.K.push_back(Ki);
    }
    return D;
}

ModuleRep tensor(const ModuleRep& V, const ModuleRep& W) {
    if (V.N != W.N) throw std::invalid_argument("tensor of reps of different rank");
    ModuleRep T;
    T.N = V.N;
    T.dim = V.dim * W.dim;
    T.label = "(" + V.label + "x" + W.label + ")";
    for (auto& a : V.weights)
        for (auto& b : W.weights) {
            std::vector<int> s(a.size());
            for (size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
            T.weights.push_back(s);
        }
    SMatrix Iv = SMatrix::identity(V.dim), Iw = SMatrix::identity(W.dim);
    for (int a = 0; a < V.rank(); ++a) {
        T.E.push_back(SMatrix::kron(V.E[a], W.K[a]) + SMatrix::kron(Iv, W.E[a]));
        T.F.push_back(SMatrix::kron(V.F[a], Iw) + SMatrix::kron(V.K_inv(a), W.F[a]));
        T.K.push_back(SMatrix::kron(V.K[a], W.K[a]));
    }
    return T;
}

ModuleRep coordinate_subrep(const ModuleRep& V, const std::vector<size_t>& basis, const std::vector<int>& roots) {
    ModuleRep S;
    S.N = V.N;
    S.dim = basis.size();
    S.label = V.label + "|sub";
    std::map<size_t, size_t> pos;
    for (size_t k = 0; k < basis.size(); ++k) {
        pos[basis[k]] = k;
        S.weights.push_back(V.weights[basis[k]]);
    }
    auto restrict = [&](const SMatrix& M, bool check) {
        SMatrix out(basis.size(), basis.size());
        for (size_t c = 0; c < basis.size(); ++c)
            for (size_t r = 0; r < V.dim; ++r) {
                const Scalar& v = M(r, basis[c]);
                if (v.is_zero()) continue;
                auto it = pos.find(r);
                if (it == pos.end()) {
                    if (check) throw std::invalid_argument("coordinate subspace is not a submodule");
                    continue;
                }
                out(it->second, c) = v;
            }
        return out;
    };
    for (int a = 0; a < V.rank(); ++a) {
        bool sel = false;
        for (int r : roots) sel |= r == a;
        S.E.push_back(restrict(V.E[a], sel));
        S.F.push_back(restrict(V.F[a], sel));
        S.K.push_back(restrict(V.K[a], true));
    }
    return S;
}

bool check_relations(const ModuleRep& V, const std::vector<int>& roots, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    Scalar q = Scalar::q();
    Scalar qq = (q - q.inverse()).inverse();
    for (int a = 0; a < V.rank(); ++a) {
        SMatrix Ka = V.K[a], Kai = V.K_inv(a);
        for (size_t i = 0; i < V.dim; ++i)
            for (size_t j = 0; j < V.dim; ++j)
                if (i != j && !Ka(i, j).is_zero()) return fail("K not diagonal");
        for (int b : roots) {
            if (!(Ka * V.E[b] * Kai - Scalar::q_pow(cartan(a, b)) * V.E[b]).is_zero())
                return fail("KEK^-1 relation");
            if (!(Ka * V.F[b] * Kai - Scalar::q_pow(-cartan(a, b)) * V.F[b]).is_zero())
                return fail("KFK^-1 relation");
        }
    }
    for (int a : roots)
        for (int b : roots) {
            SMatrix c = V.E[a] * V.F[b] - V.F[b] * V.E[a];
            if (a == b) c = c - qq * (V.K[a] - V.K_inv(a));
            if (!c.is_zero()) return fail("[E,F] relation");
        }
    for (size_t j = 0; j < V.dim; ++j)
        for (int a = 0; a < V.rank(); ++a)
            if (V.K[a](j, j) != Scalar::q_pow(V.weights[j][a])) return fail("weight data");
    return true;
}

SMatrix invariant_vectors(const ModuleRep& V, const std::vector<int>& roots) {
    std::vector<SMatrix> blocks;
    for (int a : roots) {
        blocks.push_back(V.E[a]);
        blocks.push_back(V.F[a]);
    }
    for (int a = 0; a < V.rank(); ++a) blocks.push_back(V.K[a] - SMatrix::identity(V.dim));
    SMatrix stacked(blocks.size() * V.dim, V.dim);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (size_t i = 0; i < V.dim; ++i)
            for (size_t j = 0; j < V.dim; ++j) stacked(b * V.dim + i, j) = blocks[b](i, j);
    return stacked.nullspace();
}

std::vector<SMatrix> intertwiners(const ModuleRep& V, const ModuleRep& W, const std::vector<int>& roots) {
    // unknowns X(w, v) only where K-weights agree; the K-equations are then satisfied identically
    std::vector<std::pair<size_t, size_t>> vars;
    std::map<std::pair<size_t, size_t>, size_t> idx;
    for (size_t w = 0; w < W.dim; ++w)
        for (size_t v = 0; v < V.dim; ++v)
            if (W.weights[w] == V.weights[v]) {
                idx[{w, v}] = vars.size();
                vars.push_back({w, v});
            }
    std::vector<std::vector<std::pair<size_t, Scalar>>> rows;
    for (int a : roots)
        for (int gen = 0; gen < 2; ++gen) {
            const SMatrix& gv = gen == 0 ? V.E[a] : V.F[a];
            const SMatrix& gw = gen == 0 ? W.E[a] : W.F[a];
            // (X gv - gw X)(w, v) = sum_u X(w,u) gv(u,v) - sum_u gw(w,u) X(u,v)
            for (size_t w = 0; w < W.dim; ++w)
                for (size_t v = 0; v < V.dim; ++v) {
                    std::map<size_t, Scalar> row;
                    for (size_t u = 0; u < V.dim; ++u) {
                        if (gv(u, v).is_zero()) continue;
                        auto it = idx.find({w, u});
                        if (it != idx.end()) row[it->second] += gv(u, v);
                    }
                    for (size_t u = 0; u < W.dim; ++u) {
                        if (gw(w, u).is_zero()) continue;
                        auto it = idx.find({u, v});
                        if (it != idx.end()) row[it->second] -= gw(w, u);
                    }
                    std::vector<std::pair<size_t, Scalar>> r;
                    for (auto& [k, s] : row)
                        if (!s.is_zero()) r.push_back({k, s});
                    if (!r.empty()) rows.push_back(std::move(r));
                }
        }
    SMatrix sys(rows.size(), vars.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [k, s] : rows[r]) sys(r, k) = s;
    SMatrix ns = sys.nullspace();
    std::vector<SMatrix> out;
    for (size_t c = 0; c < ns.cols(); ++c) {
        SMatrix X(W.dim, V.dim);
        for (size_t k = 0; k < vars.size(); ++k) X(vars[k].first, vars[k].second) = ns(k, c);
        out.push_back(X);
    }
    return out;
}

SMatrix flip_matrix(size_t dv, size_t dw) {
    SMatrix t(dw * dv, dv * dw);
    for (size_t i = 0; i < dv; ++i)
        for (size_t j = 0; j < dw; ++j) t(j * dv + i, i * dw + j) = Scalar(1);
    return t;
}

BraidMatrix braiding(const ModuleRep& V, const ModuleRep& W) {
    auto supported = [](const ModuleRep& X) { return X.kind == RepKind::Vector || X.kind == RepKind::Dual; };
    if (!supported(V) || !supported(W) || V.N != W.N)
        throw std::invalid_argument("braiding not implemented for pair " + kind_tag(V) + ", " + kind_tag(W));
    ModuleRep Vec = vector_rep(V.N);
    ModuleRep Dual = dual_rep(Vec);
    size_t d = Vec.dim;
    SMatrix Rvv = vector_rmatrix(Vec);
    SMatrix R;
    bool vd = V.kind == RepKind::Vector, wd = W.kind == RepKind::Vector;
    if (vd && wd) {
        R = Rvv;
    } else if (!vd && wd) {
        // R_{V*,W} = (R_{V,W}^-1)^{t1}
        R = partial_transpose_first(Rvv.inverse(), d, d);
    } else if (!vd && !wd) {
        // (S (x) S) R = R
        R = partial_transpose_second(partial_transpose_first(Rvv, d, d), d, d);
    } else {
        // R_{V**,V*} = (R_{V*,V*}^-1)^{t1}, transported along the intertwiner V -> V**
        SMatrix Rdd = partial_transpose_second(partial_transpose_first(Rvv, d, d), d, d);
        SMatrix Rdd2 = partial_transpose_first(Rdd.inverse(), d, d);
        ModuleRep DD = dual_rep(Dual);
        auto phis = intertwiners(Vec, DD, all_roots(V.N));
        if (phis.size() != 1) throw std::logic_error("V -> V** intertwiner not unique");
        SMatrix phi = phis[0];
        SMatrix Id = SMatrix::identity(d);
        R = SMatrix::kron(phi.inverse(), Id) * Rdd2 * SMatrix::kron(phi, Id);
    }
    BraidMatrix B;
    B.source = kind_tag(V) + "x" + kind_tag(W);
    B.target = kind_tag(W) + "x" + kind_tag(V);
    B.dv = V.dim;
    B.dw = W.dim;
    B.mat = flip_matrix(V.dim, W.dim) * R;
    return B;
}

}  // namespace qflag
