#pragma once

#include "qflag/uqrep.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qflag {

/// Normal word e+_K ^ e-_L; bit i of K (resp. L) marks index i+1.
struct Word {
    uint32_t K = 0, L = 0;
    int a() const { return __builtin_popcount(K); }
    int b() const { return __builtin_popcount(L); }
    int degree() const { return a() + b(); }
    friend bool operator<(const Word& x, const Word& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return std::pair(x.K, x.L) < std::pair(y.K, y.L);
    }
    friend bool operator==(const Word& x, const Word& y) { return x.K == y.K && x.L == y.L; }
};

struct FiberForm {
    std::map<Word, Scalar> terms;
    uint64_t owner = 0;

    bool is_zero() const { return terms.empty(); }
    Scalar coeff(const Word& w) const;
    void add(const Word& w, const Scalar& c);
    FiberForm& operator+=(const FiberForm& o);
    friend FiberForm operator+(FiberForm x, const FiberForm& y) { return x += y; }
    friend FiberForm operator-(FiberForm x, const FiberForm& y);
    friend FiberForm operator*(const Scalar& s, const FiberForm& x);
    friend bool operator==(const FiberForm& x, const FiberForm& y) { return x.terms == y.terms; }
};

struct FiberOptions {
    /// crossed node alpha_N-1 instead of alpha_1
    bool mirror = false;
};

struct CheckResult {
    bool ok = true;
    std::string detail;
};

/// Fiber exterior algebra of quantum CP^n.
class FiberAlgebra {
public:
    static FiberAlgebra build(int n, FiberOptions opt = {});

    int n() const { return n_; }
    int M() const { return n_; }
    const std::vector<int>& levi_roots() const { return levi_; }
    /// vector index h with e+_x = [dz_{labels[x], h}], e-_x = [dbar z_{h, labels[x]}]
    int crossed_index() const { return crossed_; }
    const std::vector<int>& labels() const { return labels_; }
    const ModuleRep& holo_module() const { return Vp_; }
    const ModuleRep& antiholo_module() const { return Vm_; }
    /// e-_j ^ e+_i = sum A(k*n+l, j*n+i) e+_k ^ e-_l (0-based indices)
    const SMatrix& cross() const { return A_; }
    /// coefficients of the invariant (1,1)-element in the words e+_k ^ e-_k... ordered as V+ (x) V-
    const SMatrix& kappa_vector() const { return kappa_; }
    const std::vector<std::string>& dimension_audit() const { return audit_; }

    FiberForm gen_plus(int i) const;   // 0-based
    FiberForm gen_minus(int i) const;  // 0-based
    FiberForm word(const Word& w, const Scalar& c = Scalar(1)) const;
    FiberForm unit() const { return word(Word{}); }

    FiberForm wedge(const FiberForm& x, const FiberForm& y) const;
    /// normal form of an arbitrary generator sequence (g < n: e+_{g}, g >= n: e-_{g-n})
    FiberForm normal_form(const std::vector<int>& gens) const;
    FiberForm star(const FiberForm& x) const;

    std::vector<Word> basis(int a, int b) const;
    std::vector<Word> basis(int k) const;
    size_t index_of(const Word& w) const;
    /// coordinate column of a homogeneous form in basis(a, b)
    SMatrix coords(const FiberForm& x, int a, int b) const;
    FiberForm from_coords(const SMatrix& col, size_t j, int a, int b) const;

    /// confluence of every degree-3 overlap (certifies dim = binom(2n, k) in every degree)
    CheckResult check_overlaps() const;
    /// rank of the span of all normal forms (degree k-1 basis word) ^ generator
    size_t degree_rank(int k) const;
    CheckResult check_classical_limit() const;
    CheckResult check_star_rule() const;
    CheckResult check_equivariance() const;
    /// "x^y = normal form" for two generators
    std::string relation_text(int g1, int g2) const;

private:
    void check_owner(const FiberForm& x) const;
    FiberForm rmul(const Word& w, int g) const;
    FiberForm rmul_form(const FiberForm& x, int g) const;
    void build_tables();
    void solve_cross();

    int n_ = 0;
    uint64_t id_ = 0;
    bool mirror_ = false;
    int crossed_ = 0;
    std::vector<int> labels_;
    std::vector<int> levi_;
    ModuleRep Vp_, Vm_;
    SMatrix A_, kappa_;
    Scalar hol_c_, anti_c_;
    std::vector<std::vector<FiberForm>> table_;  // table_[K * 2^n + L][g]
    std::vector<FiberForm> star_words_;
    std::vector<std::vector<Word>> by_bideg_;
    std::vector<std::string> audit_;
};

/// the A-matrix derived from the R-matrix assembly, specialised at the fiber
struct OracleResult {
    SMatrix A;
    bool agrees = false;
    bool agrees_up_to_scale = false;
    bool same_ideal = false;
    std::vector<std::string> differences;
};
OracleResult rmatrix_cross_oracle(const FiberAlgebra& F);

std::string word_text(const Word& w, int n);

}  // namespace qflag
