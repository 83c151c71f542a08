#pragma once

#include "qflag/matrix.hpp"

#include <string>
#include <vector>

namespace qflag {

enum class RepKind { Vector, Dual, Other };

/// Type-1 module of U_q(sl_N) in a weight basis. Generators are indexed 0..N-2.
struct ModuleRep {
    int N = 0;
    size_t dim = 0;
    RepKind kind = RepKind::Other;
    std::vector<std::vector<int>> weights;  // fundamental-weight coordinates per basis vector
    std::vector<SMatrix> E, F, K;           // K diagonal
    std::string label;

    int rank() const { return N - 1; }
    SMatrix K_inv(int a) const;
};

ModuleRep vector_rep(int N);
ModuleRep dual_rep(const ModuleRep& V);
ModuleRep tensor(const ModuleRep& V, const ModuleRep& W);
ModuleRep trivial_rep(int N);
/// coordinate submodule spanned by the listed basis vectors (in that order); throws if not invariant
/// under the generators of `roots` and all K's
ModuleRep coordinate_subrep(const ModuleRep& V, const std::vector<size_t>& basis, const std::vector<int>& roots);

/// exact residuals of the defining relations; all zero for a valid rep (restricted to `roots` for E/F)
bool check_relations(const ModuleRep& V, const std::vector<int>& roots, std::string* why = nullptr);
std::vector<int> all_roots(int N);

/// joint kernel of E_a, F_a (a in roots) and K_b - 1 (all b); columns are a basis
SMatrix invariant_vectors(const ModuleRep& V, const std::vector<int>& roots);

/// linear maps X with X rho_V(g) = rho_W(g) X for the selected generators; each entry is a dim W x dim V matrix
std::vector<SMatrix> intertwiners(const ModuleRep& V, const ModuleRep& W, const std::vector<int>& roots);

/// rescaled braiding R^: V (x) W -> W (x) V as a (dim W dim V) x (dim V dim W) matrix.
/// Supported for V, W each a vector rep or its dual (same N).
struct BraidMatrix {
    std::string source, target;
    size_t dv = 0, dw = 0;
    SMatrix mat;
    /// coefficient of w_k (x) v_l in R^(v_i (x) w_j)
    const Scalar& coeff(size_t k, size_t l, size_t i, size_t j) const { return mat(k * dv + l, i * dw + j); }
};
BraidMatrix braiding(const ModuleRep& V, const ModuleRep& W);

/// flip V (x) W -> W (x) V
SMatrix flip_matrix(size_t dv, size_t dw);

}  // namespace qflag
