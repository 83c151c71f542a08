#pragma once

#include "qflag/fiber.hpp"

#include <map>
#include <optional>

namespace qflag {

using Bideg = std::pair<int, int>;

struct OpBlock {
    Bideg src, dst;
    SMatrix mat;  // columns indexed by basis(src), rows by basis(dst)
};

/// Operator on the fiber exterior algebra, stored per source bidegree.
struct GradedOperator {
    std::string name;
    int n = 0;
    std::optional<Bideg> shift;
    std::map<Bideg, OpBlock> blocks;

    /// zero block when the source bidegree has no entry
    SMatrix block(const FiberAlgebra& F, Bideg src) const;
    FiberForm apply(const FiberAlgebra& F, const FiberForm& x) const;
};

/// x o y, blockwise; blocks of y whose target has no block in x are dropped
GradedOperator compose(const GradedOperator& x, const GradedOperator& y);
/// for equal-shift operators
GradedOperator operator-(const GradedOperator& x, const GradedOperator& y);
GradedOperator scaled(const Scalar& s, const GradedOperator& x);
bool is_zero(const GradedOperator& x);

FiberForm kahler_form(const FiberAlgebra& F);
CheckResult check_kahler_form(const FiberAlgebra& F, const FiberForm& kappa);

GradedOperator lefschetz_L(const FiberAlgebra& F, const FiberForm& kappa);
GradedOperator counting_H(const FiberAlgebra& F);
/// L^j as a graded operator (shift (j, j))
GradedOperator lefschetz_power(const FiberAlgebra& F, const GradedOperator& L, int j);

struct DegreeDeterminant {
    int k = 0;
    Scalar det;
    std::map<Bideg, Scalar> blocks;
};

struct LefschetzIsoReport {
    std::vector<DegreeDeterminant> degrees;  // k = 0 .. M-1
    bool holds = false;
    std::string verdict;
};
LefschetzIsoReport check_lefschetz_iso(const FiberAlgebra& F, const GradedOperator& L);

struct LefschetzPiece {
    int j = 0;          // power of L
    Bideg primitive;    // bidegree of the primitive part
    size_t offset = 0;  // first column in the change-of-basis matrix
    size_t dim = 0;
};

struct LefschetzDecomposition {
    /// columns span P^(a,b) = ker L^(M-a-b+1) inside basis(a, b), a + b <= M
    std::map<Bideg, SMatrix> primitive;
    /// per bidegree: hcat over j of L^j P^(a-j,b-j)
    std::map<Bideg, SMatrix> change;
    std::map<Bideg, std::vector<LefschetzPiece>> pieces;
};
LefschetzDecomposition primitive_decomposition(const FiberAlgebra& F, const GradedOperator& L);

/// Weil coefficient of * on L^j P^(a,b)
Scalar weil_coefficient(int M, int a, int b, int j);

GradedOperator hodge_star(const FiberAlgebra& F, const GradedOperator& L, const LefschetzDecomposition& D);
/// *^2 = (-1)^k, bidegree (a,b) -> (M-b,M-a), and * commutes with the star involution
CheckResult check_hodge_star(const FiberAlgebra& F, const GradedOperator& star_op);

/// everything above in one place
struct HodgeData {
    FiberForm kappa;
    GradedOperator L, H, star;
    LefschetzDecomposition decomposition;
    LefschetzIsoReport iso;
};
HodgeData build_hodge(const FiberAlgebra& F);

}  // namespace qflag
