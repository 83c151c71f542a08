#pragma once

#include "qflag/hodge.hpp"

namespace qflag {

struct GramMatrix {
    Bideg bideg;
    SMatrix mat;  // mat(i, j) = g(w_i, w_j) over basis(a, b)
};

/// eps'( *(x ^ *(y^*)) ); zero unless x and y have equal total degree
Scalar metric_pairing(const FiberAlgebra& F, const HodgeData& h, const FiberForm& x, const FiberForm& y);
/// i/(M-1)! eps'( *(x ^ kappa^(M-1) ^ y^*) ) for degree-one forms
Scalar degree_one_pairing(const FiberAlgebra& F, const HodgeData& h, const FiberForm& x, const FiberForm& y);

GramMatrix gram(const FiberAlgebra& F, const HodgeData& h, Bideg d);
std::map<Bideg, GramMatrix> all_grams(const FiberAlgebra& F, const HodgeData& h);
/// conjugate symmetry and identity at q = 1
CheckResult check_gram(const GramMatrix& G);

/// adjoint of L for g, bidegree shift (-1,-1)
GradedOperator dual_lefschetz(const FiberAlgebra& F, const GradedOperator& L, const std::map<Bideg, GramMatrix>& grams);

struct Sl2Report {
    /// per bidegree residuals of [L,Lambda]-H, [H,L]-2L, [H,Lambda]+2Lambda
    std::map<Bideg, SMatrix> r_LLambda, r_HL, r_HLambda;
    bool ok = false;
    std::vector<std::string> failures;
};
Sl2Report verify_sl2(const FiberAlgebra& F, const GradedOperator& L, const GradedOperator& Lambda,
                     const GradedOperator& H);

}  // namespace qflag
