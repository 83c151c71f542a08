#pragma once

#include "qflag/metric.hpp"
#include "qflag/roots.hpp"

#include <nlohmann/json.hpp>

namespace qflag {

enum class TwistSign { Positive, Negative, Flat };
const char* twist_sign_name(TwistSign s);

/// curvature of a line module: nabla^2 = -theta i L (positive), +theta i L (negative)
struct TwistData {
    TwistSign sign = TwistSign::Flat;
    Scalar theta;
};

struct CommutatorBlock {
    Bideg bideg;
    SMatrix over_theta;  // [i nabla^2, Lambda_F] / theta
    Scalar scalar;       // coefficient of theta
    bool is_scalar = false;
};

struct CommutatorReport {
    std::vector<CommutatorBlock> blocks;
    bool ok = false;  // every block is (+-)(k-M) times the identity
    std::string detail;
};

CommutatorReport curvature_commutator(const FiberAlgebra& F, const GradedOperator& L, const GradedOperator& Lambda,
                                      const TwistData& twist);

enum class GapOperator { TwistedAntiholomorphicLaplace, ChernLaplace, TwistedDiracAntiholomorphic };
const char* gap_operator_name(GapOperator op);

struct GapBound {
    GapOperator op;
    Scalar theta;
    Scalar radicand;  // bound = radicand, or sqrt(radicand) when root
    bool root = false;
    std::string expression;
    std::string domain;
    /// the bound is an eigenvalue (anti-holomorphic form supplied)
    bool attained = false;
    double at(const mpq_class& q0) const;
};

/// theta must be certified positive on the window
GapBound gap_bounds(const Scalar& theta, GapOperator op, const Interval& window, bool antiholomorphic_form = false);

/// E_k on the Podles sphere: theta = (|k|)_{q^-2}
TwistData podles_curvature(int k);

struct FlagMetadata {
    std::string id;
    std::string series;
    std::string crossed_node;
    std::string symbol;
    std::string name;
    std::string levi;
    std::string cotangent_01;
    std::string cotangent_10;
    std::string dimension;
    std::optional<long> M;
    std::string spin_criterion;  // empty when the space is not listed as spin
    std::string spin_root;
};

std::vector<std::string> flag_spaces();
FlagMetadata flag_metadata(const std::string& id);
/// evaluate the dimension column; params use the names in the symbol (k, n)
long flag_dimension(const std::string& id, long n, long k = 1);

void to_json(nlohmann::json& j, const FlagMetadata& m);
void from_json(const nlohmann::json& j, FlagMetadata& m);

}  // namespace qflag
