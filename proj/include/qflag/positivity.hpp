#pragma once

#include "qflag/metric.hpp"
#include "qflag/roots.hpp"

namespace qflag {

struct MinorRecord {
    Bideg bideg;
    size_t order = 0;
    Scalar minor;
    SignReport report;  // on the certified interval
};

struct PositivityCertificate {
    int n = 0;
    Interval window;
    Interval interval;
    std::vector<MinorRecord> minors;
    /// roots of minors, Gram denominators and Lefschetz determinants found inside the window
    std::vector<Interval> critical;
    bool ok = false;
    std::string detail;
};

PositivityCertificate certify_positivity(const FiberAlgebra& F, const HodgeData& h,
                                         const std::map<Bideg, GramMatrix>& grams, const Interval& window);
PositivityCertificate certify_positivity(int n, const Interval& window);

struct PointVerdict {
    mpq_class q0;
    bool pole = false;
    bool positive = false;
    std::map<Bideg, std::vector<GaussQ>> pivots;
};
PointVerdict positivity_at(const std::map<Bideg, GramMatrix>& grams, const mpq_class& q0);
PointVerdict positivity_at(int n, const mpq_class& q0);

struct ExclusionEntry {
    int k = 0;
    Scalar det;
    std::vector<Interval> roots;
};
/// isolated positive roots of every Lefschetz determinant inside the window
std::vector<ExclusionEntry> exclusion_set(const LefschetzIsoReport& iso, const Interval& window);
std::vector<ExclusionEntry> exclusion_set(int n, const Interval& window);

}  // namespace qflag
