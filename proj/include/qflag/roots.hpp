#pragma once

#include "qflag/scalar.hpp"

#include <optional>
#include <vector>

namespace qflag {

/// Open rational interval (lo, hi). lo == hi marks an exact rational root.
struct Interval {
    mpq_class lo, hi;
    bool exact() const { return lo == hi; }
    bool contains(const mpq_class& x) const { return exact() ? x == lo : (lo < x && x < hi); }
};

struct RootIsolation {
    std::vector<mpz_class> polynomial;  // ascending integer coefficients
    std::vector<Interval> intervals;    // sorted, pairwise disjoint, one distinct root each
};

QPoly to_qpoly(const std::vector<mpz_class>& c);
std::vector<QPoly> sturm_sequence(const QPoly& p);
/// sign variations of the Sturm sequence at x
int sturm_variations(const std::vector<QPoly>& seq, const mpq_class& x);
/// distinct real roots in the open interval (a, b); a, b must not be roots
int sturm_count(const QPoly& p, const mpq_class& a, const mpq_class& b);

RootIsolation isolate_real_roots(const std::vector<mpz_class>& p, const Interval& window);
RootIsolation isolate_real_roots(const QPoly& p, const Interval& window);
/// bisect every interval until it is narrower than width
void refine(RootIsolation& iso, const mpq_class& width);

/// rational bound B with every real root of p in (-B, B)
mpq_class root_bound(const QPoly& p);

enum class Sign { Positive, Negative, Mixed, HasPole };
const char* sign_name(Sign s);

struct SignReport {
    Sign sign;
    /// Mixed: two sample points whose values bracket a root of the numerator (values may share a sign
    /// when the root has even multiplicity). HasPole: isolating interval of a denominator root.
    std::optional<Interval> witness;
    mpq_class sample_point;
    GaussQ sample_value;
};

/// certified sign of a real scalar on an open window inside q > 0
SignReport sign_on_interval(const Scalar& f, const Interval& window);

}  // namespace qflag
