#include "qflag/positivity.hpp"

#include <stdexcept>

namespace qflag {

namespace {

// roots of the numerator and denominator of a real scalar inside the window, isolated away from 1
std::vector<Interval> critical_roots(const Scalar& s, const Interval& window) {
    std::vector<Interval> out;
    for (const QPoly* p : {&s.re(), &s.den()}) {
        if (p->degree() <= 0) continue;
        RootIsolation iso = isolate_real_roots(*p, window);
        for (Interval iv : iso.intervals) {
            while (!iv.exact() && iv.lo < 1 && iv.hi > 1) {
                RootIsolation one{iso.polynomial, {iv}};
                refine(one, (iv.hi - iv.lo) / 2);
                iv = one.intervals[0];
            }
            out.push_back(iv);
        }
    }
    return out;
}

std::string bname(Bideg d) { return "(" + std::to_string(d.first) + "," + std::to_string(d.second) + ")"; }

}  // namespace

PositivityCertificate certify_positivity(const FiberAlgebra& F, const HodgeData& h,
                                         const std::map<Bideg, GramMatrix>& grams, const Interval& window) {
    PositivityCertificate cert;
    cert.n = F.n();
    cert.window = window;
    if (!(window.lo < 1 && window.hi > 1) || window.lo < 0)
        throw std::invalid_argument("search window must lie in q > 0 and contain 1");
    std::vector<Scalar> watched;
    for (auto& [d, G] : grams) {
        for (size_t k = 1; k <= G.mat.rows(); ++k) {
            Scalar m = G.mat.leading_minor(k);
            if (m.is_zero()) {
                cert.detail = "minor " + std::to_string(k) + " of Gram block " + bname(d) + " vanishes identically";
                return cert;
            }
            if (!m.is_real()) {
                cert.detail = "minor " + std::to_string(k) + " of Gram block " + bname(d) + " is not real";
                return cert;
            }
            if (m.has_pole_at(1) || m.eval(1) == GaussQ(0)) {
                cert.detail = "minor " + std::to_string(k) + " of Gram block " + bname(d) + " degenerates at q=1";
                return cert;
            }
            cert.minors.push_back({d, k, m, {}});
            watched.push_back(m);
        }
        for (size_t i = 0; i < G.mat.rows(); ++i)
            for (size_t j = 0; j < G.mat.cols(); ++j)
                if (G.mat(i, j).den().degree() > 0)
                    watched.push_back(Scalar(G.mat(i, j).den(), QPoly(), QPoly(mpq_class(1))));
    }
    for (auto& d : h.iso.degrees) watched.push_back(d.det);

    mpq_class lo = window.lo, hi = window.hi;
    for (const Scalar& s : watched)
        for (const Interval& iv : critical_roots(s, window)) {
            cert.critical.push_back(iv);
            if (iv.hi <= 1 && iv.hi > lo) lo = iv.hi;
            if (iv.exact() && iv.lo == 1) {
                cert.detail = "q=1 is a root";
                return cert;
            }
            if (iv.lo >= 1 && iv.lo < hi) hi = iv.lo;
        }
    cert.interval = {lo, hi};
    cert.ok = true;
    for (MinorRecord& r : cert.minors) {
        r.report = sign_on_interval(r.minor, cert.interval);
        if (r.report.sign != Sign::Positive) {
            cert.ok = false;
            cert.detail = "minor " + std::to_string(r.order) + " of Gram block " + bname(r.bideg) + " is " +
                          sign_name(r.report.sign) + " on the candidate interval";
        }
    }
    if (cert.ok) cert.detail = "all leading principal minors certified positive";
    return cert;
}

PositivityCertificate certify_positivity(int n, const Interval& window) {
    FiberAlgebra F = FiberAlgebra::build(n);
    HodgeData h = build_hodge(F);
    return certify_positivity(F, h, all_grams(F, h), window);
}

PointVerdict positivity_at(const std::map<Bideg, GramMatrix>& grams, const mpq_class& q0) {
    PointVerdict v;
    v.q0 = q0;
    v.positive = true;
    for (auto& [d, G] : grams)
        for (size_t i = 0; i < G.mat.rows(); ++i)
            for (size_t j = 0; j < G.mat.cols(); ++j)
                if (G.mat(i, j).has_pole_at(q0)) {
                    v.pole = true;
                    v.positive = false;
                    return v;
                }
    for (auto& [d, G] : grams) {
        GMatrix A = evaluate(G.mat, q0);
        const size_t m = A.rows();
        std::vector<GaussQ> piv;
        for (size_t k = 0; k < m; ++k) {
            GaussQ p = A(k, k);
            piv.push_back(p);
            if (p.im != 0 || p.re <= 0) {
                v.positive = false;
                break;
            }
            for (size_t i = k + 1; i < m; ++i) {
                GaussQ f = A(i, k) / p;
                for (size_t j = k; j < m; ++j) A(i, j) = A(i, j) - f * A(k, j);
            }
        }
        v.pivots[d] = piv;
    }
    return v;
}

PointVerdict positivity_at(int n, const mpq_class& q0) {
    FiberAlgebra F = FiberAlgebra::build(n);
    HodgeData h = build_hodge(F);
    return positivity_at(all_grams(F, h), q0);
}

std::vector<ExclusionEntry> exclusion_set(const LefschetzIsoReport& iso, const Interval& window) {
    std::vector<ExclusionEntry> out;
    for (auto& d : iso.degrees) {
        if (d.det.is_zero()) throw std::runtime_error("Lefschetz determinant vanishes identically");
        ExclusionEntry e{d.k, d.det, {}};
        if (d.det.re().degree() > 0) e.roots = isolate_real_roots(d.det.re(), window).intervals;
        out.push_back(e);
    }
    return out;
}

std::vector<ExclusionEntry> exclusion_set(int n, const Interval& window) {
    FiberAlgebra F = FiberAlgebra::build(n);
    return exclusion_set(check_lefschetz_iso(F, lefschetz_L(F, kahler_form(F))), window);
}

}  // namespace qflag
