#include "qflag/roots.hpp"

#include <stdexcept>

namespace qflag {

QPoly to_qpoly(const std::vector<mpz_class>& c) {
    std::vector<mpq_class> v;
    v.reserve(c.size());
    for (auto& z : c) v.emplace_back(z);
    return QPoly(std::move(v));
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        // positive rescaling keeps signs and bounds coefficient growth
        mpq_class s = abs(r.lc());
        seq.push_back(-(r * mpq_class(1 / s)));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

static int sgn(const mpq_class& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int sturm_variations(const std::vector<QPoly>& seq, const mpq_class& x) {
    int var = 0, last = 0;
    for (auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int sturm_count(const QPoly& p, const mpq_class& a, const mpq_class& b) {
    auto seq = sturm_sequence(p);
    return sturm_variations(seq, a) - sturm_variations(seq, b);
}

static QPoly squarefree(const QPoly& p) {
    QPoly g = gcd(p, p.derivative());
    return g.degree() > 0 ? p / g : p.monic();
}

static QPoly drop_root(const QPoly& s, const mpq_class& r) {
    return s / QPoly(std::vector<mpq_class>{-r, mpq_class(1)});
}

static void isolate_rec(const QPoly& s, const mpq_class& lo, const mpq_class& hi, std::vector<Interval>& out) {
    if (s.degree() <= 0) return;
    auto seq = sturm_sequence(s);
    int n = sturm_variations(seq, lo) - sturm_variations(seq, hi);
    if (n == 0) return;
    if (n == 1) {
        out.push_back({lo, hi});
        return;
    }
    mpq_class mid = (lo + hi) / 2;
    if (s.eval(mid) == 0) {
        QPoly s2 = drop_root(s, mid);
        isolate_rec(s2, lo, mid, out);
        out.push_back({mid, mid});
        isolate_rec(s2, mid, hi, out);
    } else {
        isolate_rec(s, lo, mid, out);
        isolate_rec(s, mid, hi, out);
    }
}

RootIsolation isolate_real_roots(const QPoly& p, const Interval& window) {
    if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
    if (!(window.lo < window.hi)) throw std::invalid_argument("window requires lower < upper");
    RootIsolation iso;
    iso.polynomial = p.integer_primitive();
    QPoly s = squarefree(p);
    // roots sitting exactly on the window boundary are outside the open window
    if (s.degree() > 0 && s.eval(window.lo) == 0) s = drop_root(s, window.lo);
    if (s.degree() > 0 && s.eval(window.hi) == 0) s = drop_root(s, window.hi);
    isolate_rec(s, window.lo, window.hi, iso.intervals);
    return iso;
}

RootIsolation isolate_real_roots(const std::vector<mpz_class>& p, const Interval& window) {
    return isolate_real_roots(to_qpoly(p), window);
}

void refine(RootIsolation& iso, const mpq_class& width) {
    QPoly s = squarefree(to_qpoly(iso.polynomial));
    for (auto& iv : iso.intervals) {
        if (iv.exact()) continue;
        int slo = sgn(s.eval(iv.lo));
        while (iv.hi - iv.lo >= width) {
            mpq_class mid = (iv.lo + iv.hi) / 2;
            int sm = sgn(s.eval(mid));
            if (sm == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (sm == slo) iv.lo = mid;
            else iv.hi = mid;
        }
    }
}

mpq_class root_bound(const QPoly& p) {
    if (p.degree() <= 0) return 1;
    mpq_class m = 0;
    for (int k = 0; k < p.degree(); ++k) {
        mpq_class a = abs(p.coeff(k) / p.lc());
        if (a > m) m = a;
    }
    return m + 1;
}

const char* sign_name(Sign s) {
    switch (s) {
        case Sign::Positive: return "Positive";
        case Sign::Negative: return "Negative";
        case Sign::Mixed: return "Mixed";
        case Sign::HasPole: return "HasPole";
    }
    return "?";
}

SignReport sign_on_interval(const Scalar& f, const Interval& window) {
    if (window.lo < 0 || !(window.lo < window.hi)) throw std::invalid_argument("window must lie in q > 0");
    if (!f.is_real()) throw std::invalid_argument("sign_on_interval needs a real scalar");
    SignReport rep{Sign::Positive, std::nullopt, (window.lo + window.hi) / 2, {}};
    if (f.den().degree() > 0) {
        auto iso = isolate_real_roots(f.den(), window);
        if (!iso.intervals.empty()) {
            rep.sign = Sign::HasPole;
            rep.witness = iso.intervals.front();
            return rep;
        }
    }
    if (f.is_zero()) {
        rep.sign = Sign::Mixed;
        rep.witness = window;
        return rep;
    }
    if (f.re().degree() > 0) {
        auto iso = isolate_real_roots(f.re(), window);
        if (!iso.intervals.empty()) {
            rep.sign = Sign::Mixed;
            iso.intervals.resize(1);
            mpq_class w = (window.hi - window.lo) / 4;
            while (!iso.intervals[0].exact() &&
                   (iso.intervals[0].lo <= window.lo || iso.intervals[0].hi >= window.hi)) {
                refine(iso, w);
                w /= 2;
            }
            Interval r = iso.intervals.front();
            mpq_class a = r.exact() ? (window.lo + r.lo) / 2 : r.lo;
            mpq_class b = r.exact() ? (r.hi + window.hi) / 2 : r.hi;
            rep.witness = Interval{a, b};
            return rep;
        }
    }
    rep.sample_value = f.eval(rep.sample_point);
    rep.sign = rep.sample_value.re > 0 ? Sign::Positive : Sign::Negative;
    return rep;
}

}  // namespace qflag
