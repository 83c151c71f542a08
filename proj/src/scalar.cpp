#include "qflag/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qflag {

GaussQ GaussQ::inverse() const {
    mpq_class n = re * re + im * im;
    if (n == 0) throw std::domain_error("inverse of zero");
    return {re / n, -im / n};
}

static std::string gauss_text(const mpq_class& re, const mpq_class& im) {
    std::string s = re.get_str();
    if (im < 0) s += "-" + mpq_class(-im).get_str();
    else s += "+" + im.get_str();
    return s + "*i";
}

std::string GaussQ::str() const { return gauss_text(re, im); }

Scalar::Scalar(long v) : re_(mpq_class(v)), den_(mpq_class(1)) {}
Scalar::Scalar(const mpq_class& v) : re_(v), den_(mpq_class(1)) {}
Scalar::Scalar(const GaussQ& v) : re_(v.re), im_(v.im), den_(mpq_class(1)) {}

Scalar::Scalar(QPoly re, QPoly im, QPoly den, int shift)
    : shift_(shift), re_(std::move(re)), im_(std::move(im)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    canonicalize();
}

Scalar Scalar::q_pow(int n) {
    Scalar s(1);
    s.shift_ = n;
    return s;
}

Scalar Scalar::i() { return Scalar(QPoly(), QPoly(mpq_class(1)), QPoly(mpq_class(1))); }

Scalar Scalar::laurent(const std::vector<mpq_class>& coeffs, int lowest) {
    return Scalar(QPoly(coeffs), QPoly(), QPoly(mpq_class(1)), lowest);
}

bool Scalar::is_one() const {
    return shift_ == 0 && im_.is_zero() && re_.degree() == 0 && re_.lc() == 1 && den_.degree() == 0;
}

void Scalar::canonicalize() {
    if (re_.is_zero() && im_.is_zero()) {
        shift_ = 0;
        den_ = QPoly(mpq_class(1));
        return;
    }
    if (den_.degree() > 0) {
        QPoly g = gcd(gcd(re_, im_), den_);
        if (g.degree() > 0) {
            re_ = re_ / g;
            im_ = im_ / g;
            den_ = den_ / g;
        }
    }
    if (den_.lc() != 1) {
        mpq_class s = 1 / den_.lc();
        re_ *= s;
        im_ *= s;
        den_ *= s;
    }
    int v = 1 << 30;
    if (!re_.is_zero()) v = std::min(v, re_.valuation());
    if (!im_.is_zero()) v = std::min(v, im_.valuation());
    if (v > 0) {
        re_ = re_.shift_down(v);
        im_ = im_.shift_down(v);
        shift_ += v;
    }
    int w = den_.valuation();
    if (w > 0) {
        den_ = den_.shift_down(w);
        shift_ -= w;
    }
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.re_ = -s.re_;
    s.im_ = -s.im_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int m = std::min(shift_, o.shift_);
    QPoly ar = re_.shift_up(shift_ - m), ai = im_.shift_up(shift_ - m);
    QPoly br = o.re_.shift_up(o.shift_ - m), bi = o.im_.shift_up(o.shift_ - m);
    if (den_ == o.den_) {
        re_ = ar + br;
        im_ = ai + bi;
    } else {
        re_ = ar * o.den_ + br * den_;
        im_ = ai * o.den_ + bi * den_;
        den_ = den_ * o.den_;
    }
    shift_ = m;
    canonicalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_zero() || o.is_zero()) return *this = Scalar();
    QPoly r = re_ * o.re_ - im_ * o.im_;
    QPoly i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    den_ = den_ * o.den_;
    shift_ += o.shift_;
    canonicalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    if (im_.is_zero()) return Scalar(den_, QPoly(), re_, -shift_);
    QPoly n = re_ * re_ + im_ * im_;
    return Scalar(re_ * den_, -(im_ * den_), n, -shift_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::conj() const {
    Scalar s = *this;
    s.im_ = -s.im_;
    return s;
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool Scalar::has_pole_at(const mpq_class& q0) const {
    if (q0 == 0) return shift_ < 0;
    return den_.eval(q0) == 0;
}

static mpq_class qpow(const mpq_class& q0, int e) {
    mpq_class r = 1;
    mpq_class b = e < 0 ? mpq_class(1 / q0) : q0;
    for (int k = 0; k < std::abs(e); ++k) r *= b;
    return r;
}

GaussQ Scalar::eval(const mpq_class& q0) const {
    if (q0 <= 0) throw std::domain_error("evaluation requires q > 0");
    mpq_class d = den_.eval(q0);
    if (d == 0) throw std::domain_error("pole at q = " + q0.get_str());
    mpq_class f = qpow(q0, shift_) / d;
    return {re_.eval(q0) * f, im_.eval(q0) * f};
}

Scalar Scalar::invert_q() const {
    // p(1/q) = q^-deg * reversed(p)
    auto rev = [](const QPoly& p, int deg) {
        std::vector<mpq_class> c(deg + 1, mpq_class(0));
        for (int k = 0; k <= p.degree(); ++k) c[deg - k] = p.coeff(k);
        return QPoly(c);
    };
    int dn = std::max(re_.degree(), im_.degree());
    if (dn < 0) return Scalar();
    int dd = den_.degree();
    return Scalar(rev(re_, dn), rev(im_, dn), rev(den_, dd), -shift_ - dn + dd);
}

static std::string poly_terms(const QPoly& re, const QPoly& im, int shift) {
    std::string s;
    int top = std::max(re.degree(), im.degree());
    for (int k = 0; k <= top; ++k) {
        mpq_class a = re.coeff(k), b = im.coeff(k);
        if (a == 0 && b == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + gauss_text(a, b) + ")*q^" + std::to_string(k + shift);
    }
    return s.empty() ? "0" : s;
}

std::string Scalar::str() const {
    std::string num = poly_terms(re_, im_, shift_);
    if (den_.degree() == 0) return num;
    return "(" + num + ")/(" + poly_terms(den_, QPoly(), 0) + ")";
}

namespace {

struct Parser {
    const std::string& t;
    size_t p = 0;

    [[noreturn]] void fail() const {
        throw std::invalid_argument("malformed scalar text at offset " + std::to_string(p) + ": " + t);
    }
    void expect(const std::string& lit) {
        if (t.compare(p, lit.size(), lit) != 0) fail();
        p += lit.size();
    }
    bool peek(const std::string& lit) const { return t.compare(p, lit.size(), lit) == 0; }
    mpq_class rational() {
        size_t s = p;
        if (p < t.size() && t[p] == '+') s = ++p;
        else if (p < t.size() && t[p] == '-') ++p;
        while (p < t.size() && (std::isdigit(static_cast<unsigned char>(t[p])) || t[p] == '/')) ++p;
        if (p == s) fail();
        mpq_class v;
        if (v.set_str(t.substr(s, p - s), 10) != 0) fail();
        v.canonicalize();
        return v;
    }
    long integer() {
        size_t s = p;
        if (p < t.size() && t[p] == '-') ++p;
        while (p < t.size() && std::isdigit(static_cast<unsigned char>(t[p]))) ++p;
        if (p == s) fail();
        return std::stol(t.substr(s, p - s));
    }
    Scalar laurent_sum() {
        if (peek("0") && (p + 1 == t.size() || t[p + 1] == ')')) {
            ++p;
            return Scalar();
        }
        Scalar acc;
        while (true) {
            expect("(");
            mpq_class a = rational();
            mpq_class b = rational();
            expect("*i)*q^");
            long e = integer();
            acc += Scalar(GaussQ{a, b}) * Scalar::q_pow(static_cast<int>(e));
            if (!peek(" + ")) break;
            p += 3;
        }
        return acc;
    }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    Parser ps{text};
    Scalar v;
    if (text.find(")/(") != std::string::npos) {
        ps.expect("(");
        Scalar n = ps.laurent_sum();
        ps.expect(")/(");
        Scalar d = ps.laurent_sum();
        ps.expect(")");
        if (d.is_zero()) ps.fail();
        v = n / d;
    } else {
        v = ps.laurent_sum();
    }
    if (ps.p != text.size()) ps.fail();
    return v;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar conjugate(const Scalar& s) { return s.conj(); }

Scalar quantum_integer(int k, int step) {
    if (k <= 0) throw std::invalid_argument("quantum_integer requires k >= 1");
    Scalar s;
    for (int j = 0; j < k; ++j) s += Scalar::q_pow(step * j);
    return s;
}

Scalar sym_qint(int x) {
    if (x == 0) return Scalar();
    if (x < 0) return -sym_qint(-x);
    return quantum_integer(x, 2) * Scalar::q_pow(1 - x);
}

}  // namespace qflag
