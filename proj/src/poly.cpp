#include "qflag/poly.hpp"

#include <stdexcept>

namespace qflag {

QPoly::QPoly(const mpq_class& c) {
    if (c != 0) {
        c_.push_back(c);
        c_.back().canonicalize();
    }
}

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

QPoly QPoly::monomial(const mpq_class& c, int deg) {
    QPoly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, mpq_class(0));
    p.c_[deg] = c;
    p.c_[deg].canonicalize();
    return p;
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class QPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

int QPoly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

QPoly QPoly::shift_down(int k) const {
    QPoly p;
    if (k >= static_cast<int>(c_.size())) return p;
    p.c_.assign(c_.begin() + k, c_.end());
    return p;
}

QPoly QPoly::shift_up(int k) const {
    QPoly p;
    if (is_zero()) return p;
    p.c_.assign(k, mpq_class(0));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

QPoly QPoly::operator-() const {
    QPoly p = *this;
    for (auto& v : p.c_) v = -v;
    return p;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const mpq_class& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
    }
    p.trim();
    return p;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    quo = QPoly();
    rem = a;
    if (a.degree() < b.degree()) return;
    quo.c_.assign(a.degree() - b.degree() + 1, mpq_class(0));
    const mpq_class inv = 1 / b.lc();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int d = rem.degree() - b.degree();
        mpq_class f = rem.lc() * inv;
        quo.c_[d] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c_[i + d] -= f * b.c_[i];
        rem.c_.back() = 0;
        rem.trim();
    }
    quo.trim();
}

QPoly operator/(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    QPoly::divmod(a, b, q, r);
    return q;
}

QPoly operator%(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    QPoly::divmod(a, b, q, r);
    return r;
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * mpq_class(1 / lc());
}

QPoly QPoly::derivative() const {
    QPoly p;
    if (c_.size() <= 1) return p;
    p.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) p.c_[i - 1] = c_[i] * static_cast<long>(i);
    p.trim();
    return p;
}

mpq_class QPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::vector<mpz_class> QPoly::integer_primitive() const {
    std::vector<mpz_class> out;
    if (is_zero()) return out;
    mpz_class l = 1;
    for (auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    out.reserve(c_.size());
    mpz_class g = 0;
    for (auto& v : c_) {
        mpz_class z = v.get_num() * (l / v.get_den());
        out.push_back(z);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    if (out.back() < 0) g = -g;
    for (auto& z : out) z /= g;
    return out;
}

std::string QPoly::str(const char* var) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += c_[i] < 0 ? " - " : " + ";
        else if (c_[i] < 0) s += "-";
        mpq_class a = abs(c_[i]);
        if (i == 0 || a != 1) s += a.get_str();
        if (i > 0) {
            if (a != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

}  // namespace qflag
