#pragma once

#include "qflag/poly.hpp"

#include <algorithm>
#include <iosfwd>
#include <string>

namespace qflag {

struct GaussQ {
    mpq_class re = 0;
    mpq_class im = 0;

    GaussQ() = default;
    GaussQ(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
    GaussQ(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {  // NOLINT
        re.canonicalize();
        im.canonicalize();
    }

    bool is_zero() const { return re == 0 && im == 0; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussQ conj() const { return {re, -im}; }
    GaussQ inverse() const;
    std::string str() const;
};

/// Element of Q(i)(q), stored as q^shift * (re + i*im) / den with re, im, den in Q[q].
/// Canonical form: den monic with den(0) != 0, q does not divide both re and im,
/// and gcd(re, im, den) = 1. Two equal scalars have identical fields.
class Scalar {
public:
    Scalar() : den_(mpq_class(1)) {}
    Scalar(long v);  // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& v);  // NOLINT(google-explicit-constructor)
    Scalar(const GaussQ& v);  // NOLINT(google-explicit-constructor)
    Scalar(QPoly re, QPoly im, QPoly den, int shift = 0);

    static Scalar q_pow(int n);
    static Scalar q() { return q_pow(1); }
    static Scalar i();
    /// Laurent polynomial sum_k coeffs[k] q^(lowest + k)
    static Scalar laurent(const std::vector<mpq_class>& coeffs, int lowest);

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_laurent() const { return den_.degree() == 0; }
    bool is_one() const;

    const QPoly& re() const { return re_; }
    const QPoly& im() const { return im_; }
    const QPoly& den() const { return den_; }
    int shift() const { return shift_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.shift_ == b.shift_ && a.re_ == b.re_ && a.im_ == b.im_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const;
    Scalar conj() const;
    Scalar pow(int e) const;

    /// true if q0 is a root of the denominator
    bool has_pole_at(const mpq_class& q0) const;
    /// exact value at q0 > 0; throws std::domain_error at a pole
    GaussQ eval(const mpq_class& q0) const;
    /// value with q replaced by 1/q
    Scalar invert_q() const;

    std::string str() const;
    static Scalar parse(const std::string& text);

private:
    void canonicalize();

    int shift_ = 0;
    QPoly re_, im_, den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar conjugate(const Scalar& s);

/// sum_{j=0}^{k-1} q^(step*j); k >= 1
Scalar quantum_integer(int k, int step);

/// symmetric quantum integer (q^x - q^-x)/(q - q^-1), any integer x
Scalar sym_qint(int x);

}  // namespace qflag

namespace qflag {

inline GaussQ operator/(const GaussQ& a, const GaussQ& b) { return a * b.inverse(); }
inline GaussQ operator-(const GaussQ& a) { return {-a.re, -a.im}; }

/// rough size used to pick cheap elimination pivots
inline size_t pivot_cost(const Scalar& s) {
    return static_cast<size_t>(std::max(s.re().degree(), s.im().degree()) + 1 + 2 * s.den().degree());
}
inline size_t pivot_cost(const GaussQ&) { return 0; }
inline GaussQ conj_of(const GaussQ& g) { return g.conj(); }
inline Scalar conj_of(const Scalar& s) { return s.conj(); }

}  // namespace qflag
