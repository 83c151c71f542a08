#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qflag {

/// Dense univariate polynomial over Q, coefficients in ascending order.
/// The zero polynomial has an empty coefficient vector.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const mpq_class& c);
    explicit QPoly(std::vector<mpq_class> coeffs);

    static QPoly monomial(const mpq_class& c, int deg);
    static QPoly x() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpq_class& lc() const { return c_.back(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int i) const;

    /// multiplicity of the root 0
    int valuation() const;
    QPoly shift_down(int k) const;
    QPoly shift_up(int k) const;

    QPoly operator-() const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const mpq_class& s);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(QPoly a, const mpq_class& s) { return a *= s; }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    static void divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem);
    friend QPoly operator/(const QPoly& a, const QPoly& b);
    friend QPoly operator%(const QPoly& a, const QPoly& b);

    QPoly monic() const;
    QPoly derivative() const;
    mpq_class eval(const mpq_class& x) const;

    /// primitive integer polynomial with positive leading coefficient
    std::vector<mpz_class> integer_primitive() const;

    std::string str(const char* var = "q") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

/// monic gcd; gcd(0,0) = 0
QPoly gcd(const QPoly& a, const QPoly& b);

}  // namespace qflag
