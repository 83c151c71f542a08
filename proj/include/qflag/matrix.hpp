#pragma once

#include "qflag/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace qflag {

/// Dense row-major matrix over an exact field (Scalar or GaussQ).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1L);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const {
        for (auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }
    bool is_square() const { return r_ == c_; }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Matrix conj() const {
        Matrix m = *this;
        for (auto& v : m.a_) v = conj_of(v);
        return m;
    }
    Matrix adjoint() const { return conj().transpose(); }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix m(x.r_, y.c_);
        for (size_t i = 0; i < x.r_; ++i)
            for (size_t k = 0; k < x.c_; ++k) {
                const T& v = x(i, k);
                if (v.is_zero()) continue;
                for (size_t j = 0; j < y.c_; ++j)
                    if (!y(k, j).is_zero()) m(i, j) = m(i, j) + v * y(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        check_same(x, y);
        for (size_t k = 0; k < x.a_.size(); ++k) x.a_[k] = x.a_[k] + y.a_[k];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        check_same(x, y);
        for (size_t k = 0; k < x.a_.size(); ++k) x.a_[k] = x.a_[k] - y.a_[k];
        return x;
    }
    friend Matrix operator*(const T& s, Matrix x) {
        for (auto& v : x.a_) v = s * v;
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

    /// reduced row echelon form in place; returns pivot columns
    std::vector<size_t> rref() {
        std::vector<size_t> piv;
        size_t row = 0;
        for (size_t col = 0; col < c_ && row < r_; ++col) {
            size_t best = r_;
            size_t cost = 0;
            for (size_t i = row; i < r_; ++i) {
                if ((*this)(i, col).is_zero()) continue;
                size_t cst = pivot_cost((*this)(i, col));
                if (best == r_ || cst < cost) {
                    best = i;
                    cost = cst;
                }
            }
            if (best == r_) continue;
            swap_rows(best, row);
            T inv = T(1L) / (*this)(row, col);
            for (size_t j = col; j < c_; ++j)
                if (!(*this)(row, j).is_zero()) (*this)(row, j) = (*this)(row, j) * inv;
            for (size_t i = 0; i < r_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) continue;
                T f = (*this)(i, col);
                for (size_t j = col; j < c_; ++j)
                    if (!(*this)(row, j).is_zero()) (*this)(i, j) = (*this)(i, j) - f * (*this)(row, j);
            }
            piv.push_back(col);
            ++row;
        }
        return piv;
    }

    size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /// columns form a basis of the right kernel
    Matrix nullspace() const {
        Matrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (auto p : piv) is_piv[p] = true;
        Matrix ns(c_, c_ - piv.size());
        size_t k = 0;
        for (size_t f = 0; f < c_; ++f) {
            if (is_piv[f]) continue;
            ns(f, k) = T(1L);
            for (size_t r = 0; r < piv.size(); ++r) ns(piv[r], k) = -m(r, f);
            ++k;
        }
        return ns;
    }

    T det() const {
        if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
        Matrix m = *this;
        T d(1L);
        for (size_t col = 0; col < c_; ++col) {
            size_t best = r_;
            size_t cost = 0;
            for (size_t i = col; i < r_; ++i) {
                if (m(i, col).is_zero()) continue;
                size_t cst = pivot_cost(m(i, col));
                if (best == r_ || cst < cost) {
                    best = i;
                    cost = cst;
                }
            }
            if (best == r_) return T();
            if (best != col) {
                m.swap_rows(best, col);
                d = -d;
            }
            d = d * m(col, col);
            T inv = T(1L) / m(col, col);
            for (size_t i = col + 1; i < r_; ++i) {
                if (m(i, col).is_zero()) continue;
                T f = m(i, col) * inv;
                for (size_t j = col; j < c_; ++j)
                    if (!m(col, j).is_zero()) m(i, j) = m(i, j) - f * m(col, j);
            }
        }
        return d;
    }

    /// throws std::domain_error when singular
    Matrix inverse() const {
        if (!is_square()) throw std::invalid_argument("inverse of a non-square matrix");
        Matrix aug(r_, 2 * c_);
        for (size_t i = 0; i < r_; ++i) {
            for (size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_ + i) = T(1L);
        }
        auto piv = aug.rref();
        if (piv.size() < r_ || piv.back() >= c_) throw std::domain_error("singular matrix");
        Matrix inv(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
        return inv;
    }

    /// leading principal minor of order k (1-based)
    T leading_minor(size_t k) const {
        Matrix m(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
        return m.det();
    }

    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < c_; ++k) std::swap(a_[i * c_ + k], a_[j * c_ + k]);
    }

    Matrix column(size_t j) const {
        Matrix m(r_, 1);
        for (size_t i = 0; i < r_; ++i) m(i, 0) = (*this)(i, j);
        return m;
    }

    static Matrix hcat(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ && x.c_ && y.c_) throw std::invalid_argument("hcat row mismatch");
        size_t r = x.c_ ? x.r_ : y.r_;
        Matrix m(r, x.c_ + y.c_);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < x.c_; ++j) m(i, j) = x(i, j);
            for (size_t j = 0; j < y.c_; ++j) m(i, x.c_ + j) = y(i, j);
        }
        return m;
    }

    static Matrix kron(const Matrix& x, const Matrix& y) {
        Matrix m(x.r_ * y.r_, x.c_ * y.c_);
        for (size_t i = 0; i < x.r_; ++i)
            for (size_t j = 0; j < x.c_; ++j) {
                if (x(i, j).is_zero()) continue;
                for (size_t k = 0; k < y.r_; ++k)
                    for (size_t l = 0; l < y.c_; ++l)
                        if (!y(k, l).is_zero()) m(i * y.r_ + k, j * y.c_ + l) = x(i, j) * y(k, l);
            }
        return m;
    }

private:
    static void check_same(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
    }

    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using SMatrix = Matrix<Scalar>;
using GMatrix = Matrix<GaussQ>;

/// exact evaluation at q0
GMatrix evaluate(const SMatrix& m, const mpq_class& q0);

}  // namespace qflag
