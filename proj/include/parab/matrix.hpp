#pragma once

#include <functional>
#include <string>
#include <vector>

#include "parab/field.hpp"
#include "parab/ratfn.hpp"

namespace parab {

// Dense matrix over Fq or RatFn. Row-major.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int r, int c, const T& fill) : r_(r), c_(c), a_(size_t(r) * c, fill), proto_(fill) {}

    static Matrix identity(int n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }
    static Matrix diag(const std::vector<T>& d, const T& zero) {
        Matrix m(int(d.size()), int(d.size()), zero);
        for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    Matrix operator+(const Matrix& o) const {
        check_same(o);
        Matrix m = *this;
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        check_same(o);
        Matrix m = *this;
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& v : m.a_) v = -v;
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw ArithmeticError("matrix shape mismatch in product");
        Matrix m(r_, o.c_, zero_like());
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const T& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.c_; ++j) {
                    const T& y = o(k, j);
                    if (!y.is_zero()) m(i, j) = m(i, j) + x * y;
                }
            }
        return m;
    }
    template <class S>
    Matrix scaled(const S& s) const {
        Matrix m = *this;
        for (auto& v : m.a_) v = v * s;
        return m;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }
    Matrix transpose() const {
        Matrix m(c_, r_, zero_like());
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Matrix map(const std::function<T(const T&)>& fn) const {
        Matrix m = *this;
        for (auto& v : m.a_) v = fn(v);
        return m;
    }
    // Kronecker product, index (i*o.r + k, j*o.c + l)
    Matrix kron(const Matrix& o) const {
        Matrix m(r_ * o.r_, c_ * o.c_, zero_like());
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                for (int k = 0; k < o.r_; ++k)
                    for (int l = 0; l < o.c_; ++l) m(i * o.r_ + k, j * o.c_ + l) = (*this)(i, j) * o(k, l);
        return m;
    }

    T det() const {
        if (r_ != c_) throw ArithmeticError("det of non-square matrix");
        Matrix m = *this;
        T d = one_like();
        for (int col = 0; col < r_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (!m(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) return zero_like();
            if (piv != col) {
                for (int j = 0; j < c_; ++j) std::swap(m(piv, j), m(col, j));
                d = -d;
            }
            d = d * m(col, col);
            T inv = one_like() / m(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (m(i, col).is_zero()) continue;
                T f = m(i, col) * inv;
                for (int j = col; j < c_; ++j) m(i, j) = m(i, j) - f * m(col, j);
            }
        }
        return d;
    }

    Matrix inverse() const {
        if (r_ != c_) throw ArithmeticError("inverse of non-square matrix");
        int n = r_;
        Matrix m = *this, inv = identity(n, zero_like(), one_like());
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (!m(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) throw ArithmeticError("singular matrix");
            if (piv != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(m(piv, j), m(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            T pinv = one_like() / m(col, col);
            for (int j = 0; j < n; ++j) {
                m(col, j) = m(col, j) * pinv;
                inv(col, j) = inv(col, j) * pinv;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col || m(i, col).is_zero()) continue;
                T f = m(i, col);
                for (int j = 0; j < n; ++j) {
                    m(i, j) = m(i, j) - f * m(col, j);
                    inv(i, j) = inv(i, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

    T zero_like() const { return zero_of(proto_); }
    T one_like() const { return one_of(proto_); }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? ", [" : "[";
            for (int j = 0; j < c_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    static Fq zero_of(const Fq& x) { return x.field().zero(); }
    static Fq one_of(const Fq& x) { return x.field().one(); }
    static RatFn zero_of(const RatFn& x) { return RatFn::zero(x.field()); }
    static RatFn one_of(const RatFn& x) { return RatFn::one(x.field()); }
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw ArithmeticError("matrix shape mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
    T proto_;
};

using FqMat = Matrix<Fq>;
using RMat = Matrix<RatFn>;

RMat rmat_zero(const Field& f, int r, int c);
RMat rmat_identity(const Field& f, int n);
RMat rmat_derivative(const RMat& m);
RMat rmat_subs_power(const RMat& m, int n);
FqMat fqmat_zero(const Field& f, int r, int c);
FqMat fqmat_identity(const Field& f, int n);

// Linear algebra over F_q on plain code vectors.
// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& f, std::vector<std::vector<u64>>& rows, int ncols);
// Basis of {v : A v = 0}.
std::vector<std::vector<u64>> nullspace(const Field& f, std::vector<std::vector<u64>> rows, int ncols);
int rank(const Field& f, std::vector<std::vector<u64>> rows, int ncols);
// One solution of A v = b or empty optional-like flag.
bool solve(const Field& f, std::vector<std::vector<u64>> rows, const std::vector<u64>& rhs, int ncols,
           std::vector<u64>& out);

FqMat to_fqmat(const Field& f, const std::vector<std::vector<u64>>& rows, int ncols);
std::vector<std::vector<u64>> from_fqmat(const FqMat& m);

}  // namespace parab
