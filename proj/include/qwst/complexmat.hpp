#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qwst {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense row-major complex matrix. Sized for the desk-scale problems here
/// (n up to a few hundred); plain loops, deterministic evaluation order.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    CMatrix operator*(const CMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("CMatrix multiply: shape mismatch");
        CMatrix m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const cplx v = (*this)(i, k);
                if (v == cplx{}) continue;
                for (int j = 0; j < o.cols_; ++j) m(i, j) += v * o(k, j);
            }
        return m;
    }

    CVector operator*(const CVector& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("CMatrix apply: size mismatch");
        CVector y(rows_);
        for (int i = 0; i < rows_; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    CMatrix operator+(const CMatrix& o) const {
        check_same_shape(o);
        CMatrix m(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }
    CMatrix operator-(const CMatrix& o) const {
        check_same_shape(o);
        CMatrix m(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }
    CMatrix operator*(cplx s) const {
        CMatrix m(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const auto& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

    CVector column(int j) const {
        CVector c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool is_hermitian(double tol = 1e-12) const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

private:
    void check_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMatrix: shape mismatch");
    }
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline cplx inner(const CVector& x, const CVector& y) {
    // <x, y> = sum conj(x_i) y_i
    if (x.size() != y.size()) throw std::invalid_argument("inner: size mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm2(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

inline double distance(const CVector& x, const CVector& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

}  // namespace qwst
