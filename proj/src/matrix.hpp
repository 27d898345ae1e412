// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <cmath>
#include <vector>

namespace jetg {

/// Small dense square matrix over a field T. Row-major.
template <typename T>
class Mat {
public:
    Mat() = default;
    explicit Mat(int m) : m_(m), data_(static_cast<size_t>(m) * m, T(0)) {}
    static Mat identity(int m) {
        Mat out(m);
        for (int i = 0; i < m; ++i) out(i, i) = T(1);
        return out;
    }

    int size() const { return m_; }
    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * m_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * m_ + j]; }
    const std::vector<T>& flat() const { return data_; }
    std::vector<T>& flat() { return data_; }

    bool operator==(const Mat& other) const { return m_ == other.m_ && data_ == other.data_; }

    Mat operator+(const Mat& o) const {
        Mat out(*this);
        for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
        return out;
    }
    Mat operator-(const Mat& o) const {
        Mat out(*this);
        for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
        return out;
    }
    Mat operator-() const {
        Mat out(*this);
        for (auto& v : out.data_) v = -v;
        return out;
    }
    Mat operator*(const Mat& o) const {
        Mat out(m_);
        for (int i = 0; i < m_; ++i)
            for (int l = 0; l < m_; ++l) {
                const T& a = (*this)(i, l);
                if (a == T(0)) continue;
                for (int j = 0; j < m_; ++j) out(i, j) += a * o(l, j);
            }
        return out;
    }
    Mat scaled(const T& c) const {
        Mat out(*this);
        for (auto& v : out.data_) v *= c;
        return out;
    }
    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(m_, T(0));
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!(v == T(0))) return false;
        return true;
    }

    /// Commutator AB - BA.
    static Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

private:
    int m_ = 0;
    std::vector<T> data_;
};

/// Exact Gaussian elimination. Throws DomainError on a singular input.
template <typename T>
Mat<T> inverse(Mat<T> a) {
    const int m = a.size();
    Mat<T> inv = Mat<T>::identity(m);
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r)
            if (!(a(r, col) == T(0))) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw DomainError("singular matrix: no inverse");
        if (pivot != col)
            for (int j = 0; j < m; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const T d = a(col, col);
        for (int j = 0; j < m; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const T f = a(r, col);
            if (f == T(0)) continue;
            for (int j = 0; j < m; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <typename T>
T determinant(Mat<T> a) {
    const int m = a.size();
    T det(1);
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r)
            if (!(a(r, col) == T(0))) {
                pivot = r;
                break;
            }
        if (pivot < 0) return T(0);
        if (pivot != col) {
            for (int j = 0; j < m; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < m; ++r) {
            if (a(r, col) == T(0)) continue;
            const T f = a(r, col) / a(col, col);
            for (int j = col; j < m; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

template <typename T>
double frobenius_distance(const Mat<T>& a, const Mat<T>& b) {
    double s = 0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) {
            const double d = static_cast<double>(a(i, j)) - static_cast<double>(b(i, j));
            s += d * d;
        }
    return std::sqrt(s);
}

} // namespace jetg
