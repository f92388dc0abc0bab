#pragma once

/// @file mat.hpp
/// @brief Small dense matrices and equal-extent tensors over any scalar level.

#include <algorithm>
#include <cmath>
#include <vector>

#include "kahler/dual.hpp"
#include "kahler/errors.hpp"

namespace kahler {

template <class T>
using Vec = std::vector<T>;

/// Row-major square or rectangular matrix.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r * c), T(0.0)) {}
    explicit Mat(int n) : Mat(n, n) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }
};

/// Rank-k array with every extent equal to n, flat row-major.
template <class T>
struct Tensor {
    int n = 0, rank = 0;
    std::vector<T> a;

    Tensor() = default;
    Tensor(int n_, int rank_) : n(n_), rank(rank_) {
        size_t sz = 1;
        for (int i = 0; i < rank_; ++i) sz *= static_cast<size_t>(n_);
        a.assign(sz, T(0.0));
    }

    T& operator()(int i, int j, int k) { return a[static_cast<size_t>((i * n + j) * n + k)]; }
    const T& operator()(int i, int j, int k) const { return a[static_cast<size_t>((i * n + j) * n + k)]; }
    T& operator()(int i, int j, int k, int l) { return a[static_cast<size_t>(((i * n + j) * n + k) * n + l)]; }
    const T& operator()(int i, int j, int k, int l) const {
        return a[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
    }
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& xik = x(i, k);
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}
template <class T>
Mat<T> operator+(Mat<T> x, const Mat<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}
template <class T>
Mat<T> operator-(Mat<T> x, const Mat<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}
template <class T, class C>
Mat<T> scaled(const C& c, Mat<T> x) {
    for (auto& e : x.a) e = c * e;
    return x;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

template <class T>
Vec<T> operator*(const Mat<T>& x, const Vec<T>& v) {
    Vec<T> r(static_cast<size_t>(x.rows), T(0.0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[static_cast<size_t>(i)] += x(i, j) * v[static_cast<size_t>(j)];
    return r;
}

/// Largest |entry| by value.
template <class T>
double max_abs(const std::vector<T>& a) {
    double m = 0.0;
    for (const auto& e : a) m = std::max(m, std::abs(value(e)));
    return m;
}
template <class T>
double max_abs(const Mat<T>& x) { return max_abs(x.a); }
template <class T>
double max_abs(const Tensor<T>& x) { return max_abs(x.a); }
inline double max_abs(double x) { return std::abs(x); }
template <class T>
double max_abs(const Dual<T>& x) { return std::abs(value(x)); }

/// Inverse by Gauss-Jordan with partial pivoting on the value part.
/// Throws SingularMetric when the smallest pivot ratio falls below 1e-13.
template <class T>
Mat<T> inverse(Mat<T> x) {
    const int n = x.rows;
    Mat<T> inv = Mat<T>::identity(n);
    const double scale = std::max(max_abs(x), 1e-300);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(value(x(r, c))) > std::abs(value(x(piv, c)))) piv = r;
        if (std::abs(value(x(piv, c))) < 1e-13 * scale) throw SingularMetric("matrix is numerically singular");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(x(piv, j), x(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        T p = x(c, c);
        for (int j = 0; j < n; ++j) {
            x(c, j) = x(c, j) / p;
            inv(c, j) = inv(c, j) / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            T f = x(r, c);
            for (int j = 0; j < n; ++j) {
                x(r, j) -= f * x(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Determinant by elimination with partial pivoting on the value part.
template <class T>
T det(Mat<T> x) {
    const int n = x.rows;
    T d = T(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(value(x(r, c))) > std::abs(value(x(piv, c)))) piv = r;
        if (value(x(piv, c)) == 0.0) return T(0.0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(x(piv, j), x(c, j));
            d = -d;
        }
        d = d * x(c, c);
        for (int r = c + 1; r < n; ++r) {
            T f = x(r, c) / x(c, c);
            for (int j = c; j < n; ++j) x(r, j) -= f * x(c, j);
        }
    }
    return d;
}

/// Lower-triangular L with x = L Lᵀ. Throws SingularMetric if x is not positive definite.
template <class T>
Mat<T> cholesky(const Mat<T>& x) {
    using std::sqrt;
    const int n = x.rows;
    Mat<T> L(n);
    for (int j = 0; j < n; ++j) {
        T s = x(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (!(value(s) > 0.0)) throw SingularMetric("metric is not positive definite");
        L(j, j) = sqrt(s);
        for (int i = j + 1; i < n; ++i) {
            T t = x(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    return L;
}

}  // namespace kahler
