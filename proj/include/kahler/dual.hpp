#pragma once

/// @file dual.hpp
/// @brief Single-direction forward-mode dual numbers, nestable for higher derivatives.
///
/// Dual<T>{v, d} represents v + d·ε with ε² = 0. Nesting Dual<Dual<double>>
/// carries mixed second derivatives, one seeded direction per level.

#include <cmath>
#include <type_traits>

namespace kahler {

template <class T>
struct Dual {
    T v{};
    T d{};

    Dual() = default;
    template <class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
    Dual(A c) : v(static_cast<double>(c)), d(0.0) {}
    Dual(const T& value) : v(value), d(0.0) {}
    Dual(const T& value, const T& tangent) : v(value), d(tangent) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

    friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }

    friend Dual operator+(const Dual& a, double c) { return {a.v + c, a.d}; }
    friend Dual operator+(double c, const Dual& a) { return {a.v + c, a.d}; }
    friend Dual operator-(const Dual& a, double c) { return {a.v - c, a.d}; }
    friend Dual operator-(double c, const Dual& a) { return {c - a.v, -a.d}; }
    friend Dual operator*(const Dual& a, double c) { return {a.v * c, a.d * c}; }
    friend Dual operator*(double c, const Dual& a) { return {a.v * c, a.d * c}; }
    friend Dual operator/(const Dual& a, double c) { return {a.v / c, a.d / c}; }
    friend Dual operator/(double c, const Dual& a) {
        T q = c / a.v;
        return {q, -q * a.d / a.v};
    }
};

using D0 = double;
using D1 = Dual<D0>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

template <class T>
bool operator<(const Dual<T>& a, const Dual<T>& b) { return value(a) < value(b); }
template <class T>
bool operator>(const Dual<T>& a, const Dual<T>& b) { return value(a) > value(b); }
template <class T>
bool operator<(const Dual<T>& a, double b) { return value(a) < b; }
template <class T>
bool operator>(const Dual<T>& a, double b) { return value(a) > b; }

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    T s = sqrt(x.v);
    return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    T e = exp(x.v);
    return {e, e * x.d};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
    using std::log;
    return {log(x.v), x.d / x.v};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {sin(x.v), cos(x.v) * x.d};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {cos(x.v), -sin(x.v) * x.d};
}
/// |x| with the derivative of the branch selected by the value.
template <class T>
Dual<T> abs(const Dual<T>& x) { return value(x) < 0.0 ? -x : x; }

/// Integer power by repeated squaring; works for double and any Dual level.
template <class T>
T ipow_s(const T& x, int n) {
    if (n < 0) return T(1.0) / ipow_s(x, -n);
    T r = T(1.0), b = x;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

/// Seeds a variable with unit tangent.
template <class T>
Dual<T> seed(const T& x) { return {x, T(1.0)}; }

}  // namespace kahler
