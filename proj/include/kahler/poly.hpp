#pragma once

/// @file poly.hpp
/// @brief Univariate polynomials over exact rationals or doubles.
///
/// Coefficients are stored degree-descending. The zero polynomial has no
/// coefficients and reports degree -1.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "kahler/errors.hpp"

namespace kahler {

enum class ScalarMode { exact, floating };

template <class S>
class Poly {
public:
    using scalar_type = S;

    Poly() = default;
    explicit Poly(std::vector<S> coeffs_desc) : c_(std::move(coeffs_desc)) { normalize(); }
    /// Constant polynomial.
    explicit Poly(const S& c) : c_{c} { normalize(); }

    static Poly constant(const S& c) { return Poly(std::vector<S>{c}); }
    static Poly monomial(const S& c, int deg) {
        std::vector<S> v(static_cast<size_t>(deg) + 1, S(0));
        v[0] = c;
        return Poly(std::move(v));
    }
    /// The polynomial t.
    static Poly identity() { return Poly(std::vector<S>{S(1), S(0)}); }

    static constexpr ScalarMode mode() {
        return std::is_same_v<S, double> ? ScalarMode::floating : ScalarMode::exact;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    S leading() const { return c_.empty() ? S(0) : c_.front(); }

    /// Coefficient of t^k (zero outside the stored range).
    S coeff(int k) const {
        int d = degree();
        if (k < 0 || k > d) return S(0);
        return c_[static_cast<size_t>(d - k)];
    }

    /// Horner evaluation; T may be S, double or a derivative-carrying scalar.
    template <class T>
    T operator()(const T& t) const {
        T r = T(0);
        for (const auto& a : c_) r = r * t + T(a);
        return r;
    }

    Poly derivative() const {
        int d = degree();
        if (d <= 0) return Poly();
        std::vector<S> v;
        v.reserve(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) v.push_back(c_[static_cast<size_t>(i)] * S(d - i));
        return Poly(std::move(v));
    }

    /// Antiderivative with the given constant term.
    Poly antiderivative(const S& c0 = S(0)) const {
        int d = degree();
        std::vector<S> v;
        v.reserve(static_cast<size_t>(d) + 2);
        for (int i = 0; i <= d; ++i) v.push_back(c_[static_cast<size_t>(i)] / S(d + 1 - i));
        v.push_back(c0);
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, S(1)); }
    friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, S(-1)); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<S> v(a.c_.size() + b.c_.size() - 1, S(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const S& s, const Poly& p) {
        std::vector<S> v = p.c_;
        for (auto& a : v) a *= s;
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    static Poly combine(const Poly& a, const Poly& b, const S& sb) {
        size_t n = std::max(a.c_.size(), b.c_.size());
        std::vector<S> v(n, S(0));
        for (size_t i = 0; i < a.c_.size(); ++i) v[n - a.c_.size() + i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) v[n - b.c_.size() + i] += sb * b.c_[i];
        return Poly(std::move(v));
    }

    void normalize() {
        size_t k = 0;
        while (k < c_.size() && c_[k] == S(0)) ++k;
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
    }

    std::vector<S> c_;
};

using QPoly = Poly<mpq_class>;
using RPoly = Poly<double>;

/// Expands prod (t - roots[i])^mults[i]. Empty input gives the constant 1.
template <class S>
Poly<S> from_roots(const std::vector<S>& roots, const std::vector<int>& mults) {
    if (roots.size() != mults.size()) throw Error("from_roots: roots and multiplicities differ in length");
    Poly<S> p = Poly<S>::constant(S(1));
    for (size_t i = 0; i < roots.size(); ++i) {
        if (mults[i] <= 0) throw Error("from_roots: multiplicity must be positive");
        Poly<S> lin(std::vector<S>{S(1), S(-roots[i])});
        for (int k = 0; k < mults[i]; ++k) p = p * lin;
    }
    return p;
}

/// [p(t), p'(t), ..., p^(order)(t)].
template <class S, class T>
std::vector<T> eval_and_derivatives(const Poly<S>& p, const T& t, int order) {
    std::vector<T> out;
    Poly<S> q = p;
    for (int k = 0; k <= order; ++k) {
        out.push_back(q(t));
        q = q.derivative();
    }
    return out;
}

/// Quotient and remainder of polynomial long division.
template <class S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& a, const Poly<S>& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    std::vector<S> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Poly<S>(), a};
    std::vector<S> q(static_cast<size_t>(da - db + 1), S(0));
    for (int i = 0; i <= da - db; ++i) {
        S f = r[static_cast<size_t>(i)] / b.leading();
        q[static_cast<size_t>(i)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
    }
    std::vector<S> rem(r.begin() + (da - db + 1), r.end());
    return {Poly<S>(std::move(q)), Poly<S>(std::move(rem))};
}

QPoly divide_exact(const QPoly& a, const QPoly& b);
/// Float mode: throws when the remainder exceeds 1e-12 of the largest coefficient of a.
RPoly divide_exact(const RPoly& a, const RPoly& b);

RPoly to_float(const QPoly& p);

nlohmann::json to_json(const QPoly& p);
nlohmann::json to_json(const RPoly& p);
RPoly rpoly_from_json(const nlohmann::json& j);
QPoly qpoly_from_json(const nlohmann::json& j);

}  // namespace kahler
