#pragma once

/// @file symfunc.hpp
/// @brief Elementary and complete symmetric functions, the Vandermonde pair
/// (V, W) and exact checks of the Vandermonde identities.
///
/// Indices r, p are mathematical (σ_0 = 1). Variable indices j are 0-based.

#include <gmpxx.h>

#include <vector>

#include "kahler/errors.hpp"
#include "kahler/report.hpp"

namespace kahler {

/// σ_r(xs); zero for r < 0 or r > size.
template <class T>
T elem_sym(const std::vector<T>& xs, int r) {
    if (r < 0 || r > static_cast<int>(xs.size())) return T(0);
    std::vector<T> e(static_cast<size_t>(r) + 1, T(0));
    e[0] = T(1);
    for (const auto& x : xs)
        for (int k = r; k >= 1; --k) e[static_cast<size_t>(k)] = e[static_cast<size_t>(k)] + x * e[static_cast<size_t>(k - 1)];
    return e[static_cast<size_t>(r)];
}

/// σ_r of xs with entry j removed.
template <class T>
T elem_sym_hat(const std::vector<T>& xs, int r, size_t j) {
    std::vector<T> rest;
    rest.reserve(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
        if (i != j) rest.push_back(xs[i]);
    return elem_sym(rest, r);
}

/// h_p(xs), the sum of all degree-p monomials; zero for p < 0.
template <class T>
T complete_sym(const std::vector<T>& xs, int p) {
    if (p < 0) return T(0);
    std::vector<T> h(static_cast<size_t>(p) + 1, T(0));
    h[0] = T(1);
    for (const auto& x : xs)
        for (int k = 1; k <= p; ++k) h[static_cast<size_t>(k)] = h[static_cast<size_t>(k)] + x * h[static_cast<size_t>(k - 1)];
    return h[static_cast<size_t>(p)];
}

/// Δ_j = ∏_{k≠j} (x_j − x_k).
template <class T>
T vandermonde_delta(const std::vector<T>& xs, size_t j) {
    T d = T(1);
    for (size_t k = 0; k < xs.size(); ++k)
        if (k != j) d = d * (xs[j] - xs[k]);
    return d;
}

template <class T>
T ipow(const T& x, int n) {
    T r = T(1);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

using QMatrix = std::vector<std::vector<mpq_class>>;

struct VandermondePair {
    QMatrix V;  ///< V[r-1][j] = (−1)^{r−1} ξ_j^{m−r}
    QMatrix W;  ///< W[j][r-1] = σ_{r−1}(ξ̂_j) / Δ_j
};

/// Throws Error if the entries are not pairwise distinct.
void require_distinct(const std::vector<mpq_class>& xs);

VandermondePair vandermonde(const std::vector<mpq_class>& xs);

/// Exact determinant by rational row reduction.
mpq_class exact_det(QMatrix a);

struct IdentityOptions {
    /// Test hook: negates W[0][0] so the suite must report a witness.
    bool corrupt_w = false;
};

/// Checks every Vandermonde identity exactly for k, p in [0, max_k].
/// Throws IdentityViolation naming the identity and its (r, s, k, i) tuple.
CheckReport identity_suite(const std::vector<mpq_class>& xs, int max_k,
                           const IdentityOptions& opts = {});

}  // namespace kahler
