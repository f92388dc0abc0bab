#pragma once

// Random spectrum skeletons and admissible F for property tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gen.hpp"
#include "kahler/ansatz.hpp"

namespace testgen {

/// m, ℓ with disjoint ξ-intervals in [-2, 2], constant roots in the gaps and
/// per-domain F of the sign the ansatz requires.
inline kahler::SpectrumSpec random_spectrum(std::mt19937_64& rng, int m, int ell) {
    using namespace kahler;
    SpectrumSpec s;
    s.m = m;
    s.ell = ell;
    // Split [-2, 2] into ell + (#roots) slots; domains and roots alternate.
    const int extra = m - ell;
    std::vector<int> mults;
    for (int left = extra; left > 0;) {
        const int k = std::min(left, 1 + static_cast<int>(rng() % 2));
        mults.push_back(k);
        left -= k;
    }
    const int slots = ell + static_cast<int>(mults.size());
    const double w = 4.0 / slots;
    std::vector<int> kinds(static_cast<size_t>(slots), 0);  // 0 domain, 1 root
    for (size_t i = 0; i < mults.size(); ++i) kinds[static_cast<size_t>(ell) + i] = 1;
    std::shuffle(kinds.begin(), kinds.end(), rng);
    size_t r = 0;
    for (int i = 0; i < slots; ++i) {
        const double a = -2.0 + i * w;
        if (kinds[static_cast<size_t>(i)] == 0) {
            const double lo = a + uniform(rng, 0.1, 0.25) * w, hi = a + uniform(rng, 0.75, 0.9) * w;
            s.domains.push_back({lo, hi});
        } else {
            ConstantRootSpec c;
            c.value = a + 0.5 * w;
            c.mult = mults[r++];
            const double k = uniform(rng, -0.4, 0.4);
            c.factor = space_form_factor(c.mult, std::abs(k) < 0.05 ? 0.0 : k, uniform(rng, 0.5, 2.0));
            s.roots.push_back(c);
        }
    }
    const RPoly pc = p_c_of(s);
    for (int j = 0; j < ell; ++j) {
        const auto& d = s.domains[static_cast<size_t>(j)];
        const double mid = d.mid(), half = 0.5 * (d.hi - d.lo);
        double sign = pc(mid);
        for (int k = 0; k < ell; ++k)
            if (k != j) sign *= mid - s.domains[static_cast<size_t>(k)].mid();
        sign = sign > 0 ? 1.0 : -1.0;
        const double c0 = uniform(rng, 0.5, 1.5), c1 = uniform(rng, 0.0, 1.0);
        const double c3 = uniform(rng, -0.4, 0.4) * c0 / (half * half * half);
        // sign·(c0 + c1 (t − mid)² + c3 (t − mid)³), positive on the domain.
        RPoly u({1.0, -mid});
        RPoly F = RPoly::constant(c0) + c1 * (u * u) + c3 * (u * u * u);
        s.F.push_back(sign * F);
    }
    return s;
}

}  // namespace testgen
