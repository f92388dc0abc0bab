#pragma once

// Hand-rolled generators for property tests.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace testgen {

inline mpq_class rational(std::mt19937_64& rng, long num_range = 20, long den_max = 9) {
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_max);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// m pairwise-distinct random rationals.
inline std::vector<mpq_class> distinct_rationals(std::mt19937_64& rng, int m) {
    std::vector<mpq_class> out;
    while (static_cast<int>(out.size()) < m) {
        mpq_class q = rational(rng);
        bool dup = false;
        for (const auto& x : out) dup = dup || (x == q);
        if (!dup) out.push_back(q);
    }
    return out;
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

}  // namespace testgen
