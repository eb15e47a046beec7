#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qwst {

inline long long isqrt_ll(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    if (n == 0) return 0;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = isqrt_ll(n);
    return r * r == n;
}

/// Largest square-free divisor d of n with n/d a perfect square.
/// Trial division up to sqrt(n).
inline long long squarefree_part(long long n) {
    if (n < 1) throw std::invalid_argument("squarefree_part: n must be >= 1");
    long long sf = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e & 1) sf *= p;
    }
    return sf * n;  // remaining n is 1 or a prime with exponent 1
}

}  // namespace qwst
