#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace qwst {

/// Exact rational number with 64-bit numerator/denominator, always reduced,
/// denominator > 0. Arithmetic is only needed on small values (eigenvalue
/// fractions, angle multiples of pi), so no overflow machinery beyond asserts.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(num * o.den, den * o.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Best rational approximation of x by continued fractions, denominator <= max_den.
/// Returns the convergent only if it is within `tol` of x AND passes the quality
/// gate |x - p/q| <= 5e-3 / q^2. The gate rejects the accidental snaps that plain
/// tolerance matching would accept for almost every irrational (a quadratic surd
/// sqrt(s)/d obeys |x - p/q| >= 1/(2 x d^2 q^2), which the gate filters out for
/// the denominators that occur here, while exact fractions measured to ~1e-13
/// pass at any denominator up to the cap).
inline std::optional<Rational> snap_rational(double x, double tol = 1e-9,
                                             long long max_den = 1000000) {
    if (!std::isfinite(x)) return std::nullopt;
    const double sign = x < 0 ? -1.0 : 1.0;
    double y = std::fabs(x);
    long long p_prev = 1, q_prev = 0;
    long long p = static_cast<long long>(std::floor(y)), q = 1;
    double frac = y - std::floor(y);
    for (int it = 0; it < 64; ++it) {
        double err = std::fabs(y - static_cast<double>(p) / static_cast<double>(q));
        if (err <= tol && err <= 5e-3 / (static_cast<double>(q) * static_cast<double>(q))) {
            Rational r(p, q);
            r.num *= static_cast<long long>(sign);
            r.reduce();
            return r;
        }
        if (frac < 1e-15) break;
        double inv = 1.0 / frac;
        long long a = static_cast<long long>(std::floor(inv));
        frac = inv - std::floor(inv);
        long long p_next = a * p + p_prev;
        long long q_next = a * q + q_prev;
        if (q_next > max_den || q_next < q) break;
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
    }
    return std::nullopt;
}

inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

}  // namespace qwst
