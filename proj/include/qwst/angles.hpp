#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwst/numtheory.hpp"
#include "qwst/rational.hpp"

namespace qwst {

/*
 * Symbolic classification of theta = arccos(lambda) for exact lambda.
 *
 * Everything here is integer/rational arithmetic; floating point never enters
 * an independence decision. An angle is either an exact rational multiple of
 * pi (lambda in {0, +-1, +-1/2}, or lambda^2 in {1/2, 3/4}), or a surd angle
 * tagged with the square-free part Delta of the numerator of
 * tan^2(theta) = (1 - lambda^2)/lambda^2 after clearing denominators:
 * tan(theta) is a rational multiple of sqrt(Delta). Distinct Delta classes
 * cannot mix in a rational relation with pi (Conway-Jones), and a surd angle
 * is never itself a rational multiple of pi unless its tangent lies in
 * {0, +-sqrt3, +-1/sqrt3, +-1}.
 */
struct SymbolicAngle {
    enum class Kind { Zero, Pi, HalfPi, RationalPi, Surd };
    Kind kind = Kind::Surd;

    std::optional<Rational> lambda;  // exact cos(theta) when rational
    Rational lambda_sq;              // exact cos^2(theta)
    bool negative = false;           // lambda < 0

    Rational pi_multiple;       // theta = pi_multiple * pi for the non-Surd kinds
    long long delta = 0;        // square-free tangent class, Surd only
    bool tangent_rational = false;  // delta == 1

    double value() const {
        if (kind != Kind::Surd) return pi_multiple.value() * M_PI;
        const double c = (negative ? -1.0 : 1.0) * std::sqrt(lambda_sq.value());
        return std::acos(c);
    }
};

/// Classify arccos(lambda) from lambda^2 (exact) and the sign of lambda.
/// Covers both rational eigenvalues and quadratic surds +-sqrt(p/q).
inline SymbolicAngle classify_angle_from_square(const Rational& lambda_sq, bool negative,
                                                std::optional<Rational> lambda = std::nullopt) {
    if (lambda_sq.num < 0 || Rational(1) < lambda_sq)
        throw std::invalid_argument("classify_angle: lambda^2 outside [0,1]");
    SymbolicAngle a;
    a.lambda = lambda;
    a.lambda_sq = lambda_sq;
    a.negative = negative;
    if (lambda_sq == Rational(1)) {
        a.kind = negative ? SymbolicAngle::Kind::Pi : SymbolicAngle::Kind::Zero;
        a.pi_multiple = negative ? Rational(1) : Rational(0);
        return a;
    }
    if (lambda_sq == Rational(0)) {
        a.kind = SymbolicAngle::Kind::HalfPi;
        a.pi_multiple = Rational(1, 2);
        return a;
    }
    // tan^2 = (1 - l^2)/l^2 in {3, 1, 1/3}  <=>  l^2 in {1/4, 1/2, 3/4}
    if (lambda_sq == Rational(1, 4)) {
        a.kind = SymbolicAngle::Kind::RationalPi;
        a.pi_multiple = negative ? Rational(2, 3) : Rational(1, 3);
        return a;
    }
    if (lambda_sq == Rational(1, 2)) {
        a.kind = SymbolicAngle::Kind::RationalPi;
        a.pi_multiple = negative ? Rational(3, 4) : Rational(1, 4);
        return a;
    }
    if (lambda_sq == Rational(3, 4)) {
        a.kind = SymbolicAngle::Kind::RationalPi;
        a.pi_multiple = negative ? Rational(5, 6) : Rational(1, 6);
        return a;
    }
    a.kind = SymbolicAngle::Kind::Surd;
    // lambda^2 = p/q with 0 < p < q: tan^2 = (q-p)/p, tan is a rational
    // multiple of sqrt((q-p) p)
    const long long p = lambda_sq.num, q = lambda_sq.den;
    a.delta = squarefree_part((q - p) * p);
    a.tangent_rational = (a.delta == 1);
    return a;
}

/// Classify arccos(lambda) for exact rational lambda in [-1, 1].
inline SymbolicAngle classify_angle(const Rational& lambda) {
    if (lambda < Rational(-1) || Rational(1) < lambda)
        throw std::invalid_argument("classify_angle: |lambda| > 1");
    return classify_angle_from_square(lambda * lambda, lambda.num < 0, lambda);
}

/*
 * Certificate that {pi, theta_1, ..., theta_k} are linearly independent over
 * the rationals, under sufficient conditions: every angle a surd
 * with pairwise distinct square-free classes and no tangent in
 * {0, +-sqrt3, +-1/sqrt3, +-1}. Rational tangents (Delta = 1) and exact
 * rational multiples of pi are reported, not certified; the transfer module
 * handles those through its reflection/parity machinery. The certificate
 * never claims dependence, only failure to certify independence.
 */
struct IndependenceCertificate {
    enum class Status { Independent, SpecialTangent, SharedClass, Undecided };
    Status status = Status::Undecided;
    int witness_a = -1;  // offending angle index (SpecialTangent) or pair (SharedClass)
    int witness_b = -1;
    std::string note;
};

inline IndependenceCertificate independence_certificate(const std::vector<SymbolicAngle>& angles) {
    IndependenceCertificate cert;
    for (size_t i = 0; i < angles.size(); ++i)
        if (angles[i].kind != SymbolicAngle::Kind::Surd) {
            cert.status = IndependenceCertificate::Status::SpecialTangent;
            cert.witness_a = static_cast<int>(i);
            cert.note = "angle is a rational multiple of pi";
            return cert;
        }
    for (size_t i = 0; i < angles.size(); ++i)
        for (size_t j = i + 1; j < angles.size(); ++j)
            if (angles[i].delta == angles[j].delta) {
                cert.status = IndependenceCertificate::Status::SharedClass;
                cert.witness_a = static_cast<int>(i);
                cert.witness_b = static_cast<int>(j);
                cert.note = "shared square-free class " + std::to_string(angles[i].delta);
                return cert;
            }
    for (size_t i = 0; i < angles.size(); ++i)
        if (angles[i].tangent_rational) {
            cert.status = IndependenceCertificate::Status::SpecialTangent;
            cert.witness_a = static_cast<int>(i);
            cert.note = "tangent is rational";
            return cert;
        }
    cert.status = IndependenceCertificate::Status::Independent;
    return cert;
}

}  // namespace qwst
