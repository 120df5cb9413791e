#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <type_traits>

#include "liouville/errors.hpp"

namespace liouville {

/// Exact rational scalar, always kept in lowest terms with positive
/// denominator (GMP canonical form).
using Rational = mpq_class;

/// A computation runs entirely over one scalar kind: exact rationals or
/// 64-bit floats. Mixed-kind expressions are a compile error.
template <class S>
concept ScalarField = std::same_as<S, Rational> || std::same_as<S, double>;

template <class S>
inline constexpr bool is_rational_v = std::is_same_v<S, Rational>;

/// One knob for every floating-point comparison in the library:
/// |a - b| <= tol * (1 + max(|a|, |b|)).
inline constexpr double kDefaultTol = 1e-9;

/// Central-difference step for numeric Jacobians, scaled by (1 + |z|).
inline constexpr double kDefaultFdStep = 1e-5;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw InvalidInput("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parse "p/q" or "p" (arbitrary precision, base 10).
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw InvalidInput("rational_from_string: cannot parse '" + s + "'");
    if (q.get_den() == 0)
        throw InvalidInput("rational_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Build p/q in the target field.
template <ScalarField S>
S fraction(long num, long den = 1) {
    if constexpr (is_rational_v<S>) {
        return rational(num, den);
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

// Concrete overloads (not templates) so GMP's lazy expression temporaries
// convert to Rational at the call site.

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline bool scalar_is_zero(const Rational& x, double = kDefaultTol) { return x == 0; }
inline bool scalar_is_zero(double x, double tol = kDefaultTol) { return std::fabs(x) <= tol; }

/// Exact equality over rationals, absolute-plus-relative over floats.
inline bool scalar_close(const Rational& a, const Rational& b, double = kDefaultTol) {
    return a == b;
}
inline bool scalar_close(double a, double b, double tol = kDefaultTol) {
    const double m = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= tol * (1.0 + m);
}

/// Floats must stay finite; NaN/Inf is an error state, never a value.
inline void ensure_finite(const Rational&, const char*) {}
inline void ensure_finite(double x, const char* where) {
    if (!std::isfinite(x)) throw NonFiniteValue(std::string(where) + ": non-finite value");
}

}  // namespace liouville
