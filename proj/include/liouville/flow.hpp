#pragma once

#include <cmath>
#include <cstddef>

#include "liouville/quadratic.hpp"

namespace liouville {

/// Matrix exponential by scaling and squaring: halve until the max-abs norm
/// is at most 1/2, run a 20-term Taylor series, square back up. Entrywise
/// absolute error is well below 1e-12 at desk scale (‖M‖ ≤ 10).
inline Mat<double> expm(const Mat<double>& m) {
    if (!m.is_square()) throw DimensionMismatch("expm: matrix not square");
    const double norm = m.max_abs() * static_cast<double>(m.rows());
    if (!std::isfinite(norm) || norm > 1e6) throw NonFiniteValue("expm: norm too large");

    unsigned squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    const Mat<double> x = std::ldexp(1.0, -static_cast<int>(squarings)) * m;

    Mat<double> result = Mat<double>::identity(m.rows());
    Mat<double> term = Mat<double>::identity(m.rows());
    for (unsigned k = 1; k <= 20; ++k) {
        term = (1.0 / static_cast<double>(k)) * (term * x);
        result += term;
    }
    for (unsigned k = 0; k < squarings; ++k) result = result * result;
    return result;
}

/// The time-t Liouville flow as a matrix: Φ_t = e^{t/2} e^{-At/2}. The factor
/// e^{-At/2} takes its closed form from the square class:
///   A² = 0:  I - (t/2) A
///   A² = +I: cosh(t/2) I - sinh(t/2) A
///   A² = -I: cos(t/2) I - sin(t/2) A
/// and falls back to expm(-At/2) otherwise. Flows are float-only; exact
/// rational flow values exist only at t = 0.
inline Mat<double> flow_matrix(const QuadraticGenerator<double>& gen, double t) {
    const std::size_t n = gen.dim();
    const Mat<double> id = Mat<double>::identity(n);
    const double half = 0.5 * t;
    const double growth = std::exp(half);
    switch (gen.square_class()) {
        case SquareClass::Zero:
            return growth * (id - half * gen.matrix());
        case SquareClass::PlusIdentity:
            return growth * (std::cosh(half) * id - std::sinh(half) * gen.matrix());
        case SquareClass::MinusIdentity:
            return growth * (std::cos(half) * id - std::sin(half) * gen.matrix());
        case SquareClass::Other:
            return growth * expm(-half * gen.matrix());
    }
    throw Error("flow_matrix: unreachable");
}

/// A realized time slice of the flow. Nonsingular for every t (identity at
/// t = 0): the determinant of Φ_t is a positive power of e^t.
struct FlowMap {
    double t;
    Mat<double> matrix;
};

inline FlowMap flow_map(const QuadraticGenerator<double>& gen, double t) {
    return FlowMap{t, flow_matrix(gen, t)};
}

inline Vec<double> flow(const QuadraticGenerator<double>& gen, double t, const Vec<double>& z) {
    if (z.size() != gen.dim()) throw DimensionMismatch("flow: point length mismatch");
    return flow_matrix(gen, t) * z;
}

/// The plus-class flow through the eigensplitting: the A = +1 component is
/// fixed, the A = -1 component scales by e^t. Must agree with flow().
inline Vec<double> flow_on_splitting(const QuadraticGenerator<double>& gen, double t,
                                     const Vec<double>& z) {
    if (gen.square_class() != SquareClass::PlusIdentity)
        throw WrongClass("flow_on_splitting: generator class is not PlusIdentity");
    if (z.size() != gen.dim()) throw DimensionMismatch("flow_on_splitting: point length mismatch");
    // P± = (I ± A)/2 are the eigenprojections when A² = I.
    const Vec<double> az = gen.matrix() * z;
    const Vec<double> z_plus = 0.5 * (z + az);
    const Vec<double> z_minus = 0.5 * (z - az);
    return z_plus + std::exp(t) * z_minus;
}

/// e^B for a random B in sp(V, Ω); lands in Sp(V, Ω) up to tolerance.
inline Mat<double> random_Sp_element(const SymplecticSpace<double>& space, Rng& rng) {
    const Mat<double> b = random_sp_element(space, rng).mat;
    return expm(b);
}

}  // namespace liouville
