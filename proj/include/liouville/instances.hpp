#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "liouville/automorphism.hpp"

namespace liouville {

// ── Exact random symplectic maps ────────────────────────────────────────

/// Symplectic transvection z ↦ z + c Ω(u, z) u. Exactly symplectic for any
/// u and c, so products of transvections sample Sp(V, Ω) without leaving
/// the rationals.
template <ScalarField S>
Mat<S> transvection(const SymplecticSpace<S>& space, const Vec<S>& u,
                    const std::type_identity_t<S>& c) {
    if (u.size() != space.dim()) throw DimensionMismatch("transvection: vector length");
    Vec<S> row(space.dim());
    for (std::size_t j = 0; j < space.dim(); ++j) {
        S acc(0);
        for (std::size_t i = 0; i < space.dim(); ++i) acc += u[i] * space.gram()(i, j);
        row[j] = acc;
    }
    return Mat<S>::identity(space.dim()) + Mat<S>::outer(c * u, row);
}

/// Product of `count` random transvections. Parameters are kept small (two
/// ±1 entries per direction vector, |c| <= 1) so conjugated instances stay
/// well scaled for the float tolerances downstream.
inline Mat<Rational> random_rational_Sp(const SymplecticSpace<Rational>& space, Rng& rng,
                                        std::size_t count = 2) {
    Mat<Rational> g = Mat<Rational>::identity(space.dim());
    for (std::size_t k = 0; k < count; ++k) {
        Vec<Rational> u(space.dim());
        u[next_below(rng, space.dim())] = rational(next_below(rng, 2) ? 1 : -1);
        u[next_below(rng, space.dim())] = rational(next_below(rng, 2) ? 1 : -1);
        g = g * transvection(space, u, rational(next_below(rng, 2) ? 1 : -1, next_int(rng, 1, 2)));
    }
    return g;
}

// ── Instance generation per square class ────────────────────────────────

/// A generator of the requested square class over the given space, exact
/// over the rationals. Base shapes (a nilpotent combination of rank-one
/// maps, the Darboux complex structure, the eigensplitting reflection) are
/// conjugated by a random exact symplectic map for variety; conjugation
/// preserves both sp membership and the square class. The base shapes
/// presume the standard Darboux pairing.
inline QuadraticGenerator<Rational> generate_instance_once(const SymplecticSpace<Rational>& space,
                                                           SquareClass cls, Rng& rng) {
    const std::size_t n = space.dim();
    const std::size_t m = n / 2;
    const Mat<Rational> g = random_rational_Sp(space, rng);
    const Mat<Rational> g_inv = invert(g);

    Mat<Rational> base(n, n);
    switch (cls) {
        case SquareClass::Zero: {
            // Rank-one pieces over an isotropic set add up to a nilpotent.
            bool nonzero = false;
            for (std::size_t i = 0; i < m; ++i) {
                const Rational c = random_rational(rng, 3, 2);
                if (c == 0) continue;
                nonzero = true;
                base += c * rank_one_generator(space, Vec<Rational>::unit(n, i)).matrix();
            }
            if (!nonzero)
                base = rank_one_generator(space, Vec<Rational>::unit(n, 0)).matrix();
            break;
        }
        case SquareClass::PlusIdentity: {
            for (std::size_t i = 0; i < m; ++i) {
                base(i, i) = Rational(1);
                base(m + i, m + i) = Rational(-1);
            }
            break;
        }
        case SquareClass::MinusIdentity: {
            base = space.gram();  // Darboux gram matrix squares to -I
            break;
        }
        case SquareClass::Other: {
            for (int attempt = 0; attempt < 64; ++attempt) {
                Mat<Rational> t(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t jj = 0; jj < n; ++jj) t(i, jj) = random_rational(rng, 2, 2);
                Mat<Rational> a = fraction<Rational>(1, 2) * (t - space.adjoint(t));
                if (classify_square(space, a) == SquareClass::Other)
                    return QuadraticGenerator<Rational>(space, std::move(a));
            }
            throw Error("generate_instance: could not draw an Other-class element");
        }
    }
    QuadraticGenerator<Rational> gen(space, g_inv * base * g);
    if (gen.square_class() != cls) throw Error("generate_instance: class mismatch");
    return gen;
}

/// generate_instance_once, redrawn until the entries stay small. Keeps the
/// float-side 1e-9 identity checks meaningful and the exact arithmetic fast.
inline QuadraticGenerator<Rational> generate_instance(const SymplecticSpace<Rational>& space,
                                                      SquareClass cls, Rng& rng,
                                                      double entry_bound = 6.0) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        auto gen = generate_instance_once(space, cls, rng);
        if (to_double(gen.matrix()).max_abs() <= entry_bound) return gen;
    }
    throw Error("generate_instance: could not draw a well-scaled instance");
}

inline QuadraticGenerator<double> to_double(const QuadraticGenerator<Rational>& gen,
                                            double tol = kDefaultTol) {
    return QuadraticGenerator<double>(SymplecticSpace<double>(to_double(gen.space().gram()), tol),
                                      to_double(gen.matrix()), tol);
}

// ── Exponential-free rational centralizer elements ──────────────────────
//
// Rational closed forms for group-level members of Sp(V, Ω)^A, one per
// square class. They make the classification identities testable in exact
// arithmetic, with no float tolerance anywhere.

/// A² = 0: I - tA = e^{-tA}, symplectic for every t.
template <ScalarField S>
Mat<S> zero_class_member(const QuadraticGenerator<S>& gen, const std::type_identity_t<S>& t) {
    if (gen.square_class() != SquareClass::Zero)
        throw WrongClass("zero_class_member: generator class is not Zero");
    return Mat<S>::identity(gen.dim()) - t * gen.matrix();
}

/// A² = -I: cI + sA with (c, s) a rational point of the unit circle drawn
/// from the parametrization c = (1-u²)/(1+u²), s = 2u/(1+u²).
template <ScalarField S>
Mat<S> minus_class_member(const QuadraticGenerator<S>& gen, const std::type_identity_t<S>& u) {
    if (gen.square_class() != SquareClass::MinusIdentity)
        throw WrongClass("minus_class_member: generator class is not MinusIdentity");
    const S u2 = u * u;
    const S c = (S(1) - u2) / (S(1) + u2);
    const S s = (S(2) * u) / (S(1) + u2);
    return c * Mat<S>::identity(gen.dim()) + s * gen.matrix();
}

/// A² = +I: c P₊ + c⁻¹ P₋ with P± = (I ± A)/2.
template <ScalarField S>
Mat<S> plus_class_member(const QuadraticGenerator<S>& gen, const std::type_identity_t<S>& c) {
    if (gen.square_class() != SquareClass::PlusIdentity)
        throw WrongClass("plus_class_member: generator class is not PlusIdentity");
    if (scalar_is_zero(c, 0.0)) throw InvalidInput("plus_class_member: c must be nonzero");
    const Mat<S> id = Mat<S>::identity(gen.dim());
    const Mat<S> p_plus = fraction<S>(1, 2) * (id + gen.matrix());
    const Mat<S> p_minus = fraction<S>(1, 2) * (id - gen.matrix());
    return c * p_plus + (S(1) / c) * p_minus;
}

// ── Base diffeomorphisms for cotangent lifts ────────────────────────────

/// Random triangular polynomial diffeomorphism of R^m:
/// f_i = c_i x_i + a_i x_i³ + p_i(x_0..x_{i-1}) with c_i > 0 and a_i ≥ 0.
/// The Jacobian is lower-triangular with diagonal c_i + 3 a_i x_i² > 0, so
/// f is a global diffeomorphism; the family is closed under composition.
inline PolynomialMap<Rational> random_triangular_diffeo(std::size_t m, Rng& rng) {
    std::vector<Polynomial<Rational>> comps;
    comps.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Polynomial<Rational> p(m);
        std::vector<unsigned> e(m, 0u);

        e[i] = 1u;
        p.add_term(e, rational(next_int(rng, 1, 3), next_int(rng, 1, 2)));
        if (next_below(rng, 2) == 0) {
            e[i] = 3u;
            p.add_term(e, rational(next_int(rng, 1, 2), next_int(rng, 1, 2)));
        }
        e[i] = 0u;

        if (next_below(rng, 3) > 0) p.add_term(e, random_rational(rng, 2, 2));  // constant
        for (std::size_t j = 0; j < i; ++j) {
            if (next_below(rng, 2) == 0) {
                e[j] = 1u;
                p.add_term(e, random_rational(rng, 2, 2));
                e[j] = 0u;
            }
            if (next_below(rng, 2) == 0) {
                e[j] = 2u;
                p.add_term(e, random_rational(rng, 2, 2));
                e[j] = 0u;
            }
        }
        comps.push_back(std::move(p));
    }
    return PolynomialMap<Rational>(m, std::move(comps));
}

// ── Curated non-members (deterministic counterexamples) ─────────────────

/// Nonlinear symplectomorphism of the standard plane: (p, q) ↦ (p, q + c p²).
/// A symplectomorphism for every c, but an automorphism of the canonical
/// structure only at c = 0.
template <ScalarField S>
SmoothMap<S> shear_map(const S& c) {
    std::vector<Polynomial<S>> comps;
    comps.push_back(Polynomial<S>::variable(2, 0));
    Polynomial<S> q = Polynomial<S>::variable(2, 1);
    q.add_term({2u, 0u}, c);
    comps.push_back(std::move(q));
    return SmoothMap<S>::polynomial(PolynomialMap<S>(2, std::move(comps)));
}

/// diag(2, 1/2): symplectic on the standard plane but not commuting with
/// the Darboux complex structure.
template <ScalarField S>
Mat<S> stretch_map() {
    Mat<S> g(2, 2);
    g(0, 0) = S(2);
    g(1, 1) = fraction<S>(1, 2);
    return g;
}

/// Unit lower-triangular shear: symplectic, does not commute with the
/// nilpotent [[0,1],[0,0]].
template <ScalarField S>
Mat<S> noncommuting_linear() {
    Mat<S> g = Mat<S>::identity(2);
    g(1, 0) = S(1);
    return g;
}

/// z ↦ z + c: a symplectomorphism that moves the origin.
template <ScalarField S>
SmoothMap<S> translation_map(const Vec<S>& c) {
    const std::size_t n = c.size();
    std::vector<Polynomial<S>> comps;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial<S> p = Polynomial<S>::variable(n, i);
        p.add_term(std::vector<unsigned>(n, 0u), c[i]);
        comps.push_back(std::move(p));
    }
    return SmoothMap<S>::polynomial(PolynomialMap<S>(n, std::move(comps)));
}

}  // namespace liouville
