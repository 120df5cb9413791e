#pragma once

#include <cassert>
#include <string_view>
#include <utility>

#include "liouville/symplectic.hpp"

namespace liouville {

/// Square class of a generator A in sp(V, Ω): the three resolved cases
/// A² = 0, A² = +I, A² = -I, and everything else.
enum class SquareClass { Zero, PlusIdentity, MinusIdentity, Other };

inline std::string_view to_string(SquareClass c) {
    switch (c) {
        case SquareClass::Zero: return "zero";
        case SquareClass::PlusIdentity: return "plus";
        case SquareClass::MinusIdentity: return "minus";
        case SquareClass::Other: return "other";
    }
    return "other";
}

inline SquareClass square_class_from_string(std::string_view s) {
    if (s == "zero") return SquareClass::Zero;
    if (s == "plus") return SquareClass::PlusIdentity;
    if (s == "minus") return SquareClass::MinusIdentity;
    if (s == "other") return SquareClass::Other;
    throw InvalidInput("unknown square class '" + std::string(s) + "'");
}

/// Compare A² against 0, I, -I. Exact over rationals; over floats, entrywise
/// residuals below `tol` count as a match, tried in the order Zero,
/// PlusIdentity, MinusIdentity, and a double match is an error.
template <ScalarField S>
SquareClass classify_square(const SymplecticSpace<S>& space, const Mat<S>& a,
                            double tol = kDefaultTol) {
    if (!space.in_sp(a, tol)) throw NotInSp("classify_square: A is not in sp(V, Omega)");
    const Mat<S> sq = a * a;
    const Mat<S> id = Mat<S>::identity(space.dim());
    if constexpr (is_rational_v<S>) {
        if (sq.is_zero()) return SquareClass::Zero;
        if (sq == id) return SquareClass::PlusIdentity;
        if (sq == -id) return SquareClass::MinusIdentity;
        return SquareClass::Other;
    } else {
        const bool z = sq.is_zero(tol);
        const bool p = (sq - id).is_zero(tol);
        const bool m = (sq + id).is_zero(tol);
        if ((z && p) || (z && m) || (p && m))
            throw AmbiguousClass("classify_square: two square classes within tolerance");
        if (z) return SquareClass::Zero;
        if (p) return SquareClass::PlusIdentity;
        if (m) return SquareClass::MinusIdentity;
        return SquareClass::Other;
    }
}

/// A generator A in sp(V, Ω) with its square class computed once at
/// construction. A determines the homogeneous quadratic
/// ψ(z) = ¼ Ω(z, Az), the Liouville form θ_z(v) = ½ Ω(z - Az, v) and the
/// Liouville field ζ(z) = ½ (z - Az); A = 0 gives the canonical structure.
template <ScalarField S>
class QuadraticGenerator {
  public:
    QuadraticGenerator(SymplecticSpace<S> space, Mat<S> a, double tol = kDefaultTol)
        : space_(std::move(space)),
          a_(std::move(a)),
          class_(classify_square(space_, a_, tol)) {}

    const SymplecticSpace<S>& space() const { return space_; }
    const Mat<S>& matrix() const { return a_; }
    SquareClass square_class() const { return class_; }
    std::size_t dim() const { return space_.dim(); }

    /// ψ(z) = ¼ Ω(z, Az).
    S psi(const Vec<S>& z) const { return fraction<S>(1, 4) * space_.omega(z, a_ * z); }

    /// dψ_z(v) = ½ Ω(z, Av); equals -½ Ω(Az, v) (cross-checked in debug builds).
    S dpsi(const Vec<S>& z, const Vec<S>& v) const {
        const S value = fraction<S>(1, 2) * space_.omega(z, a_ * v);
        assert(scalar_close(value, -fraction<S>(1, 2) * space_.omega(a_ * z, v)));
        return value;
    }

    /// θ_z(v) = ½ Ω(z - Az, v).
    S theta(const Vec<S>& z, const Vec<S>& v) const {
        return fraction<S>(1, 2) * space_.omega(z - a_ * z, v);
    }

    /// ζ(z) = ½ (z - Az); satisfies Ω(ζ(z), v) = θ_z(v) for all v.
    Vec<S> liouville_field(const Vec<S>& z) const { return fraction<S>(1, 2) * (z - a_ * z); }

  private:
    SymplecticSpace<S> space_;
    Mat<S> a_;
    SquareClass class_;
};

/// The Liouville structure θ = θ⁰ + dψ determined by a generator; A = 0
/// encodes the canonical structure θ⁰.
template <ScalarField S>
struct LiouvilleStructure {
    QuadraticGenerator<S> generator;
};

template <ScalarField S>
LiouvilleStructure<S> canonical_structure(const SymplecticSpace<S>& space) {
    return LiouvilleStructure<S>{QuadraticGenerator<S>(space, Mat<S>::zero(space.dim(), space.dim()))};
}

}  // namespace liouville
