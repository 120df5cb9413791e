#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "liouville/smooth_map.hpp"

namespace liouville {

// ── Centralizer of A in the linear symplectic group ─────────────────────

/// g lies in Sp(V, Ω)^A: symplectic and commuting with A. For the classes
/// A² = 0 and A² = -I these are exactly the linear-symplectic automorphisms
/// of the Liouville structure; for A² = -I they coincide with the
/// pseudounitary group of ⟨·|·⟩^A.
template <ScalarField S>
bool is_centralizer_element(const QuadraticGenerator<S>& gen, const Mat<S>& g,
                            double tol = kDefaultTol) {
    if (!g.is_square() || g.rows() != gen.dim())
        throw DimensionMismatch("is_centralizer_element: operator size mismatch");
    return gen.space().in_Sp(g, tol) && mat_close(g * gen.matrix(), gen.matrix() * g, tol);
}

template <ScalarField S>
struct CentralizerBasis {
    std::vector<Mat<S>> basis;
    std::size_t dimension() const { return basis.size(); }
};

/// Exact basis of the Lie algebra {B ∈ sp(V, Ω) : BA = AB}, computed as the
/// kernel of the stacked linear system (BᵀJ + JB = 0, AB - BA = 0) in the
/// n² entries of B. Group-level centralizer elements are recovered by
/// exponentiation or by rational closed forms per square class.
inline CentralizerBasis<Rational> centralizer_lie_basis(const QuadraticGenerator<Rational>& gen) {
    const std::size_t n = gen.dim();
    const auto& j = gen.space().gram();
    const auto& a = gen.matrix();

    // Columns of the constraint matrix: both operators applied to each
    // elementary matrix E_ij.
    Mat<Rational> sys(2 * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj) {
            Mat<Rational> e(n, n);
            e(i, jj) = Rational(1);
            const Mat<Rational> sp_cond = e.transpose() * j + j * e;
            const Mat<Rational> comm = a * e - e * a;
            const std::size_t col = i * n + jj;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    sys(r * n + c, col) = sp_cond(r, c);
                    sys(n * n + r * n + c, col) = comm(r, c);
                }
        }

    CentralizerBasis<Rational> out;
    for (const auto& v : kernel_basis(sys)) {
        Mat<Rational> b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj) b(i, jj) = v[i * n + jj];
        // Normalize to unit max-abs entry so exponentials stay well scaled.
        const Rational scale = b.max_abs();
        if (scale != 0) b *= Rational(1) / scale;
        out.basis.push_back(std::move(b));
    }
    return out;
}

// ── Canonical structure (A = 0) ─────────────────────────────────────────

/// Membership test for the automorphism group of the canonical structure:
/// the form-preservation residual must vanish on a standard sample set and
/// the map must be linear. Reports which clause failed.
struct CanonicalAutVerdict {
    enum class Clause { None, Origin, Residual, Linearity };
    bool ok = false;
    Clause failed = Clause::None;
    explicit operator bool() const { return ok; }
};

inline std::string_view to_string(CanonicalAutVerdict::Clause c) {
    switch (c) {
        case CanonicalAutVerdict::Clause::None: return "none";
        case CanonicalAutVerdict::Clause::Origin: return "origin";
        case CanonicalAutVerdict::Clause::Residual: return "residual";
        case CanonicalAutVerdict::Clause::Linearity: return "linearity";
    }
    return "none";
}

/// Deterministic sample points: the basis vectors, their pairwise sums, and
/// one mixed point (1, 2, ..., n).
template <ScalarField S>
std::vector<Vec<S>> standard_sample_points(std::size_t n) {
    std::vector<Vec<S>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Vec<S>::unit(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) pts.push_back(Vec<S>::unit(n, i) + Vec<S>::unit(n, k));
    Vec<S> mixed(n);
    for (std::size_t i = 0; i < n; ++i) mixed[i] = S(static_cast<long>(i + 1));
    pts.push_back(std::move(mixed));
    return pts;
}

template <ScalarField S>
CanonicalAutVerdict canonical_aut_check(const SymplecticSpace<S>& space, const SmoothMap<S>& g,
                                        double tol = kDefaultTol) {
    using Clause = CanonicalAutVerdict::Clause;
    if (g.dim_in() != space.dim() || g.dim_out() != space.dim())
        throw DimensionMismatch("canonical_aut_check: map dimension mismatch");
    const std::size_t n = space.dim();

    if (!g(Vec<S>::zero(n)).is_zero(tol)) return {false, Clause::Origin};

    const QuadraticGenerator<S> zero_gen(space, Mat<S>::zero(n, n));
    const auto samples = standard_sample_points<S>(n);
    for (const auto& z : samples)
        if (!scalar_is_zero(pullback_residual(zero_gen, g, z).rel, tol))
            return {false, Clause::Residual};

    const Mat<S> j0 = g.jacobian(samples.front());
    for (const auto& z : samples) {
        if (!mat_close(g.jacobian(z), j0, tol)) return {false, Clause::Linearity};
        if (!vec_close(g(z), j0 * z, tol)) return {false, Clause::Linearity};
    }
    return {true, Clause::None};
}

// ── Pseudounitary structure (A² = -I) ───────────────────────────────────

/// The inner product ⟨x|y⟩ = Ω(x, Ay) + i Ω(x, y) of a compatible
/// pseudounitary structure, held as its (real, imaginary) pair. Nonsingular
/// but not necessarily positive definite.
template <ScalarField S>
class PseudoUnitaryForm {
  public:
    explicit PseudoUnitaryForm(QuadraticGenerator<S> gen) : gen_(std::move(gen)) {
        if (gen_.square_class() != SquareClass::MinusIdentity)
            throw WrongClass("PseudoUnitaryForm: generator class is not MinusIdentity");
    }

    std::pair<S, S> operator()(const Vec<S>& x, const Vec<S>& y) const {
        return {gen_.space().omega(x, gen_.matrix() * y), gen_.space().omega(x, y)};
    }

    const QuadraticGenerator<S>& generator() const { return gen_; }

  private:
    QuadraticGenerator<S> gen_;
};

template <ScalarField S>
std::pair<S, S> pseudo_unitary_inner_product(const QuadraticGenerator<S>& gen, const Vec<S>& x,
                                             const Vec<S>& y) {
    if (gen.square_class() != SquareClass::MinusIdentity)
        throw WrongClass("pseudo_unitary_inner_product: generator class is not MinusIdentity");
    return {gen.space().omega(x, gen.matrix() * y), gen.space().omega(x, y)};
}

namespace detail {

/// Signature (positives, negatives) of a symmetric rational matrix by exact
/// congruence diagonalization (simultaneous row and column elimination).
inline std::pair<std::size_t, std::size_t> symmetric_signature(Mat<Rational> g) {
    const std::size_t n = g.rows();
    auto swap_rc = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) std::swap(g(a, j), g(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
    };
    auto add_rc = [&](std::size_t dst, std::size_t src, const Rational& f) {
        for (std::size_t j = 0; j < n; ++j) g(dst, j) += f * g(src, j);
        for (std::size_t i = 0; i < n; ++i) g(i, dst) += f * g(i, src);
    };

    std::size_t pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (g(k, k) == 0) {
            std::size_t j = k + 1;
            while (j < n && g(j, j) == 0) ++j;
            if (j < n) {
                swap_rc(k, j);
            } else {
                for (j = k + 1; j < n && g(k, j) == 0; ++j) {}
                if (j == n) continue;  // degenerate direction
                add_rc(k, j, Rational(1));  // diagonal becomes 2 g(k, j)
            }
        }
        const Rational d = g(k, k);
        (d > 0 ? pos : neg)++;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (g(i, k) == 0) continue;
            add_rc(i, k, -g(i, k) / d);
        }
    }
    return {pos, neg};
}

}  // namespace detail

/// Signature of the real part (x, y) -> Ω(x, Ay) of the pseudounitary inner
/// product, by exact diagonalization over the rationals. The form is
/// nonsingular, so positives + negatives = dim V; (dim V, 0) is the
/// positive-definite (unitary) case.
inline std::pair<std::size_t, std::size_t> pseudo_unitary_signature(
    const QuadraticGenerator<Rational>& gen) {
    if (gen.square_class() != SquareClass::MinusIdentity)
        throw WrongClass("pseudo_unitary_signature: generator class is not MinusIdentity");
    const std::size_t n = gen.dim();
    Mat<Rational> g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<Rational> column = gen.matrix() * Vec<Rational>::unit(n, i);
        for (std::size_t j = 0; j < n; ++j)
            g(j, i) = gen.space().omega(Vec<Rational>::unit(n, j), column);
    }
    return detail::symmetric_signature(std::move(g));
}

/// ⟨gx|gy⟩ = ⟨x|y⟩ on the basis-pair grid; agrees with
/// is_centralizer_element (the pseudounitary group is the centralizer).
template <ScalarField S>
bool preserves_inner_product(const QuadraticGenerator<S>& gen, const Mat<S>& g,
                             double tol = kDefaultTol) {
    if (gen.square_class() != SquareClass::MinusIdentity)
        throw WrongClass("preserves_inner_product: generator class is not MinusIdentity");
    if (!g.is_square() || g.rows() != gen.dim())
        throw DimensionMismatch("preserves_inner_product: operator size mismatch");
    const std::size_t n = gen.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<S> gei = g.column(i);
        for (std::size_t k = 0; k < n; ++k) {
            const auto lhs = pseudo_unitary_inner_product(gen, gei, g.column(k));
            const auto rhs =
                pseudo_unitary_inner_product(gen, Vec<S>::unit(n, i), Vec<S>::unit(n, k));
            if (!scalar_close(lhs.first, rhs.first, tol) ||
                !scalar_close(lhs.second, rhs.second, tol))
                return false;
        }
    }
    return true;
}

// ── Lagrangian splitting (A² = +I) ──────────────────────────────────────

/// The eigendecomposition V = V₊ ⊕ V₋ of a generator with A² = I: both
/// eigenspaces are Lagrangian, the projections satisfy P₊ + P₋ = I,
/// P₊ P₋ = 0 and A = P₊ - P₋.
template <ScalarField S>
struct LagrangianSplitting {
    QuadraticGenerator<S> generator;
    std::vector<Vec<S>> basis_plus;
    std::vector<Vec<S>> basis_minus;
    Mat<S> p_plus;        // ambient projection onto V₊ along V₋
    Mat<S> p_minus;       // ambient projection onto V₋ along V₊
    Mat<S> embed_plus;    // n×m, columns = basis_plus
    Mat<S> embed_minus;   // n×m, columns = basis_minus
    Mat<S> coords_plus;   // m×n, V₊ coordinates of the V₊ component
    Mat<S> coords_minus;  // m×n, V₋ coordinates of the V₋ component

    std::size_t half_dim() const { return basis_plus.size(); }
};

template <ScalarField S>
LagrangianSplitting<S> lagrangian_splitting(const QuadraticGenerator<S>& gen,
                                            double tol = kDefaultTol) {
    if (gen.square_class() != SquareClass::PlusIdentity)
        throw WrongClass("lagrangian_splitting: generator class is not PlusIdentity");
    const std::size_t n = gen.dim();
    const std::size_t m = n / 2;
    const Mat<S> id = Mat<S>::identity(n);

    auto basis_plus = kernel_basis(gen.matrix() - id, tol);
    auto basis_minus = kernel_basis(gen.matrix() + id, tol);
    if (basis_plus.size() != m || basis_minus.size() != m)
        throw Error("lagrangian_splitting: eigenspaces are not half-dimensional");

    // Both eigenspaces must be isotropic.
    for (const auto& bases : {&basis_plus, &basis_minus})
        for (const auto& u : *bases)
            for (const auto& w : *bases)
                if (!scalar_is_zero(gen.space().omega(u, w), tol))
                    throw Error("lagrangian_splitting: eigenspace is not Lagrangian");

    // Projections from the change-of-basis system C = [B₊ | B₋].
    std::vector<Vec<S>> all = basis_plus;
    all.insert(all.end(), basis_minus.begin(), basis_minus.end());
    const Mat<S> c = Mat<S>::from_columns(all);
    const Mat<S> c_inv = invert(c, tol);

    Mat<S> embed_plus(n, m), embed_minus(n, m), coords_plus(m, n), coords_minus(m, n);
    for (std::size_t k = 0; k < m; ++k) {
        embed_plus.set_column(k, basis_plus[k]);
        embed_minus.set_column(k, basis_minus[k]);
        for (std::size_t col = 0; col < n; ++col) {
            coords_plus(k, col) = c_inv(k, col);
            coords_minus(k, col) = c_inv(m + k, col);
        }
    }
    Mat<S> p_plus = embed_plus * coords_plus;
    Mat<S> p_minus = embed_minus * coords_minus;

    if (!mat_close(p_plus + p_minus, id, tol) || !(p_plus * p_minus).is_zero(tol) ||
        !mat_close(p_plus - p_minus, gen.matrix(), tol))
        throw Error("lagrangian_splitting: projection identities failed");

    return LagrangianSplitting<S>{gen,
                                  std::move(basis_plus),
                                  std::move(basis_minus),
                                  std::move(p_plus),
                                  std::move(p_minus),
                                  std::move(embed_plus),
                                  std::move(embed_minus),
                                  std::move(coords_plus),
                                  std::move(coords_minus)};
}

// ── Cotangent lift (A² = +I) ────────────────────────────────────────────

namespace detail {

/// Per-point workspace of the lift g(z) = f(z₊) + [{f'_{z₊}∘P₊}†]⁻¹(z₋):
/// V₊/V₋ coordinates, the base Jacobian, and the restricted adjoint
/// W = {f'_{z₊}∘P₊}†|V₋ in V₋ coordinates together with its inverse.
template <ScalarField S>
struct LiftPoint {
    Vec<S> x, y;       // V₊ and V₋ coordinates of z
    Vec<S> fx;         // f(z₊) in V₊ coordinates
    Mat<S> jf;         // f'_{z₊} in V₊ coordinates
    Mat<S> w, w_inv;   // restricted adjoint and its inverse
    Vec<S> wy;         // W⁻¹ y = V₋ coordinates of g(z)
};

template <ScalarField S>
Mat<S> restricted_adjoint(const LagrangianSplitting<S>& split, const Mat<S>& jf_like) {
    const Mat<S> ambient = split.embed_plus * jf_like * split.coords_plus;
    return split.coords_minus * split.generator.space().adjoint(ambient) * split.embed_minus;
}

template <ScalarField S>
LiftPoint<S> lift_point(const LagrangianSplitting<S>& split, const SmoothMap<S>& f,
                        const Vec<S>& z, double tol) {
    LiftPoint<S> p;
    p.x = split.coords_plus * z;
    p.y = split.coords_minus * z;
    p.fx = f(p.x);
    p.jf = f.jacobian(p.x);
    p.w = restricted_adjoint(split, p.jf);
    try {
        p.w_inv = invert(p.w, tol);
    } catch (const SingularMatrix&) {
        throw SingularJacobian("cotangent_lift: base Jacobian singular at evaluation point");
    }
    p.wy = p.w_inv * p.y;
    return p;
}

}  // namespace detail

/// The automorphism of the plus-class structure determined by a
/// diffeomorphism f of V₊:
///
///     g(z) = f(z₊) + [{f'_{z₊} ∘ P₊}†]⁻¹ (z₋).
///
/// The restriction-inverse is computed per evaluation point; its Jacobian is
/// assembled by implicit differentiation (exact for polynomial f, numeric
/// otherwise). Pointwise invertibility of f'_{z₊} is checked at every
/// touched point; global bijectivity of f is the caller's contract.
template <ScalarField S>
SmoothMap<S> cotangent_lift(const QuadraticGenerator<S>& gen, const SmoothMap<S>& f,
                            double tol = kDefaultTol) {
    if (gen.square_class() != SquareClass::PlusIdentity)
        throw WrongClass("cotangent_lift: generator class is not PlusIdentity");
    const std::size_t n = gen.dim();
    const std::size_t m = n / 2;
    if (f.dim_in() != m || f.dim_out() != m)
        throw DimensionMismatch("cotangent_lift: f must be a self-map of V+");

    auto split = std::make_shared<LagrangianSplitting<S>>(lagrangian_splitting(gen, tol));
    auto base = std::make_shared<SmoothMap<S>>(f);

    auto eval = [split, base, tol](const Vec<S>& z) {
        const auto p = detail::lift_point(*split, *base, z, tol);
        return split->embed_plus * p.fx + split->embed_minus * p.wy;
    };
    auto jac = [split, base, tol, n](const Vec<S>& z) {
        const auto p = detail::lift_point(*split, *base, z, tol);
        Mat<S> j(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const Vec<S> delta = Vec<S>::unit(n, k);
            const Vec<S> dx = split->coords_plus * delta;
            const Vec<S> dy = split->coords_minus * delta;
            // d(W⁻¹y) = W⁻¹ dy - W⁻¹ dW W⁻¹ y with dW from the directional
            // derivative of f'.
            const Mat<S> djf = base->jacobian_directional(p.x, dx);
            const Mat<S> dw = detail::restricted_adjoint(*split, djf);
            const Vec<S> dminus = p.w_inv * dy - p.w_inv * (dw * p.wy);
            j.set_column(k, split->embed_plus * (p.jf * dx) + split->embed_minus * dminus);
        }
        return j;
    };

    return SmoothMap<S>::analytic(n, n, std::move(eval), std::move(jac), nullptr,
                                  f.has_exact_jacobian());
}

/// The base map f = g|V₊ of a plus-class automorphism, in V₊ coordinates.
/// Raises RestrictionEscapes at evaluation if g fails to map V₊ into V₊.
template <ScalarField S>
SmoothMap<S> restrict_to_plus(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g,
                              double tol = kDefaultTol) {
    if (gen.square_class() != SquareClass::PlusIdentity)
        throw WrongClass("restrict_to_plus: generator class is not PlusIdentity");
    const std::size_t n = gen.dim();
    const std::size_t m = n / 2;
    if (g.dim_in() != n || g.dim_out() != n)
        throw DimensionMismatch("restrict_to_plus: map dimension mismatch");

    auto split = std::make_shared<LagrangianSplitting<S>>(lagrangian_splitting(gen, tol));
    auto full = std::make_shared<SmoothMap<S>>(g);

    auto eval = [split, full, tol](const Vec<S>& x) {
        const Vec<S> gz = (*full)(split->embed_plus * x);
        const Vec<S> escape = split->coords_minus * gz;
        if (!escape.is_zero(tol))
            throw RestrictionEscapes("restrict_to_plus: image leaves V+ at a sample point");
        return split->coords_plus * gz;
    };
    auto jac = [split, full](const Vec<S>& x) {
        return split->coords_plus * full->jacobian(split->embed_plus * x) * split->embed_plus;
    };
    auto jac_dir = [split, full](const Vec<S>& x, const Vec<S>& d) {
        return split->coords_plus *
               full->jacobian_directional(split->embed_plus * x, split->embed_plus * d) *
               split->embed_plus;
    };

    return SmoothMap<S>::analytic(m, m, std::move(eval), std::move(jac), std::move(jac_dir),
                                  g.has_exact_jacobian());
}

// ── Bundle map to the cotangent bundle of V₊ ────────────────────────────

/// α(z) = (base point z₊ in V₊ coordinates, covector Ω(z₋, ·) on V₊). The
/// map is linear and injective; it carries the plus-class Liouville form to
/// the tautological one-form of T*(V₊).
template <ScalarField S>
struct AlphaPoint {
    Vec<S> base;      // z₊ in V₊ coordinates
    Vec<S> covector;  // coefficients Ω(z₋, b_i) over the V₊ basis
};

template <ScalarField S>
AlphaPoint<S> alpha_bridge(const LagrangianSplitting<S>& split, const Vec<S>& z) {
    const Vec<S> z_minus = split.p_minus * z;
    const std::size_t m = split.half_dim();
    Vec<S> covector(m);
    for (std::size_t i = 0; i < m; ++i)
        covector[i] = split.generator.space().omega(z_minus, split.basis_plus[i]);
    return AlphaPoint<S>{split.coords_plus * z, std::move(covector)};
}

template <ScalarField S>
AlphaPoint<S> alpha_bridge(const QuadraticGenerator<S>& gen, const Vec<S>& z,
                           double tol = kDefaultTol) {
    return alpha_bridge(lagrangian_splitting(gen, tol), z);
}

/// |α(z) applied to P₊v  -  θ_z(v)|: the tautological form pulled back
/// through α must reproduce the plus-class Liouville form identically.
template <ScalarField S>
S tautological_pullback_residual(const LagrangianSplitting<S>& split, const Vec<S>& z,
                                 const Vec<S>& v) {
    const AlphaPoint<S> alpha = alpha_bridge(split, z);
    const Vec<S> v_plus_coords = split.coords_plus * v;
    S pairing(0);
    for (std::size_t i = 0; i < alpha.covector.size(); ++i)
        pairing += alpha.covector[i] * v_plus_coords[i];
    return abs_value(pairing - split.generator.theta(z, v));
}

template <ScalarField S>
S tautological_pullback_residual(const QuadraticGenerator<S>& gen, const Vec<S>& z,
                                 const Vec<S>& v, double tol = kDefaultTol) {
    return tautological_pullback_residual(lagrangian_splitting(gen, tol), z, v);
}

// ── Rank-one nilpotent generators ───────────────────────────────────────

/// The nilpotent generator Az = -Ω(a, z) a. For a ≠ 0 it squares to zero
/// (Ω is alternating) and its quadratic is ψ(z) = ¼ Ω(a, z)².
template <ScalarField S>
QuadraticGenerator<S> rank_one_generator(const SymplecticSpace<S>& space, const Vec<S>& a) {
    if (a.size() != space.dim()) throw DimensionMismatch("rank_one_generator: vector length");
    Vec<S> row(space.dim());  // row_j = Ω(a, e_j)
    for (std::size_t j = 0; j < space.dim(); ++j) {
        S acc(0);
        for (std::size_t i = 0; i < space.dim(); ++i) acc += a[i] * space.gram()(i, j);
        row[j] = acc;
    }
    return QuadraticGenerator<S>(space, -Mat<S>::outer(a, row));
}

}  // namespace liouville
