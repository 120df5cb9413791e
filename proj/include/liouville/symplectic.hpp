#pragma once

#include <cstddef>
#include <utility>

#include "liouville/linalg.hpp"

namespace liouville {

/// A symplectic vector space (V, Ω): even dimension 2m together with the
/// Gram matrix J of the form, Ω(x, y) = xᵀ J y. The Gram matrix is kept
/// explicit rather than fixed to the Darboux normal form so that
/// non-standard bases exercise the basis-free formulas.
template <ScalarField S>
class SymplecticSpace {
  public:
    explicit SymplecticSpace(Mat<S> gram, double tol = kDefaultTol) : gram_(std::move(gram)) {
        if (!gram_.is_square()) throw DimensionMismatch("SymplecticSpace: Gram matrix not square");
        if (gram_.rows() == 0 || gram_.rows() % 2 != 0)
            throw InvalidInput("SymplecticSpace: dimension must be even and positive");
        if (!mat_close(gram_.transpose(), -gram_, tol))
            throw InvalidInput("SymplecticSpace: Gram matrix not antisymmetric");
        gram_inv_ = invert(gram_, tol);  // throws SingularMatrix if degenerate
    }

    /// The 2m-dimensional space in linear symplectic coordinates
    /// (p_1..p_m, q_1..q_m): Ω(e_i, e_{m+i}) = 1, all other pairings zero.
    static SymplecticSpace standard(std::size_t m) {
        if (m < 1) throw InvalidInput("standard_space: m must be >= 1");
        Mat<S> j(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            j(i, m + i) = S(1);
            j(m + i, i) = S(-1);
        }
        return SymplecticSpace(std::move(j));
    }

    std::size_t dim() const { return gram_.rows(); }
    std::size_t half_dim() const { return gram_.rows() / 2; }
    const Mat<S>& gram() const { return gram_; }
    const Mat<S>& gram_inverse() const { return gram_inv_; }

    /// Ω(x, y) = xᵀ J y.
    S omega(const Vec<S>& x, const Vec<S>& y) const {
        if (x.size() != dim() || y.size() != dim())
            throw DimensionMismatch("omega: vector length mismatch");
        S acc(0);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (scalar_is_zero(x[i], 0.0)) continue;
            S row(0);
            for (std::size_t j = 0; j < dim(); ++j) row += gram_(i, j) * y[j];
            acc += x[i] * row;
        }
        return acc;
    }

    /// Symplectic adjoint A† = J⁻¹ Aᵀ J, the unique map with
    /// Ω(A†x, y) = Ω(x, Ay).
    Mat<S> adjoint(const Mat<S>& a) const {
        require_operator(a, "symplectic_adjoint");
        return gram_inv_ * a.transpose() * gram_;
    }

    /// Lie algebra membership: A† = -A.
    bool in_sp(const Mat<S>& a, double tol = kDefaultTol) const {
        require_operator(a, "is_in_sp");
        return mat_close(adjoint(a), -a, tol);
    }

    /// Group membership: gᵀ J g = J.
    bool in_Sp(const Mat<S>& g, double tol = kDefaultTol) const {
        require_operator(g, "is_in_Sp");
        return mat_close(g.transpose() * gram_ * g, gram_, tol);
    }

    friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) {
        return a.gram_ == b.gram_;
    }

  private:
    void require_operator(const Mat<S>& a, const char* where) const {
        if (!a.is_square() || a.rows() != dim())
            throw DimensionMismatch(std::string(where) + ": operator size mismatch");
    }

    Mat<S> gram_;
    Mat<S> gram_inv_;
};

/// A validated element of sp(V, Ω).
template <ScalarField S>
struct SpElement {
    Mat<S> mat;
};

template <ScalarField S>
SpElement<S> sp_element(const SymplecticSpace<S>& space, Mat<S> a, double tol = kDefaultTol) {
    if (!space.in_sp(a, tol)) throw NotInSp("sp_element: A fails A† = -A");
    return SpElement<S>{std::move(a)};
}

/// Draws a bounded random matrix T and antisymmetrizes against the adjoint:
/// A = (T - T†)/2 lies in sp(V, Ω) by construction.
template <ScalarField S>
SpElement<S> random_sp_element(const SymplecticSpace<S>& space, Rng& rng) {
    Mat<S> t = random_matrix<S>(rng, space.dim(), space.dim());
    Mat<S> a = fraction<S>(1, 2) * (t - space.adjoint(t));
    return SpElement<S>{std::move(a)};
}

}  // namespace liouville
