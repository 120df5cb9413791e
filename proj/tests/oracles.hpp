// Test-only oracles, implemented independently of the library's own row
// reduction and differentiation paths so cross-checks do not share code
// with what they verify.
#pragma once

#include <functional>
#include <vector>

#include "liouville/linalg.hpp"

namespace oracles {

using liouville::Mat;
using liouville::Rational;
using liouville::Vec;

/// Rank by fraction-free Bareiss elimination on the denominator-cleared
/// integer matrix. Shares no code with liouville::detail::rref.
inline std::size_t bareiss_rank(const Mat<Rational>& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class den = m(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (std::size_t j = 0; j < cols; ++j) {
            Rational scaled = m(i, j) * Rational(lcm);
            a[i][j] = scaled.get_num();
        }
    }

    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Central-difference Jacobian of a black-box map, written out directly.
inline Mat<double> fd_jacobian(const std::function<Vec<double>(const Vec<double>&)>& f,
                               const Vec<double>& z, double h) {
    const Vec<double> f0 = f(z);
    Mat<double> j(f0.size(), z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        Vec<double> zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        const Vec<double> fp = f(zp), fm = f(zm);
        for (std::size_t i = 0; i < f0.size(); ++i) j(i, k) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return j;
}

/// Central-difference directional derivative of a scalar function.
inline double fd_directional(const std::function<double(const Vec<double>&)>& f,
                             const Vec<double>& z, const Vec<double>& v, double h) {
    Vec<double> zp = z, zm = z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        zp[i] += h * v[i];
        zm[i] -= h * v[i];
    }
    return (f(zp) - f(zm)) / (2.0 * h);
}

/// Constraint matrix for {B in sp : BA = AB}, assembled from the bilinear
/// identities Ω(Be_i, e_j) + Ω(e_i, Be_j) = 0 and the commutator action on
/// basis vectors — a different route than the library's operator-applied-
/// to-elementary-matrices construction.
inline Mat<Rational> centralizer_constraints(const Mat<Rational>& gram,
                                             const Mat<Rational>& a) {
    const std::size_t n = gram.rows();
    Mat<Rational> sys(2 * n * n, n * n);
    // sp condition, one equation per basis pair (i, j).
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t eq = i * n + j;
            for (std::size_t k = 0; k < n; ++k) {
                sys(eq, k * n + i) += gram(k, j);  // coeff of B(k, i) in Ω(Be_i, e_j)
                sys(eq, k * n + j) += gram(i, k);  // coeff of B(k, j) in Ω(e_i, Be_j)
            }
        }
    // commutator action on basis vectors: (AB - BA) e_j, one equation per
    // output row r and basis vector j.
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t eq = n * n + r * n + j;
            for (std::size_t k = 0; k < n; ++k) {
                sys(eq, k * n + j) += a(r, k);   // A(r,k) B(k,j)
                sys(eq, r * n + k) -= a(k, j);   // -B(r,k) A(k,j)
            }
        }
    return sys;
}

}  // namespace oracles
