#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/rng.hpp"
#include "liouville/scalar.hpp"

namespace liouville {

// ── Vectors ─────────────────────────────────────────────────────────────

template <ScalarField S>
class Vec {
  public:
    Vec() = default;
    explicit Vec(std::size_t n) : c_(n, S(0)) {}
    Vec(std::initializer_list<S> init) : c_(init) {}
    explicit Vec(std::vector<S> coords) : c_(std::move(coords)) {}

    static Vec zero(std::size_t n) { return Vec(n); }
    static Vec unit(std::size_t n, std::size_t i) {
        Vec e(n);
        e[i] = S(1);
        return e;
    }

    std::size_t size() const { return c_.size(); }
    S& operator[](std::size_t i) { return c_[i]; }
    const S& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<S>& coords() const { return c_; }

    auto begin() { return c_.begin(); }
    auto end() { return c_.end(); }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    friend bool operator==(const Vec& a, const Vec& b) = default;

    Vec& operator+=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) c_[i] += o[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) c_[i] -= o[i];
        return *this;
    }
    Vec& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const S& s, Vec v) { return v *= s; }
    friend Vec operator-(Vec v) {
        for (auto& x : v.c_) x = -x;
        return v;
    }

    /// Entrywise maximum absolute value.
    S max_abs() const {
        S m(0);
        for (const auto& x : c_)
            if (abs_value(x) > m) m = abs_value(x);
        return m;
    }

    bool is_zero(double tol = kDefaultTol) const {
        for (const auto& x : c_)
            if (!scalar_is_zero(x, tol)) return false;
        return true;
    }

  private:
    void check_same(const Vec& o) const {
        if (size() != o.size()) throw DimensionMismatch("Vec: length mismatch");
    }

    std::vector<S> c_;
};

// ── Matrices (row-major dense) ──────────────────────────────────────────

template <ScalarField S>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat from_rows(std::initializer_list<std::initializer_list<S>> rows) {
        Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.cols_) throw DimensionMismatch("Mat::from_rows: ragged rows");
            std::size_t j = 0;
            for (const auto& x : row) m(i, j++) = x;
            ++i;
        }
        return m;
    }
    /// Column vectors side by side.
    static Mat from_columns(const std::vector<Vec<S>>& cols) {
        if (cols.empty()) return Mat(0, 0);
        Mat m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw DimensionMismatch("Mat::from_columns: ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }
    /// a * b^T (rank-one).
    static Mat outer(const Vec<S>& a, const Vec<S>& b) {
        Mat m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) = default;

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const S& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const S& s, Mat m) { return m *= s; }
    friend Mat operator-(Mat m) {
        for (auto& x : m.a_) x = -x;
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("Mat*Mat: inner dimensions differ");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (scalar_is_zero(aik, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vec<S> operator*(const Mat& m, const Vec<S>& v) {
        if (m.cols_ != v.size()) throw DimensionMismatch("Mat*Vec: dimensions differ");
        Vec<S> w(m.rows_);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            S acc(0);
            for (std::size_t j = 0; j < m.cols_; ++j) acc += m(i, j) * v[j];
            w[i] = acc;
        }
        return w;
    }

    Vec<S> row(std::size_t i) const {
        Vec<S> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    Vec<S> column(std::size_t j) const {
        Vec<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, const Vec<S>& c) {
        if (c.size() != rows_) throw DimensionMismatch("Mat::set_column");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    S max_abs() const {
        S m(0);
        for (const auto& x : a_)
            if (abs_value(x) > m) m = abs_value(x);
        return m;
    }

    bool is_zero(double tol = kDefaultTol) const {
        for (const auto& x : a_)
            if (!scalar_is_zero(x, tol)) return false;
        return true;
    }

  private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("Mat: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<S> a_;
};

template <ScalarField S>
bool mat_close(const Mat<S>& a, const Mat<S>& b, double tol = kDefaultTol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!scalar_close(a(i, j), b(i, j), tol)) return false;
    return true;
}

template <ScalarField S>
bool vec_close(const Vec<S>& a, const Vec<S>& b, double tol = kDefaultTol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!scalar_close(a[i], b[i], tol)) return false;
    return true;
}

// ── Row reduction ───────────────────────────────────────────────────────

namespace detail {

/// Pivot choice: first nonzero row for rationals (exact), largest magnitude
/// for floats; ties broken by lowest row index in both cases.
template <ScalarField S>
std::size_t pivot_row(const Mat<S>& m, std::size_t col, std::size_t start, double tol) {
    if constexpr (is_rational_v<S>) {
        for (std::size_t i = start; i < m.rows(); ++i)
            if (m(i, col) != 0) return i;
        return m.rows();
    } else {
        std::size_t best = m.rows();
        double best_mag = tol;
        for (std::size_t i = start; i < m.rows(); ++i) {
            const double mag = std::fabs(m(i, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        return best;
    }
}

/// In-place reduced row echelon form. Returns the pivot columns.
template <ScalarField S>
std::vector<std::size_t> rref(Mat<S>& m, double tol) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        const std::size_t p = pivot_row(m, c, r, tol);
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const S inv = S(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        m(r, c) = S(1);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const S f = m(i, c);
            if (scalar_is_zero(f, 0.0)) continue;
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            m(i, c) = S(0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Unique solution x of M x = b. Exact over rationals.
template <ScalarField S>
Vec<S> solve_linear(const Mat<S>& m, const Vec<S>& b, double tol = kDefaultTol) {
    if (!m.is_square()) throw DimensionMismatch("solve_linear: matrix not square");
    if (b.size() != m.rows()) throw DimensionMismatch("solve_linear: rhs length mismatch");
    const std::size_t n = m.rows();
    Mat<S> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    const auto pivots = detail::rref(aug, tol);
    // Pivots must land exactly on the coefficient columns; a pivot in the
    // augmented column means the system is inconsistent.
    if (pivots.size() != n || pivots.back() != n - 1)
        throw SingularMatrix("solve_linear: no unique solution");
    Vec<S> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

/// Matrix inverse via Gauss-Jordan on [M | I].
template <ScalarField S>
Mat<S> invert(const Mat<S>& m, double tol = kDefaultTol) {
    if (!m.is_square()) throw DimensionMismatch("invert: matrix not square");
    const std::size_t n = m.rows();
    Mat<S> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = S(1);
    }
    const auto pivots = detail::rref(aug, tol);
    if (pivots.size() != n || pivots.back() >= n) throw SingularMatrix("invert: singular matrix");
    Mat<S> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Basis of the null space of M (deterministic: one vector per free column,
/// ascending). Empty list for a trivial kernel.
template <ScalarField S>
std::vector<Vec<S>> kernel_basis(const Mat<S>& m, double tol = kDefaultTol) {
    Mat<S> r = m;
    const auto pivots = detail::rref(r, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<Vec<S>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<S> v(m.cols());
        v[free] = S(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <ScalarField S>
std::size_t rank(const Mat<S>& m, double tol = kDefaultTol) {
    Mat<S> r = m;
    return detail::rref(r, tol).size();
}

// ── Random matrices ─────────────────────────────────────────────────────

template <ScalarField S>
Mat<S> random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Mat<S> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<S>(rng);
    return m;
}

template <ScalarField S>
Vec<S> random_vector(Rng& rng, std::size_t n) {
    Vec<S> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = random_scalar<S>(rng);
    return v;
}

/// Random square matrix retried until nonsingular.
template <ScalarField S>
Mat<S> random_nonsingular(Rng& rng, std::size_t n, double tol = kDefaultTol) {
    for (;;) {
        Mat<S> m = random_matrix<S>(rng, n, n);
        if (rank(m, tol) == n) return m;
    }
}

inline Mat<double> to_double(const Mat<Rational>& m) {
    Mat<double> d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
    return d;
}

inline Vec<double> to_double(const Vec<Rational>& v) {
    Vec<double> d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i].get_d();
    return d;
}

}  // namespace liouville
