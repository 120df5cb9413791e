#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "liouville/linalg.hpp"

namespace liouville {

template <ScalarField S>
S scalar_pow(S base, unsigned e) {
    S r(1);
    while (e > 0) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

/// Multivariate polynomial with exact coefficient arithmetic. Terms are kept
/// in a map keyed by the exponent vector, so iteration order (and hence
/// serialization) is deterministic.
template <ScalarField S>
class Polynomial {
  public:
    using Exponents = std::vector<unsigned>;

    explicit Polynomial(std::size_t vars = 0) : vars_(vars) {}

    static Polynomial constant(std::size_t vars, S c) {
        Polynomial p(vars);
        p.add_term(Exponents(vars, 0u), std::move(c));
        return p;
    }
    static Polynomial variable(std::size_t vars, std::size_t i) {
        Polynomial p(vars);
        Exponents e(vars, 0u);
        e[i] = 1u;
        p.add_term(std::move(e), S(1));
        return p;
    }

    std::size_t vars() const { return vars_; }
    const std::map<Exponents, S>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Exponents e, S c) {
        if (e.size() != vars_) throw DimensionMismatch("Polynomial::add_term: exponent arity");
        if (scalar_is_zero(c, 0.0)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (scalar_is_zero(it->second, 0.0)) terms_.erase(it);
        }
    }

    S eval(const Vec<S>& x) const {
        if (x.size() != vars_) throw DimensionMismatch("Polynomial::eval: point arity");
        S acc(0);
        for (const auto& [e, c] : terms_) {
            S t = c;
            for (std::size_t i = 0; i < vars_; ++i)
                if (e[i] > 0) t *= scalar_pow(x[i], e[i]);
            acc += t;
        }
        return acc;
    }

    /// Analytic partial derivative with respect to variable i.
    Polynomial partial(std::size_t i) const {
        Polynomial d(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents de = e;
            de[i] -= 1u;
            d.add_term(std::move(de), c * S(static_cast<long>(e[i])));
        }
        return d;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_arity(b);
        Polynomial p(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.vars_);
                for (std::size_t i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
                p.add_term(std::move(e), ca * cb);
            }
        return p;
    }
    friend Polynomial operator*(const S& s, Polynomial p) {
        if (scalar_is_zero(s, 0.0)) return Polynomial(p.vars_);
        for (auto& [e, c] : p.terms_) c *= s;
        return p;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(vars_, S(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    /// Substitution: x_i := args[i]. All substituted polynomials must share
    /// the same arity, which becomes the arity of the result.
    Polynomial compose(const std::vector<Polynomial>& args) const {
        if (args.size() != vars_) throw DimensionMismatch("Polynomial::compose: arity mismatch");
        const std::size_t inner_vars = args.empty() ? 0 : args.front().vars();
        Polynomial r(inner_vars);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(inner_vars, c);
            for (std::size_t i = 0; i < vars_; ++i)
                if (e[i] > 0) t = t * args[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned t = 0;
            for (auto x : e) t += x;
            if (t > d) d = t;
        }
        return d;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  private:
    void check_arity(const Polynomial& o) const {
        if (vars_ != o.vars_) throw DimensionMismatch("Polynomial: arity mismatch");
    }

    std::size_t vars_;
    std::map<Exponents, S> terms_;
};

/// A polynomial map R^n -> R^k with analytic Jacobian and directional
/// derivative of the Jacobian (used where second derivatives are needed,
/// e.g. differentiating a cotangent lift).
template <ScalarField S>
class PolynomialMap {
  public:
    PolynomialMap(std::size_t dim_in, std::vector<Polynomial<S>> components)
        : dim_in_(dim_in), components_(std::move(components)) {
        for (const auto& p : components_)
            if (p.vars() != dim_in_) throw DimensionMismatch("PolynomialMap: component arity");
        jac_.reserve(components_.size());
        for (const auto& p : components_) {
            std::vector<Polynomial<S>> row;
            row.reserve(dim_in_);
            for (std::size_t j = 0; j < dim_in_; ++j) row.push_back(p.partial(j));
            jac_.push_back(std::move(row));
        }
    }

    static PolynomialMap identity(std::size_t n) {
        std::vector<Polynomial<S>> comps;
        comps.reserve(n);
        for (std::size_t i = 0; i < n; ++i) comps.push_back(Polynomial<S>::variable(n, i));
        return PolynomialMap(n, std::move(comps));
    }

    static PolynomialMap linear(const Mat<S>& m) {
        std::vector<Polynomial<S>> comps;
        comps.reserve(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Polynomial<S> p(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j) {
                typename Polynomial<S>::Exponents e(m.cols(), 0u);
                e[j] = 1u;
                p.add_term(std::move(e), m(i, j));
            }
            comps.push_back(std::move(p));
        }
        return PolynomialMap(m.cols(), std::move(comps));
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return components_.size(); }
    const std::vector<Polynomial<S>>& components() const { return components_; }

    Vec<S> eval(const Vec<S>& x) const {
        Vec<S> y(dim_out());
        for (std::size_t i = 0; i < dim_out(); ++i) y[i] = components_[i].eval(x);
        return y;
    }

    Mat<S> jacobian(const Vec<S>& x) const {
        Mat<S> j(dim_out(), dim_in_);
        for (std::size_t i = 0; i < dim_out(); ++i)
            for (std::size_t k = 0; k < dim_in_; ++k) j(i, k) = jac_[i][k].eval(x);
        return j;
    }

    /// Directional derivative of the Jacobian:
    /// result(i, j) = Σ_l ∂²f_i / (∂x_j ∂x_l) (x) · dir_l.
    Mat<S> jacobian_directional(const Vec<S>& x, const Vec<S>& dir) const {
        if (dir.size() != dim_in_) throw DimensionMismatch("jacobian_directional: direction arity");
        Mat<S> m(dim_out(), dim_in_);
        for (std::size_t i = 0; i < dim_out(); ++i)
            for (std::size_t j = 0; j < dim_in_; ++j) {
                S acc(0);
                for (std::size_t l = 0; l < dim_in_; ++l) {
                    if (scalar_is_zero(dir[l], 0.0)) continue;
                    acc += jac_[i][j].partial(l).eval(x) * dir[l];
                }
                m(i, j) = acc;
            }
        return m;
    }

    /// Symbolic composition (*this) ∘ inner.
    PolynomialMap compose(const PolynomialMap& inner) const {
        if (inner.dim_out() != dim_in_) throw DimensionMismatch("PolynomialMap::compose");
        std::vector<Polynomial<S>> comps;
        comps.reserve(dim_out());
        for (const auto& p : components_) comps.push_back(p.compose(inner.components_));
        return PolynomialMap(inner.dim_in_, std::move(comps));
    }

  private:
    std::size_t dim_in_;
    std::vector<Polynomial<S>> components_;
    std::vector<std::vector<Polynomial<S>>> jac_;
};

}  // namespace liouville
