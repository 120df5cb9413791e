#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "liouville/flow.hpp"
#include "liouville/polynomial.hpp"
#include "liouville/quadratic.hpp"

namespace liouville {

/// A smooth map with pointwise value and Jacobian access. Polynomial and
/// linear maps carry exact Jacobians (and exact directional derivatives of
/// the Jacobian); anything else falls back to central differences over
/// floats. Rational maps without an exact derivative source are refused
/// rather than silently approximated.
template <ScalarField S>
class SmoothMap {
  public:
    using EvalFn = std::function<Vec<S>(const Vec<S>&)>;
    using JacFn = std::function<Mat<S>(const Vec<S>&)>;
    using JacDirFn = std::function<Mat<S>(const Vec<S>&, const Vec<S>&)>;

    static SmoothMap identity(std::size_t n) { return linear(Mat<S>::identity(n)); }

    static SmoothMap linear(Mat<S> m) {
        SmoothMap f(m.cols(), m.rows());
        auto mat = std::make_shared<Mat<S>>(std::move(m));
        f.eval_ = [mat](const Vec<S>& z) { return *mat * z; };
        f.jac_ = [mat](const Vec<S>&) { return *mat; };
        f.jac_dir_ = [mat](const Vec<S>&, const Vec<S>&) {
            return Mat<S>::zero(mat->rows(), mat->cols());
        };
        f.exact_ = true;
        return f;
    }

    static SmoothMap polynomial(PolynomialMap<S> p) {
        SmoothMap f(p.dim_in(), p.dim_out());
        auto poly = std::make_shared<PolynomialMap<S>>(std::move(p));
        f.eval_ = [poly](const Vec<S>& z) { return poly->eval(z); };
        f.jac_ = [poly](const Vec<S>& z) { return poly->jacobian(z); };
        f.jac_dir_ = [poly](const Vec<S>& z, const Vec<S>& d) {
            return poly->jacobian_directional(z, d);
        };
        f.poly_ = poly;
        f.exact_ = true;
        return f;
    }

    /// Map given by closures with an analytic Jacobian (e.g. a cotangent
    /// lift, whose Jacobian is assembled by implicit differentiation).
    static SmoothMap analytic(std::size_t dim_in, std::size_t dim_out, EvalFn eval, JacFn jac,
                              JacDirFn jac_dir = nullptr, bool exact = true) {
        SmoothMap f(dim_in, dim_out);
        f.eval_ = std::move(eval);
        f.jac_ = std::move(jac);
        f.jac_dir_ = std::move(jac_dir);
        f.exact_ = exact;
        return f;
    }

    /// Black-box map; Jacobians by central differences with step
    /// h (1 + ‖z‖) per coordinate. Float-only.
    static SmoothMap numeric(std::size_t dim_in, std::size_t dim_out, EvalFn eval,
                             double step = kDefaultFdStep)
        requires std::same_as<S, double>
    {
        SmoothMap f(dim_in, dim_out);
        f.eval_ = std::move(eval);
        f.fd_step_ = step;
        f.exact_ = false;
        return f;
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    bool has_exact_jacobian() const { return exact_; }
    const PolynomialMap<S>* poly() const { return poly_ ? poly_.get() : nullptr; }

    Vec<S> operator()(const Vec<S>& z) const {
        if (z.size() != dim_in_) throw DimensionMismatch("SmoothMap: point length mismatch");
        Vec<S> w = eval_(z);
        if (w.size() != dim_out_) throw DimensionMismatch("SmoothMap: evaluator output length");
        return w;
    }

    Mat<S> jacobian(const Vec<S>& z) const {
        if (z.size() != dim_in_) throw DimensionMismatch("SmoothMap: point length mismatch");
        if (jac_) return jac_(z);
        return numeric_jacobian(z);
    }

    /// Directional derivative of the Jacobian at z along dir.
    Mat<S> jacobian_directional(const Vec<S>& z, const Vec<S>& dir) const {
        if (jac_dir_) return jac_dir_(z, dir);
        if constexpr (is_rational_v<S>) {
            throw Error("SmoothMap: no exact second derivative available over rationals");
        } else {
            const double h = fd_step_ * (1.0 + z.max_abs());
            return (1.0 / (2.0 * h)) * (jacobian(z + h * dir) - jacobian(z - h * dir));
        }
    }

    /// outer ∘ inner; symbolic when both sides are polynomial.
    static SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
        if (inner.dim_out_ != outer.dim_in_) throw DimensionMismatch("SmoothMap::compose");
        if (outer.poly() && inner.poly()) return polynomial(outer.poly()->compose(*inner.poly()));
        SmoothMap f(inner.dim_in_, outer.dim_out_);
        auto o = std::make_shared<SmoothMap>(outer);
        auto i = std::make_shared<SmoothMap>(inner);
        f.eval_ = [o, i](const Vec<S>& z) { return (*o)((*i)(z)); };
        f.jac_ = [o, i](const Vec<S>& z) {
            const Vec<S> w = (*i)(z);
            return o->jacobian(w) * i->jacobian(z);
        };
        f.jac_dir_ = [o, i](const Vec<S>& z, const Vec<S>& d) {
            const Vec<S> w = (*i)(z);
            const Mat<S> ji = i->jacobian(z);
            return o->jacobian_directional(w, ji * d) * ji + o->jacobian(w) * i->jacobian_directional(z, d);
        };
        f.exact_ = outer.exact_ && inner.exact_;
        return f;
    }

  private:
    SmoothMap(std::size_t dim_in, std::size_t dim_out) : dim_in_(dim_in), dim_out_(dim_out) {}

    Mat<S> numeric_jacobian(const Vec<S>& z) const {
        if constexpr (is_rational_v<S>) {
            throw Error("SmoothMap: no exact Jacobian available over rationals");
        } else {
            const double h = fd_step_ * (1.0 + z.max_abs());
            Mat<S> j(dim_out_, dim_in_);
            for (std::size_t k = 0; k < dim_in_; ++k) {
                Vec<S> zp = z, zm = z;
                zp[k] += h;
                zm[k] -= h;
                const Vec<S> d = (1.0 / (2.0 * h)) * ((*this)(zp) - (*this)(zm));
                j.set_column(k, d);
            }
            return j;
        }
    }

    std::size_t dim_in_, dim_out_;
    EvalFn eval_;
    JacFn jac_;
    JacDirFn jac_dir_;
    std::shared_ptr<PolynomialMap<S>> poly_;
    double fd_step_ = kDefaultFdStep;
    bool exact_ = false;
};

// ── Automorphism residuals ──────────────────────────────────────────────
//
// A diffeomorphism g preserves the Liouville structure of a generator A iff
// these residuals vanish. They are reported raw (Ω-units) and in a relative
// form divided by (1 + |reference|); pass/fail decisions use the relative
// form so thresholds stay scale-free.

enum class Condition { Pullback, Pushforward, FlowEquivariance };

inline std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::Pullback: return "pullback";
        case Condition::Pushforward: return "pushforward";
        case Condition::FlowEquivariance: return "flow_equivariance";
    }
    return "pullback";
}

template <ScalarField S>
struct Residual {
    S raw;
    S rel;
};

template <ScalarField S>
struct ResidualSample {
    Vec<S> point;
    S raw;
    S rel;
    Condition condition;
};

template <ScalarField S>
std::vector<Vec<S>> standard_probes(std::size_t n) {
    std::vector<Vec<S>> probes;
    probes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) probes.push_back(Vec<S>::unit(n, i));
    return probes;
}

/// Form-preservation residual: max over probe directions v of
/// |Ω(g(z) - A g(z), g'_z v) - Ω(z - A z, v)|.
template <ScalarField S>
Residual<S> pullback_residual(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g,
                              const Vec<S>& z, const std::vector<Vec<S>>& probes) {
    if (probes.empty()) throw InvalidInput("pullback_residual: empty probe set");
    const auto& space = gen.space();
    const auto& a = gen.matrix();
    const Vec<S> gz = g(z);
    const Vec<S> lhs_base = gz - a * gz;
    const Vec<S> rhs_base = z - a * z;
    const Mat<S> jac = g.jacobian(z);

    Residual<S> r{S(0), S(0)};
    for (const auto& v : probes) {
        const S lhs = space.omega(lhs_base, jac * v);
        const S rhs = space.omega(rhs_base, v);
        const S raw = abs_value(lhs - rhs);
        const S rel = raw / (S(1) + abs_value(rhs));
        if (raw > r.raw) r.raw = raw;
        if (rel > r.rel) r.rel = rel;
    }
    return r;
}

template <ScalarField S>
Residual<S> pullback_residual(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g,
                              const Vec<S>& z) {
    return pullback_residual(gen, g, z, standard_probes<S>(gen.dim()));
}

/// Field-preservation residual: ‖g'_z (z - Az) - (g(z) - A g(z))‖.
template <ScalarField S>
Residual<S> pushforward_residual(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g,
                                 const Vec<S>& z) {
    const auto& a = gen.matrix();
    const Vec<S> gz = g(z);
    const Vec<S> rhs = gz - a * gz;
    const Vec<S> lhs = g.jacobian(z) * (z - a * z);
    const S raw = (lhs - rhs).max_abs();
    return Residual<S>{raw, raw / (S(1) + rhs.max_abs())};
}

/// Flow-preservation residual: ‖g(Φ_t z) - Φ_t g(z)‖ (float-only, like the
/// flow itself).
inline Residual<double> flow_equivariance_residual(const QuadraticGenerator<double>& gen,
                                                   const SmoothMap<double>& g, double t,
                                                   const Vec<double>& z) {
    const Mat<double> phi = flow_matrix(gen, t);
    const Vec<double> lhs = g(phi * z);
    const Vec<double> rhs = phi * g(z);
    const double raw = (lhs - rhs).max_abs();
    return Residual<double>{raw, raw / (1.0 + rhs.max_abs())};
}

/// Pullback and pushforward residuals of one candidate map, sampled over a
/// point set.
template <ScalarField S>
std::vector<ResidualSample<S>> residual_samples(const QuadraticGenerator<S>& gen,
                                                const SmoothMap<S>& g,
                                                const std::vector<Vec<S>>& points) {
    std::vector<ResidualSample<S>> out;
    out.reserve(2 * points.size());
    for (const auto& z : points) {
        const auto pull = pullback_residual(gen, g, z);
        out.push_back(ResidualSample<S>{z, pull.raw, pull.rel, Condition::Pullback});
        const auto push = pushforward_residual(gen, g, z);
        out.push_back(ResidualSample<S>{z, push.raw, push.rel, Condition::Pushforward});
    }
    return out;
}

}  // namespace liouville
