#pragma once

#include <json.hpp>

#include <string>

#include "liouville/polynomial.hpp"
#include "liouville/quadratic.hpp"

namespace liouville {

/// Insertion-ordered JSON keeps emitted reports byte-stable.
using Json = nlohmann::ordered_json;

// Rationals travel as strings "p/q" (or "p"); floats as JSON numbers.

template <ScalarField S>
Json scalar_to_json(const S& x) {
    if constexpr (is_rational_v<S>) {
        return to_string(x);
    } else {
        ensure_finite(x, "scalar_to_json");
        return x;
    }
}

template <ScalarField S>
S scalar_from_json(const Json& j) {
    if constexpr (is_rational_v<S>) {
        if (j.is_string()) return rational_from_string(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
        throw InvalidInput("expected rational scalar as \"p/q\" string");
    } else {
        if (j.is_number()) {
            const double x = j.get<double>();
            ensure_finite(x, "scalar_from_json");
            return x;
        }
        if (j.is_string()) return to_double(rational_from_string(j.get<std::string>()));
        throw InvalidInput("expected float scalar");
    }
}

template <ScalarField S>
Json vec_to_json(const Vec<S>& v) {
    Json j = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) j.push_back(scalar_to_json(v[i]));
    return j;
}

template <ScalarField S>
Vec<S> vec_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("expected vector as JSON array");
    Vec<S> v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json<S>(j[i]);
    return v;
}

template <ScalarField S>
Json mat_to_json(const Mat<S>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ScalarField S>
Mat<S> mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected matrix as array of row arrays");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat<S> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw InvalidInput("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<S>(j[i][k]);
    }
    return m;
}

template <ScalarField S>
Json space_to_json(const SymplecticSpace<S>& space) {
    return Json{{"dim", space.dim()}, {"gram", mat_to_json(space.gram())}};
}

template <ScalarField S>
SymplecticSpace<S> space_from_json(const Json& j, double tol = kDefaultTol) {
    if (!j.contains("gram")) {
        if (!j.contains("dim")) throw InvalidInput("space: need \"dim\" or \"gram\"");
        const std::size_t dim = j.at("dim").get<std::size_t>();
        if (dim == 0 || dim % 2 != 0) throw InvalidInput("space: dimension must be even positive");
        return SymplecticSpace<S>::standard(dim / 2);
    }
    auto space = SymplecticSpace<S>(mat_from_json<S>(j.at("gram")), tol);
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != space.dim())
        throw InvalidInput("space: dim does not match gram size");
    return space;
}

template <ScalarField S>
Json generator_to_json(const QuadraticGenerator<S>& gen) {
    return Json{{"A", mat_to_json(gen.matrix())},
                {"class", std::string(to_string(gen.square_class()))}};
}

/// Reads {"A": [[...]], "class"?: ...}; a declared class is cross-checked
/// against the computed one.
template <ScalarField S>
QuadraticGenerator<S> generator_from_json(const SymplecticSpace<S>& space, const Json& j,
                                          double tol = kDefaultTol) {
    if (!j.contains("A")) throw InvalidInput("generator: missing \"A\"");
    QuadraticGenerator<S> gen(space, mat_from_json<S>(j.at("A")), tol);
    if (j.contains("class")) {
        const auto declared = square_class_from_string(j.at("class").get<std::string>());
        if (declared != gen.square_class())
            throw InvalidInput("generator: declared class does not match A²");
    }
    return gen;
}

template <ScalarField S>
Json sp_element_to_json(const SpElement<S>& e) {
    return Json{{"mat", mat_to_json(e.mat)}, {"checked", true}};
}

template <ScalarField S>
Json polymap_to_json(const PolynomialMap<S>& f) {
    Json terms = Json::array();
    for (std::size_t i = 0; i < f.dim_out(); ++i)
        for (const auto& [e, c] : f.components()[i].terms())
            terms.push_back(Json{{"out", i}, {"monomial", e}, {"coeff", scalar_to_json(c)}});
    return Json{{"dim_in", f.dim_in()}, {"dim_out", f.dim_out()}, {"terms", std::move(terms)}};
}

template <ScalarField S>
PolynomialMap<S> polymap_from_json(const Json& j) {
    const std::size_t dim_in = j.at("dim_in").get<std::size_t>();
    const std::size_t dim_out = j.at("dim_out").get<std::size_t>();
    std::vector<Polynomial<S>> comps(dim_out, Polynomial<S>(dim_in));
    for (const auto& term : j.at("terms")) {
        const std::size_t out = term.at("out").get<std::size_t>();
        if (out >= dim_out) throw InvalidInput("polynomial map: term output index out of range");
        auto exps = term.at("monomial").get<std::vector<unsigned>>();
        if (exps.size() != dim_in) throw InvalidInput("polynomial map: monomial arity mismatch");
        comps[out].add_term(std::move(exps), scalar_from_json<S>(term.at("coeff")));
    }
    return PolynomialMap<S>(dim_in, std::move(comps));
}

}  // namespace liouville
