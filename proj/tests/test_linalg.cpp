#include <catch2/catch_amalgamated.hpp>

#include "liouville/json_io.hpp"
#include "liouville/linalg.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("rational scalars stay canonical") {
    CHECK(rational(3, -6) == rational(-1, 2));
    CHECK(rational(3, -6).get_den() == 2);  // positive denominator
    CHECK(to_string(rational_from_string("-3/4")) == "-3/4");
    CHECK(rational_from_string("5") == Rational(5));
    CHECK_THROWS_AS(rational_from_string("1/0"), InvalidInput);
    CHECK_THROWS_AS(rational(1, 0), InvalidInput);
}

TEST_CASE("float values must stay finite") {
    CHECK_THROWS_AS(ensure_finite(std::numeric_limits<double>::quiet_NaN(), "test"),
                    NonFiniteValue);
    CHECK_THROWS_AS(ensure_finite(std::numeric_limits<double>::infinity(), "test"),
                    NonFiniteValue);
    CHECK_NOTHROW(ensure_finite(1.0e300, "test"));
}

TEST_CASE("solve_linear on the documented systems") {
    SECTION("identity") {
        const auto id = Mat<Rational>::identity(2);
        const Vec<Rational> b{Rational(3), Rational(4)};
        CHECK(solve_linear(id, b) == b);
    }
    SECTION("diagonal back-substitution") {
        const auto m = Mat<Rational>::from_rows({{Rational(2), Rational(0)},
                                                 {Rational(0), Rational(4)}});
        const Vec<Rational> b{Rational(1), Rational(1)};
        const Vec<Rational> expected{rational(1, 2), rational(1, 4)};
        CHECK(solve_linear(m, b) == expected);
    }
    SECTION("rank-deficient") {
        const auto m = Mat<Rational>::from_rows({{Rational(1), Rational(1)},
                                                 {Rational(1), Rational(1)}});
        CHECK_THROWS_AS(solve_linear(m, Vec<Rational>{Rational(1), Rational(0)}), SingularMatrix);
    }
    SECTION("dimension mismatches are rejected") {
        CHECK_THROWS_AS(solve_linear(Mat<Rational>(2, 3), Vec<Rational>(2)), DimensionMismatch);
        CHECK_THROWS_AS(solve_linear(Mat<Rational>::identity(2), Vec<Rational>(3)),
                        DimensionMismatch);
    }
}

TEST_CASE("invert on the documented matrices") {
    CHECK(invert(Mat<Rational>::identity(3)) == Mat<Rational>::identity(3));

    const auto j = Mat<Rational>::from_rows({{Rational(0), Rational(1)},
                                             {Rational(-1), Rational(0)}});
    const auto j_inv = Mat<Rational>::from_rows({{Rational(0), Rational(-1)},
                                                 {Rational(1), Rational(0)}});
    CHECK(invert(j) == j_inv);

    CHECK_THROWS_AS(invert(Mat<Rational>::zero(2, 2)), SingularMatrix);
}

TEST_CASE("kernel_basis on the documented matrices") {
    CHECK(kernel_basis(Mat<Rational>::identity(2)).empty());
    CHECK(kernel_basis(Mat<Rational>::zero(2, 2)).size() == 2);

    const auto n = Mat<Rational>::from_rows({{Rational(0), Rational(1)},
                                             {Rational(0), Rational(0)}});
    const auto basis = kernel_basis(n);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == Vec<Rational>{Rational(1), Rational(0)});
}

TEST_CASE("exact solve and inverse round trips on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + next_below(rng, 6);
        const auto m = random_nonsingular<Rational>(rng, n);
        const auto b = random_vector<Rational>(rng, n);
        CHECK(m * solve_linear(m, b) == b);

        const auto inv = invert(m);
        CHECK(inv * m == Mat<Rational>::identity(n));
        CHECK(m * inv == Mat<Rational>::identity(n));
    }
}

TEST_CASE("rank-nullity against the fraction-free oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 1 + next_below(rng, 8);
        const std::size_t cols = 1 + next_below(rng, 8);
        // Mix in low-rank products so kernels are often nontrivial.
        Mat<Rational> m(rows, cols);
        if (trial % 2 == 0) {
            m = random_matrix<Rational>(rng, rows, cols);
        } else {
            const std::size_t k = 1 + next_below(rng, std::min(rows, cols));
            m = random_matrix<Rational>(rng, rows, k) * random_matrix<Rational>(rng, k, cols);
        }
        const auto basis = kernel_basis(m);
        CHECK(basis.size() + oracles::bareiss_rank(m) == cols);
        CHECK(basis.size() + rank(m) == cols);
        for (const auto& v : basis) CHECK((m * v).is_zero(0.0));
    }
}

TEST_CASE("float elimination pivots by magnitude") {
    const auto m = Mat<double>::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const Vec<double> b{2.0, 3.0};
    const auto x = solve_linear(m, b);
    CHECK(vec_close(x, Vec<double>{3.0, 2.0}));

    const auto near_singular = Mat<double>::from_rows({{1.0, 1.0}, {1.0, 1.0 + 1e-12}});
    CHECK_THROWS_AS(solve_linear(near_singular, b), SingularMatrix);
}

TEST_CASE("matrix and vector JSON round trips") {
    Rng rng(5);
    const auto m = random_matrix<Rational>(rng, 3, 2);
    CHECK(mat_from_json<Rational>(mat_to_json(m)) == m);

    const auto v = random_vector<double>(rng, 4);
    CHECK(vec_close(vec_from_json<double>(vec_to_json(v)), v, 0.0));

    // Declared encoding: rationals as "p/q" strings, matrices as row arrays.
    const auto j = mat_to_json(Mat<Rational>::from_rows({{rational(-3, 4)}}));
    CHECK(j[0][0].get<std::string>() == "-3/4");
}
