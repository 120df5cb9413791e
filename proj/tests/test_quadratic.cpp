#include <catch2/catch_amalgamated.hpp>

#include "liouville/instances.hpp"
#include "liouville/json_io.hpp"
#include "liouville/quadratic.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

const Mat<Rational> kJ2 = Mat<Rational>::from_rows({{Rational(0), Rational(1)},
                                                    {Rational(-1), Rational(0)}});
const Mat<Rational> kNil = Mat<Rational>::from_rows({{Rational(0), Rational(1)},
                                                     {Rational(0), Rational(0)}});

Mat<Rational> diag_pm() {
    Mat<Rational> d(2, 2);
    d(0, 0) = Rational(1);
    d(1, 1) = Rational(-1);
    return d;
}

}  // namespace

TEST_CASE("classify_square on the three 2x2 model operators") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    CHECK(classify_square(space, kNil) == SquareClass::Zero);
    CHECK(classify_square(space, diag_pm()) == SquareClass::PlusIdentity);
    CHECK(classify_square(space, kJ2) == SquareClass::MinusIdentity);
    CHECK_THROWS_AS(classify_square(space, Mat<Rational>::identity(2)), NotInSp);

    // An sp element with a generic square.
    const auto other = Rational(2) * kJ2;
    CHECK(classify_square(space, other) == SquareClass::Other);
}

TEST_CASE("float classification uses the tolerance knob") {
    const auto space = SymplecticSpace<double>::standard(1);
    Mat<double> a(2, 2);
    a(0, 0) = 1.0 + 1e-12;
    a(1, 1) = -1.0 - 1e-12;
    CHECK(classify_square(space, a) == SquareClass::PlusIdentity);

    a(0, 0) = 1.0 + 1e-3;
    a(1, 1) = -1.0 - 1e-3;
    CHECK(classify_square(space, a) == SquareClass::Other);
}

TEST_CASE("psi matches its closed form") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> gen_j(space, kJ2);
    const QuadraticGenerator<Rational> gen_d(space, diag_pm());

    CHECK(gen_j.psi(Vec<Rational>::zero(2)) == 0);
    CHECK(gen_j.psi(Vec<Rational>{Rational(1), Rational(0)}) == rational(-1, 4));
    CHECK(gen_d.psi(Vec<Rational>{Rational(1), Rational(1)}) == rational(-1, 2));
}

TEST_CASE("dpsi matches its closed form and finite differences") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> gen(space, diag_pm());
    CHECK(gen.dpsi(Vec<Rational>{Rational(1), Rational(1)}, Vec<Rational>::zero(2)) == 0);
    CHECK(gen.dpsi(Vec<Rational>{Rational(1), Rational(1)},
                   Vec<Rational>{Rational(1), Rational(0)}) == rational(-1, 2));

    // Central differences of psi reproduce dpsi at 50 random float points.
    Rng rng(41);
    const auto space_d = SymplecticSpace<double>::standard(2);
    const auto a = to_double(random_sp_element(SymplecticSpace<Rational>::standard(2), rng).mat);
    const QuadraticGenerator<double> gen_d(space_d, a);
    for (int k = 0; k < 50; ++k) {
        const auto z = random_vector<double>(rng, 4);
        const auto v = random_vector<double>(rng, 4);
        const double fd = oracles::fd_directional(
            [&](const Vec<double>& p) { return gen_d.psi(p); }, z, v, 1e-5);
        CHECK(std::fabs(fd - gen_d.dpsi(z, v)) <= 1e-6);
    }
}

TEST_CASE("theta matches its closed form") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> zero_gen(space, Mat<Rational>::zero(2, 2));
    CHECK(zero_gen.theta(Vec<Rational>{Rational(1), Rational(0)},
                         Vec<Rational>{Rational(0), Rational(1)}) == rational(1, 2));

    const QuadraticGenerator<Rational> gen(space, diag_pm());
    CHECK(gen.theta(Vec<Rational>{Rational(1), Rational(1)}, Vec<Rational>::zero(2)) == 0);
    CHECK(gen.theta(Vec<Rational>{Rational(1), Rational(1)},
                    Vec<Rational>{Rational(1), Rational(0)}) == Rational(-1));
}

TEST_CASE("liouville_field is half of (I - A)") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> zero_gen(space, Mat<Rational>::zero(2, 2));
    const QuadraticGenerator<Rational> nil_gen(space, kNil);

    CHECK(nil_gen.liouville_field(Vec<Rational>::zero(2)).is_zero(0.0));
    // Canonical case: half the Euler field.
    Rng rng(43);
    for (int k = 0; k < 10; ++k) {
        const auto z = random_vector<Rational>(rng, 2);
        CHECK(zero_gen.liouville_field(z) == fraction<Rational>(1, 2) * z);
    }
    CHECK(nil_gen.liouville_field(Vec<Rational>{Rational(1), Rational(1)}) ==
          Vec<Rational>{Rational(0), rational(1, 2)});
}

TEST_CASE("structural identities hold exactly on random data") {
    Rng rng(47);
    const auto space = SymplecticSpace<Rational>::standard(2);
    const QuadraticGenerator<Rational> zero_gen(space, Mat<Rational>::zero(4, 4));
    for (int k = 0; k < 100; ++k) {
        const auto a = random_sp_element(space, rng).mat;
        const QuadraticGenerator<Rational> gen(space, a);
        const auto z = random_vector<Rational>(rng, 4);
        const auto v = random_vector<Rational>(rng, 4);

        // theta = theta0 + dpsi.
        CHECK(gen.theta(z, v) == zero_gen.theta(z, v) + gen.dpsi(z, v));
        // Contraction of the field against omega gives theta.
        CHECK(space.omega(gen.liouville_field(z), v) == gen.theta(z, v));
        // The Hessian form (x, y) -> omega(x, Ay) is symmetric on sp.
        CHECK(space.omega(z, a * v) == space.omega(v, a * z));
    }
}

TEST_CASE("square class is invariant under symplectic conjugation") {
    Rng rng(53);
    const auto space = SymplecticSpace<Rational>::standard(2);
    for (const auto cls :
         {SquareClass::Zero, SquareClass::PlusIdentity, SquareClass::MinusIdentity}) {
        for (int k = 0; k < 10; ++k) {
            const auto gen = generate_instance(space, cls, rng);
            const auto g = random_rational_Sp(space, rng);
            const auto conj = invert(g) * gen.matrix() * g;
            CHECK(classify_square(space, conj) == cls);
        }
    }
}

TEST_CASE("generator JSON encodes the matrix and its class") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> gen(space, kJ2);
    const auto j = generator_to_json(gen);
    CHECK(j.at("class") == "minus");

    const auto back = generator_from_json<Rational>(space, j);
    CHECK(back.matrix() == kJ2);

    Json bad = j;
    bad["class"] = "zero";
    CHECK_THROWS_AS(generator_from_json<Rational>(space, bad), InvalidInput);
}

TEST_CASE("canonical structure is the zero generator") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const auto canonical = canonical_structure(space);
    CHECK(canonical.generator.square_class() == SquareClass::Zero);
    CHECK(canonical.generator.theta(Vec<Rational>{Rational(1), Rational(0)},
                                    Vec<Rational>{Rational(0), Rational(1)}) == rational(1, 2));
}
