#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "liouville/flow.hpp"
#include "liouville/instances.hpp"

using namespace liouville;

namespace {

QuadraticGenerator<double> model(SquareClass cls) {
    const auto space = SymplecticSpace<double>::standard(1);
    Mat<double> a(2, 2);
    switch (cls) {
        case SquareClass::Zero: a(0, 1) = 1.0; break;
        case SquareClass::PlusIdentity:
            a(0, 0) = 1.0;
            a(1, 1) = -1.0;
            break;
        case SquareClass::MinusIdentity:
            a(0, 1) = 1.0;
            a(1, 0) = -1.0;
            break;
        case SquareClass::Other:
            a(0, 1) = 2.0;
            a(1, 0) = -2.0;
            break;
    }
    return QuadraticGenerator<double>(space, a);
}

QuadraticGenerator<double> random_instance(SquareClass cls, Rng& rng, std::size_t m) {
    return to_double(generate_instance(SymplecticSpace<Rational>::standard(m), cls, rng));
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("expm basics") {
    CHECK(mat_close(expm(Mat<double>::zero(3, 3)), Mat<double>::identity(3), 1e-15));

    // J generates rotations: e^{tJ} = cos(t) I + sin(t) J.
    const auto j = model(SquareClass::MinusIdentity).matrix();
    for (const double t : {0.3, 1.0, kPi / 2.0, -2.5}) {
        const Mat<double> expected =
            std::cos(t) * Mat<double>::identity(2) + std::sin(t) * j;
        CHECK(mat_close(expm(t * j), expected, 1e-12));
    }
    const auto quarter = expm((kPi / 2.0) * j);
    CHECK(std::fabs(quarter(0, 1) - 1.0) <= 1e-9);
    CHECK(std::fabs(quarter(1, 0) + 1.0) <= 1e-9);
    CHECK(std::fabs(quarter(0, 0)) <= 1e-9);

    // The series truncates on nilpotents: e^N = I + N.
    const auto n = model(SquareClass::Zero).matrix();
    CHECK(mat_close(expm(n), Mat<double>::identity(2) + n, 1e-15));

    CHECK_THROWS_AS(expm(1e9 * Mat<double>::identity(2)), NonFiniteValue);
}

TEST_CASE("flow on the documented cases") {
    const auto space = SymplecticSpace<double>::standard(1);
    const QuadraticGenerator<double> zero_gen(space, Mat<double>::zero(2, 2));
    const Vec<double> z{0.7, -0.3};

    // Canonical flow is pure scaling by e^{t/2}.
    for (const double t : {0.0, 1.0, -2.0})
        CHECK(vec_close(flow(zero_gen, t, z), std::exp(0.5 * t) * z, 1e-12));

    for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                           SquareClass::MinusIdentity, SquareClass::Other}) {
        const auto gen = model(cls);
        CHECK(vec_close(flow(gen, 0.0, z), z, 1e-15));
        CHECK(mat_close(flow_map(gen, 0.0).matrix, Mat<double>::identity(2), 1e-15));
    }

    // Nilpotent closed form at t = 2: e (I - A) z.
    const auto nil = model(SquareClass::Zero);
    const Vec<double> start{0.0, 1.0};
    const double e1 = std::exp(1.0);
    CHECK(vec_close(flow(nil, 2.0, start), Vec<double>{-e1, e1}, 1e-12));
}

TEST_CASE("plus-class flow through the eigensplitting") {
    const auto gen = model(SquareClass::PlusIdentity);

    // V+ is fixed, V- scales by e^t.
    const Vec<double> plus{1.0, 0.0};
    const Vec<double> minus{0.0, 1.0};
    for (const double t : {0.5, 1.0, -1.5}) {
        CHECK(vec_close(flow_on_splitting(gen, t, plus), plus, 1e-12));
        CHECK(vec_close(flow_on_splitting(gen, t, minus), std::exp(t) * minus, 1e-12));
    }
    CHECK(vec_close(flow_on_splitting(gen, 1.0, Vec<double>{1.0, 1.0}),
                    Vec<double>{1.0, std::exp(1.0)}, 1e-12));

    Rng rng(3);
    for (int k = 0; k < 25; ++k) {
        const auto g = random_instance(SquareClass::PlusIdentity, rng, 2);
        const auto z = random_vector<double>(rng, 4);
        const double t = next_real(rng, -1.5, 1.5);
        CHECK(vec_close(flow_on_splitting(g, t, z), flow(g, t, z), 1e-9));
    }

    CHECK_THROWS_AS(flow_on_splitting(model(SquareClass::Zero), 1.0, plus), WrongClass);
}

TEST_CASE("flow group law") {
    Rng rng(7);
    for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                           SquareClass::MinusIdentity, SquareClass::Other}) {
        for (int k = 0; k < 50; ++k) {
            const auto gen = random_instance(cls, rng, 1 + next_below(rng, 2));
            const auto z = random_vector<double>(rng, gen.dim());
            const double s = next_real(rng, -1.5, 1.5);
            const double t = next_real(rng, -1.5, 1.5);
            CHECK(vec_close(flow(gen, s, flow(gen, t, z)), flow(gen, s + t, z), 1e-9));
        }
    }
}

TEST_CASE("flow scales omega and theta conformally") {
    Rng rng(11);
    for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                           SquareClass::MinusIdentity, SquareClass::Other}) {
        for (int k = 0; k < 25; ++k) {
            const auto gen = random_instance(cls, rng, 1 + next_below(rng, 2));
            const auto& space = gen.space();
            const auto u = random_vector<double>(rng, gen.dim());
            const auto v = random_vector<double>(rng, gen.dim());
            const auto z = random_vector<double>(rng, gen.dim());
            const double t = next_real(rng, -1.5, 1.5);
            const auto phi = flow_matrix(gen, t);

            const double scale = std::exp(t);
            CHECK(scalar_close(space.omega(phi * u, phi * v), scale * space.omega(u, v), 1e-9));
            CHECK(scalar_close(gen.theta(phi * z, phi * v), scale * gen.theta(z, v), 1e-9));
        }
    }
}

TEST_CASE("flow solves the Liouville ODE") {
    Rng rng(13);
    const double h = 1e-6;
    for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                           SquareClass::MinusIdentity, SquareClass::Other}) {
        for (int k = 0; k < 10; ++k) {
            const auto gen = random_instance(cls, rng, 1);
            const auto z = random_vector<double>(rng, 2);
            const Vec<double> slope = (1.0 / h) * (flow(gen, h, z) - z);
            CHECK((slope - gen.liouville_field(z)).max_abs() <= 1e-5);
        }
    }
}

TEST_CASE("closed forms agree with the generic exponential") {
    Rng rng(17);
    for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                           SquareClass::MinusIdentity}) {
        for (int k = 0; k < 20; ++k) {
            const auto gen = random_instance(cls, rng, 1 + next_below(rng, 2));
            const double t = next_real(rng, -1.5, 1.5);
            const Mat<double> generic =
                std::exp(0.5 * t) * expm((-0.5 * t) * gen.matrix());
            CHECK(mat_close(flow_matrix(gen, t), generic, 1e-9));
        }
    }
}
