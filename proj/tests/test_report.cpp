#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "liouville/report.hpp"

using namespace liouville;

TEST_CASE("instance generation delivers the requested class") {
    Rng rng(3);
    for (std::size_t m : {1u, 2u, 3u}) {
        const auto space = SymplecticSpace<Rational>::standard(m);
        for (const auto cls : {SquareClass::Zero, SquareClass::PlusIdentity,
                               SquareClass::MinusIdentity, SquareClass::Other}) {
            for (int k = 0; k < 5; ++k) {
                const auto gen = generate_instance(space, cls, rng);
                CHECK(gen.square_class() == cls);
                CHECK(space.in_sp(gen.matrix()));
            }
        }
    }

    // Block construction squared: A² = -I exactly at m = 2.
    Rng rng2(5);
    const auto space = SymplecticSpace<Rational>::standard(2);
    const auto minus = generate_instance(space, SquareClass::MinusIdentity, rng2);
    CHECK(minus.matrix() * minus.matrix() == -Mat<Rational>::identity(4));

    // Conjugated plus instances keep half-dimensional eigenspaces.
    const auto plus = generate_instance(space, SquareClass::PlusIdentity, rng2);
    CHECK(kernel_basis(plus.matrix() - Mat<Rational>::identity(4)).size() == 2);
    CHECK(kernel_basis(plus.matrix() + Mat<Rational>::identity(4)).size() == 2);
}

TEST_CASE("transvections sample the symplectic group exactly") {
    Rng rng(7);
    for (std::size_t m : {1u, 2u, 3u}) {
        const auto space = SymplecticSpace<Rational>::standard(m);
        for (int k = 0; k < 10; ++k) {
            const auto u = random_vector<Rational>(rng, 2 * m);
            CHECK(space.in_Sp(transvection(space, u, random_rational(rng))));
            CHECK(space.in_Sp(random_rational_Sp(space, rng)));
        }
    }
}

TEST_CASE("triangular diffeos have everywhere-invertible Jacobians") {
    Rng rng(11);
    for (std::size_t m : {1u, 2u, 3u}) {
        for (int k = 0; k < 10; ++k) {
            const auto f = random_triangular_diffeo(m, rng);
            const auto z = random_vector<Rational>(rng, m);
            const auto j = f.jacobian(z);
            // Lower triangular with positive diagonal.
            for (std::size_t r = 0; r < m; ++r) {
                CHECK(j(r, r) > 0);
                for (std::size_t c = r + 1; c < m; ++c) CHECK(j(r, c) == 0);
            }
        }
    }
}

TEST_CASE("rational suite passes and stays deterministic") {
    SuiteConfig cfg;
    cfg.scalar = ScalarKind::Rational;
    cfg.dim = 4;
    cfg.trials = 3;
    cfg.seed = 12345;

    const auto a = run_suite(cfg);
    CHECK(a.all_passed());
    CHECK(a.checks_failed == 0);
    CHECK(a.checks_passed > 0);

    const auto b = run_suite(cfg);
    Json ja = a.to_json();
    Json jb = b.to_json();
    ja["summary"].erase("wall_time_ms");
    jb["summary"].erase("wall_time_ms");
    CHECK(ja == jb);
    CHECK(ja.dump() == jb.dump());  // byte-identical apart from wall time

    SuiteConfig other = cfg;
    other.seed = 54321;
    Json jc = run_suite(other).to_json();
    jc["summary"].erase("wall_time_ms");
    CHECK(jc != ja);
}

TEST_CASE("float suite passes within tolerance") {
    SuiteConfig cfg;
    cfg.scalar = ScalarKind::Float64;
    cfg.dim = 2;
    cfg.trials = 5;
    cfg.seed = 99;

    const auto report = run_suite(cfg);
    CHECK(report.all_passed());
    REQUIRE(report.max_rel_residual.is_number());
    // The aggregate spans every float check, including the ODE slope check
    // with its own pinned 1e-5 threshold.
    CHECK(report.max_rel_residual.get<double>() <= 1e-5);
}

TEST_CASE("negative controls pass by failing") {
    const auto controls = run_negative_controls(kDefaultTol);
    CHECK(controls.pass);
    for (const auto& c : controls.checks) CHECK(c.pass);

    // Every failure report carries its witness point; force one by running
    // a member check against the wrong generator.
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> gen(space, space.gram());
    std::vector<CheckRecord> checks;
    detail::member_checks(gen, shear_map<Rational>(Rational(1)), "shear",
                          {Vec<Rational>{Rational(1), Rational(0)}}, kDefaultTol, checks);
    REQUIRE(checks.size() == 2);
    CHECK_FALSE(checks[0].pass);
    CHECK_FALSE(checks[0].witness.is_null());
}

TEST_CASE("suite report schema and file output") {
    SuiteConfig cfg;
    cfg.scalar = ScalarKind::Rational;
    cfg.dim = 2;
    cfg.class_filter = SquareClass::PlusIdentity;
    cfg.trials = 2;
    cfg.seed = 7;

    const auto report = run_suite(cfg);
    const Json j = report.to_json();
    CHECK(j.at("config").at("scalar") == "rational");
    CHECK(j.at("config").at("class") == "plus");
    REQUIRE(j.at("trials").is_array());
    // Per-trial records carry the generator hash and per-check residuals.
    const auto& first = j.at("trials").at(0);
    CHECK(first.contains("generator"));
    CHECK(first.at("checks").at(0).contains("raw"));
    const auto& summary = j.at("summary");
    CHECK(summary.at("checks_passed").get<int>() + summary.at("checks_failed").get<int>() > 0);
    CHECK(summary.contains("wall_time_ms"));

    const auto path = std::filesystem::temp_directory_path() / "liouville_report_test.json";
    write_report(report, path.string());
    std::ifstream in(path);
    REQUIRE(in.good());
    Json loaded = Json::parse(in);
    CHECK(loaded.at("summary").at("all_passed") == true);
    std::filesystem::remove(path);
}

TEST_CASE("verify_map verdicts") {
    const auto space = SymplecticSpace<Rational>::standard(1);
    const QuadraticGenerator<Rational> gen(space, space.gram());

    // A rational rotation is a member: all conditions pass.
    const auto member = minus_class_member(gen, rational(1, 2));
    const Json pass = verify_map(gen, SmoothMap<Rational>::linear(member), 10, 3, kDefaultTol);
    CHECK(pass.at("verdict") == "pass");
    CHECK(pass.at("clause").get<std::string>().find("pseudounitary") != std::string::npos);
    for (const auto& c : pass.at("conditions")) CHECK(c.at("pass") == true);

    // The stretch is symplectic but not pseudounitary: pullback fails.
    const Json fail =
        verify_map(gen, SmoothMap<Rational>::linear(stretch_map<Rational>()), 10, 3, kDefaultTol);
    CHECK(fail.at("verdict") == "fail");
    bool saw_witness = false;
    for (const auto& c : fail.at("conditions"))
        if (c.at("pass") == false) saw_witness = saw_witness || c.contains("witness");
    CHECK(saw_witness);

    // Float verification adds the flow-equivariance condition.
    const auto gen_d = to_double(gen);
    const Json fd = verify_map(gen_d, SmoothMap<double>::linear(to_double(member)), 10, 3, 1e-9);
    CHECK(fd.at("verdict") == "pass");
    CHECK(fd.at("conditions").size() == 3);
}
