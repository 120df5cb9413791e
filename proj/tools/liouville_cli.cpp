// Command-line surface for the quadratic Liouville structure library:
// instance generation and classification, flow trajectories, cotangent
// lifts, single-map verification, and the full property suite. All inputs
// and outputs are the JSON formats of the owning modules; rationals travel
// as "p/q" strings, floats as JSON numbers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "liouville/liouville.hpp"

namespace {

using namespace liouville;

Json read_json(const std::string& path) {
    std::stringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open input file '" + path + "'");
        buffer << in.rdbuf();
    }
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
    }
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    const std::string tmp = out_path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InvalidInput("cannot open output file '" + tmp + "'");
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
        throw InvalidInput("cannot move output into place at '" + out_path + "'");
}

/// Input documents hold the generator either at top level {"A": ...} or
/// nested under "generator", with an optional "space" (standard Darboux
/// space of the matching dimension otherwise).
template <ScalarField S>
QuadraticGenerator<S> generator_from_doc(const Json& doc, double tol) {
    const Json& gj = doc.contains("generator") ? doc.at("generator") : doc;
    if (!gj.contains("A")) throw InvalidInput("input document: missing generator matrix \"A\"");
    const std::size_t dim = gj.at("A").size();
    SymplecticSpace<S> space = doc.contains("space")
                                   ? space_from_json<S>(doc.at("space"), tol)
                                   : SymplecticSpace<S>::standard(dim / 2);
    return generator_from_json<S>(space, gj, tol);
}

/// Maps arrive as polynomial coefficient tables or as {"matrix": [[...]]}.
template <ScalarField S>
SmoothMap<S> map_from_json(const Json& j) {
    if (j.contains("matrix")) return SmoothMap<S>::linear(mat_from_json<S>(j.at("matrix")));
    return SmoothMap<S>::polynomial(polymap_from_json<S>(j));
}

std::optional<SquareClass> parse_class_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return square_class_from_string(s);
}

// ── classify ────────────────────────────────────────────────────────────

int cmd_classify(const std::string& in_path, const std::string& scalar, std::size_t dim,
                 const std::string& cls, std::uint64_t seed, double tol,
                 const std::string& out_path) {
    Json result;
    if (!in_path.empty()) {
        const Json doc = read_json(in_path);
        if (scalar_kind_from_string(scalar) == ScalarKind::Rational) {
            result = generator_to_json(generator_from_doc<Rational>(doc, tol));
        } else {
            result = generator_to_json(generator_from_doc<double>(doc, tol));
        }
    } else {
        const auto want = parse_class_flag(cls);
        if (!want) throw InvalidInput("classify: need --in FILE or --class to generate");
        if (dim == 0 || dim % 2 != 0) throw InvalidInput("classify: --dim must be even positive");
        Rng rng(seed);
        const auto space = SymplecticSpace<Rational>::standard(dim / 2);
        result = generator_to_json(generate_instance(space, *want, rng));
    }
    emit(result, out_path);
    return 0;
}

// ── flow ────────────────────────────────────────────────────────────────

int cmd_flow(const std::string& in_path, const std::string& scalar, std::size_t dim,
             const std::string& cls, std::uint64_t seed, double tol, const std::string& z_text,
             double t0, double t1, int steps, const std::string& out_path) {
    if (scalar_kind_from_string(scalar) != ScalarKind::Float64)
        throw InvalidInput("flow: flows are float-only (use --scalar float)");
    if (steps < 1) throw InvalidInput("flow: --steps must be >= 1");

    std::optional<QuadraticGenerator<double>> gen;
    Json z_json = nullptr;
    if (!in_path.empty()) {
        const Json doc = read_json(in_path);
        gen = generator_from_doc<double>(doc, tol);
        if (doc.contains("z")) z_json = doc.at("z");
    } else {
        const auto want = parse_class_flag(cls);
        if (!want) throw InvalidInput("flow: need --in FILE or --class to generate");
        Rng rng(seed);
        const auto space = SymplecticSpace<Rational>::standard(dim / 2);
        gen = to_double(generate_instance(space, *want, rng), tol);
    }
    if (!z_text.empty()) z_json = Json::parse(z_text);

    Vec<double> z(gen->dim());
    if (z_json.is_null()) {
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = 1.0;
    } else {
        z = vec_from_json<double>(z_json);
        if (z.size() != gen->dim()) throw InvalidInput("flow: initial point has wrong length");
    }

    Json times = Json::array();
    Json points = Json::array();
    for (int k = 0; k < steps; ++k) {
        const double t = steps == 1 ? t0 : t0 + (t1 - t0) * k / (steps - 1);
        times.push_back(t);
        points.push_back(vec_to_json(flow(*gen, t, z)));
    }
    emit(Json{{"t", std::move(times)}, {"z", std::move(points)}}, out_path);
    return 0;
}

// ── lift ────────────────────────────────────────────────────────────────

template <ScalarField S>
Json lift_samples(const Json& doc, int samples, std::uint64_t seed, double tol) {
    const auto gen = generator_from_doc<S>(doc, tol);
    if (!doc.contains("f")) throw InvalidInput("lift: input document needs a base map \"f\"");
    const auto f = map_from_json<S>(doc.at("f"));
    const auto g = cotangent_lift(gen, f, tol);

    Rng rng(seed);
    Json rows = Json::array();
    bool all_pass = true;
    for (int k = 0; k < samples; ++k) {
        const Vec<S> z = random_vector<S>(rng, gen.dim());
        const auto residual = pullback_residual(gen, g, z);
        const bool ok = is_rational_v<S> ? scalar_is_zero(residual.rel, 0.0)
                                         : scalar_is_zero(to_double(residual.rel), tol);
        all_pass = all_pass && ok;
        rows.push_back(Json{{"z", vec_to_json(z)},
                            {"g", vec_to_json(g(z))},
                            {"jacobian", mat_to_json(g.jacobian(z))},
                            {"pullback_rel", scalar_to_json(residual.rel)}});
    }
    return Json{{"generator", generator_to_json(gen)},
                {"f", doc.at("f")},
                {"samples", std::move(rows)},
                {"verdict", all_pass ? "pass" : "fail"}};
}

int cmd_lift(const std::string& in_path, const std::string& scalar, int samples,
             std::uint64_t seed, double tol, const std::string& out_path) {
    if (in_path.empty()) throw InvalidInput("lift: need --in FILE with generator and base map");
    const Json doc = read_json(in_path);
    const Json result = scalar_kind_from_string(scalar) == ScalarKind::Rational
                            ? lift_samples<Rational>(doc, samples, seed, tol)
                            : lift_samples<double>(doc, samples, seed, tol);
    emit(result, out_path);
    const bool ok = result.at("verdict").get<std::string>() == "pass";
    return ok ? 0 : 1;
}

// ── verify-aut ──────────────────────────────────────────────────────────

template <ScalarField S>
Json verify_doc(const Json& doc, int samples, std::uint64_t seed, double tol) {
    const auto gen = generator_from_doc<S>(doc, tol);
    if (!doc.contains("map")) throw InvalidInput("verify-aut: input document needs a \"map\"");
    const auto g = map_from_json<S>(doc.at("map"));
    return verify_map(gen, g, samples, seed, tol);
}

int cmd_verify(const std::string& in_path, const std::string& scalar, int samples,
               std::uint64_t seed, double tol, const std::string& out_path) {
    if (in_path.empty()) throw InvalidInput("verify-aut: need --in FILE with generator and map");
    const Json doc = read_json(in_path);
    const int n = doc.contains("samples") ? doc.at("samples").get<int>() : samples;
    const std::uint64_t s = doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : seed;
    const double t = doc.contains("tol") ? doc.at("tol").get<double>() : tol;
    const Json result = scalar_kind_from_string(scalar) == ScalarKind::Rational
                            ? verify_doc<Rational>(doc, n, s, t)
                            : verify_doc<double>(doc, n, s, t);
    emit(result, out_path);
    return result.at("verdict").get<std::string>() == "pass" ? 0 : 1;
}

// ── suite ───────────────────────────────────────────────────────────────

int cmd_suite(const std::string& scalar, std::size_t dim, const std::string& cls, int trials,
              std::uint64_t seed, double tol, const std::string& out_path) {
    SuiteConfig cfg;
    cfg.scalar = scalar_kind_from_string(scalar);
    cfg.dim = dim;
    cfg.class_filter = parse_class_flag(cls);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.out_path = out_path;

    const VerificationReport report = run_suite(cfg);
    if (!out_path.empty()) {
        write_report(report, out_path);
        std::cout << (report.all_passed() ? "PASS" : "FAIL") << "  checks: "
                  << report.checks_passed << " passed, " << report.checks_failed
                  << " failed  -> " << out_path << "\n";
    } else {
        std::cout << report.to_json().dump(2) << "\n";
    }
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic Liouville structures: flows, lifts, and automorphism verification"};
    app.require_subcommand(1);

    std::string scalar = "rational";
    std::string cls;
    std::string in_path;
    std::string out_path;
    std::string z_text;
    std::size_t dim = 2;
    int trials = 100;
    int samples = 20;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    double t0 = 0.0, t1 = 1.0;
    int steps = 11;

    auto add_common = [&](CLI::App* cmd, bool with_dim_class) {
        cmd->add_option("--scalar", scalar, "Scalar field: rational | float");
        cmd->add_option("--tol", tol, "Float comparison tolerance");
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--out", out_path, "Output path (stdout if omitted)");
        if (with_dim_class) {
            cmd->add_option("--dim", dim, "Space dimension 2m");
            cmd->add_option("--class", cls, "Square class: zero | plus | minus | other");
        }
    };

    auto* classify = app.add_subcommand("classify", "Classify A² or generate a class instance");
    classify->add_option("--in", in_path, "Input JSON with \"A\" (and optional \"space\")");
    add_common(classify, true);

    auto* flow_cmd = app.add_subcommand("flow", "Emit a flow trajectory as JSON");
    flow_cmd->add_option("--in", in_path, "Input JSON with generator (and optional \"z\")");
    flow_cmd->add_option("--z", z_text, "Initial point as a JSON array");
    flow_cmd->add_option("--t0", t0, "Trajectory start time");
    flow_cmd->add_option("--t1", t1, "Trajectory end time");
    flow_cmd->add_option("--steps", steps, "Number of samples on [t0, t1]");
    add_common(flow_cmd, true);

    auto* lift = app.add_subcommand("lift", "Evaluate the cotangent lift of a base map");
    lift->add_option("--in", in_path, "Input JSON with generator and base map \"f\"");
    lift->add_option("--samples", samples, "Number of sample points");
    add_common(lift, false);

    auto* verify = app.add_subcommand("verify-aut", "Verify a candidate automorphism");
    verify->add_option("--in", in_path, "Input JSON with generator and \"map\"");
    verify->add_option("--samples", samples, "Number of sample points");
    add_common(verify, false);

    auto* suite = app.add_subcommand("suite", "Run the per-class property suite");
    suite->add_option("--trials", trials, "Trials per square class");
    add_common(suite, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(classify))
            return cmd_classify(in_path, scalar, dim, cls, seed, tol, out_path);
        if (app.got_subcommand(flow_cmd)) {
            if (!flow_cmd->count("--scalar")) scalar = "float";
            return cmd_flow(in_path, scalar, dim, cls, seed, tol, z_text, t0, t1, steps, out_path);
        }
        if (app.got_subcommand(lift))
            return cmd_lift(in_path, scalar, samples, seed, tol, out_path);
        if (app.got_subcommand(verify))
            return cmd_verify(in_path, scalar, samples, seed, tol, out_path);
        if (app.got_subcommand(suite))
            return cmd_suite(scalar, dim, cls, trials, seed, tol, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
