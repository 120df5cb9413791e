#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouville/instances.hpp"
#include "liouville/json_io.hpp"

namespace liouville {

enum class ScalarKind { Rational, Float64 };

inline std::string_view to_string(ScalarKind k) {
    return k == ScalarKind::Rational ? "rational" : "float";
}

inline ScalarKind scalar_kind_from_string(std::string_view s) {
    if (s == "rational") return ScalarKind::Rational;
    if (s == "float" || s == "float64" || s == "double") return ScalarKind::Float64;
    throw InvalidInput("unknown scalar kind '" + std::string(s) + "'");
}

struct SuiteConfig {
    ScalarKind scalar = ScalarKind::Rational;
    std::size_t dim = 2;                         // 2m
    std::optional<SquareClass> class_filter;     // nullopt = all classes
    int trials = 100;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    std::string out_path;                        // empty = stdout only

    void validate() const {
        if (dim == 0 || dim % 2 != 0) throw InvalidInput("config: dimension must be even positive");
        if (trials < 1) throw InvalidInput("config: trials must be >= 1");
        if (tol <= 0) throw InvalidInput("config: tolerance must be > 0");
    }

    Json to_json() const {
        Json j{{"scalar", std::string(to_string(scalar))},
               {"dim", dim},
               {"class", class_filter ? Json(std::string(to_string(*class_filter))) : Json(nullptr)},
               {"trials", trials},
               {"seed", seed},
               {"tol", tol}};
        return j;
    }
};

struct CheckRecord {
    std::string name;
    std::string condition;
    std::string map_descriptor;
    Json raw = nullptr;
    Json rel = nullptr;
    bool negative_control = false;
    bool pass = false;
    Json witness = nullptr;  // failing sample point (or the documented counterexample witness)

    Json to_json() const {
        Json j{{"name", name}, {"condition", condition}, {"map", map_descriptor},
               {"raw", raw},   {"rel", rel},             {"pass", pass}};
        if (negative_control) j["negative_control"] = true;
        if (!witness.is_null()) j["witness"] = witness;
        return j;
    }
};

struct TrialRecord {
    int index = 0;
    std::uint64_t seed = 0;
    std::string generator_hash;
    std::string square_class;
    std::vector<CheckRecord> checks;
    bool pass = true;

    Json to_json() const {
        Json cj = Json::array();
        for (const auto& c : checks) cj.push_back(c.to_json());
        return Json{{"trial", index},        {"seed", seed},   {"generator", generator_hash},
                    {"class", square_class}, {"checks", std::move(cj)}, {"pass", pass}};
    }
};

struct VerificationReport {
    Json config;
    std::vector<TrialRecord> trials;
    int checks_passed = 0;
    int checks_failed = 0;
    Json max_rel_residual = nullptr;  // largest float-side relative residual seen
    double wall_ms = 0.0;

    bool all_passed() const { return checks_failed == 0; }

    /// Stable field order; wall time isolated in its own summary field so
    /// reports diff cleanly.
    Json to_json() const {
        Json tj = Json::array();
        for (const auto& t : trials) tj.push_back(t.to_json());
        return Json{{"config", config},
                    {"trials", std::move(tj)},
                    {"summary", Json{{"checks_passed", checks_passed},
                                     {"checks_failed", checks_failed},
                                     {"max_rel_residual", max_rel_residual},
                                     {"all_passed", all_passed()},
                                     {"wall_time_ms", wall_ms}}}};
    }
};

/// FNV-1a over a serialized matrix; stable across runs and platforms.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

template <ScalarField S>
std::string generator_hash(const QuadraticGenerator<S>& gen) {
    return fnv1a_hex(mat_to_json(gen.matrix()).dump());
}

namespace detail {

template <ScalarField S>
bool residual_passes(const Residual<S>& r, double tol) {
    if constexpr (is_rational_v<S>) {
        return r.rel == 0;
    } else {
        return r.rel <= tol;
    }
}

template <ScalarField S>
CheckRecord residual_check(std::string name, Condition cond, std::string map_descriptor,
                           const Residual<S>& r, double tol, Json witness_on_fail = nullptr) {
    CheckRecord c;
    c.name = std::move(name);
    c.condition = std::string(to_string(cond));
    c.map_descriptor = std::move(map_descriptor);
    c.raw = scalar_to_json(r.raw);
    c.rel = scalar_to_json(r.rel);
    c.pass = residual_passes(r, tol);
    if (!c.pass) c.witness = std::move(witness_on_fail);
    return c;
}

inline CheckRecord bool_check(std::string name, std::string condition, std::string map_descriptor,
                              bool pass, Json witness_on_fail = nullptr) {
    CheckRecord c;
    c.name = std::move(name);
    c.condition = std::move(condition);
    c.map_descriptor = std::move(map_descriptor);
    c.pass = pass;
    if (!pass) c.witness = std::move(witness_on_fail);
    return c;
}

/// Exact structural identities of the Liouville data itself, checked at a
/// sample point: θ = θ⁰ + dψ and ζ ⌟ ω = θ.
template <ScalarField S>
void theta_identity_checks(const QuadraticGenerator<S>& gen, const Vec<S>& z, const Vec<S>& v,
                           double tol, std::vector<CheckRecord>& out) {
    const QuadraticGenerator<S> zero_gen(gen.space(), Mat<S>::zero(gen.dim(), gen.dim()));
    const S decomp = abs_value(gen.theta(z, v) - (zero_gen.theta(z, v) + gen.dpsi(z, v)));
    const S contraction = abs_value(gen.space().omega(gen.liouville_field(z), v) - gen.theta(z, v));
    out.push_back(residual_check("theta_decomposition", Condition::Pullback, "structure",
                                 Residual<S>{decomp, decomp}, tol, vec_to_json(z)));
    out.push_back(residual_check("liouville_contraction", Condition::Pullback, "structure",
                                 Residual<S>{contraction, contraction}, tol, vec_to_json(z)));
}

/// Residual battery for one candidate automorphism at several points.
template <ScalarField S>
void member_checks(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g,
                   const std::string& descriptor, const std::vector<Vec<S>>& points, double tol,
                   std::vector<CheckRecord>& out) {
    Residual<S> worst_pull{S(0), S(0)};
    Residual<S> worst_push{S(0), S(0)};
    Json pull_witness = nullptr, push_witness = nullptr;
    for (const auto& z : points) {
        const auto pull = pullback_residual(gen, g, z);
        if (pull.rel > worst_pull.rel) {
            worst_pull = pull;
            pull_witness = vec_to_json(z);
        }
        const auto push = pushforward_residual(gen, g, z);
        if (push.rel > worst_push.rel) {
            worst_push = push;
            push_witness = vec_to_json(z);
        }
    }
    out.push_back(residual_check("pullback", Condition::Pullback, descriptor, worst_pull, tol,
                                 std::move(pull_witness)));
    out.push_back(residual_check("pushforward", Condition::Pushforward, descriptor, worst_push,
                                 tol, std::move(push_witness)));
}

}  // namespace detail

// ── Rational (exact) trial batteries ────────────────────────────────────

inline TrialRecord run_rational_trial(const SymplecticSpace<Rational>& space, SquareClass cls,
                                      int index, std::uint64_t trial_seed, double tol) {
    Rng rng(trial_seed);
    TrialRecord trial;
    trial.index = index;
    trial.seed = trial_seed;
    trial.square_class = std::string(to_string(cls));

    const auto gen = generate_instance(space, cls, rng);
    trial.generator_hash = generator_hash(gen);
    const std::size_t n = space.dim();

    std::vector<Vec<Rational>> points;
    for (int k = 0; k < 5; ++k) points.push_back(random_vector<Rational>(rng, n));

    detail::theta_identity_checks(gen, points[0], random_vector<Rational>(rng, n), tol,
                                  trial.checks);

    switch (cls) {
        case SquareClass::Zero: {
            const Rational t = random_nonzero_rational(rng);
            const Mat<Rational> g = zero_class_member(gen, t);
            trial.checks.push_back(detail::bool_check("centralizer_member", "membership",
                                                      "I - tA", is_centralizer_element(gen, g)));
            detail::member_checks(gen, SmoothMap<Rational>::linear(g), "I - tA", points, tol,
                                  trial.checks);
            break;
        }
        case SquareClass::MinusIdentity: {
            const Rational u = random_rational(rng, 4, 3);
            const Mat<Rational> g = minus_class_member(gen, u);
            trial.checks.push_back(detail::bool_check("centralizer_member", "membership",
                                                      "cI + sA", is_centralizer_element(gen, g)));
            trial.checks.push_back(detail::bool_check(
                "pseudo_unitary_agreement", "membership", "cI + sA",
                preserves_inner_product(gen, g) == is_centralizer_element(gen, g) &&
                    preserves_inner_product(gen, g)));
            detail::member_checks(gen, SmoothMap<Rational>::linear(g), "cI + sA", points, tol,
                                  trial.checks);
            break;
        }
        case SquareClass::PlusIdentity: {
            const Rational c = random_nonzero_rational(rng, 3, 2);
            const Mat<Rational> g1 = plus_class_member(gen, c);
            trial.checks.push_back(detail::bool_check("centralizer_member", "membership",
                                                      "cP+ + (1/c)P-",
                                                      is_centralizer_element(gen, g1)));
            detail::member_checks(gen, SmoothMap<Rational>::linear(g1), "cP+ + (1/c)P-", points,
                                  tol, trial.checks);

            const auto f = random_triangular_diffeo(n / 2, rng);
            const auto lift = cotangent_lift(gen, SmoothMap<Rational>::polynomial(f));
            detail::member_checks(gen, lift, "cotangent_lift(f)", points, tol, trial.checks);

            // Round trip through the base restriction.
            const auto back = restrict_to_plus(gen, lift);
            bool round_trip = true;
            Json rt_witness = nullptr;
            for (int k = 0; k < 3 && round_trip; ++k) {
                const Vec<Rational> x = random_vector<Rational>(rng, n / 2);
                if (!(back(x) == f.eval(x))) {
                    round_trip = false;
                    rt_witness = vec_to_json(x);
                }
            }
            trial.checks.push_back(detail::bool_check("lift_round_trip", "membership",
                                                      "restrict(lift(f))", round_trip,
                                                      std::move(rt_witness)));

            // Tautological bridge to T*(V+).
            const auto split = lagrangian_splitting(gen);
            Rational worst(0);
            Json bridge_witness = nullptr;
            for (int k = 0; k < 5; ++k) {
                const Vec<Rational> z = random_vector<Rational>(rng, n);
                const Vec<Rational> v = random_vector<Rational>(rng, n);
                const Rational r = tautological_pullback_residual(split, z, v);
                if (r > worst) {
                    worst = r;
                    bridge_witness = vec_to_json(z);
                }
            }
            trial.checks.push_back(detail::residual_check(
                "tautological_bridge", Condition::Pullback, "alpha",
                Residual<Rational>{worst, worst}, tol, std::move(bridge_witness)));
            break;
        }
        case SquareClass::Other: {
            const auto basis = centralizer_lie_basis(gen);
            bool valid = true;
            for (const auto& b : basis.basis)
                valid = valid && gen.space().in_sp(b) &&
                        b * gen.matrix() == gen.matrix() * b;
            trial.checks.push_back(detail::bool_check("centralizer_basis_valid", "membership",
                                                      "lie_basis", valid));
            break;
        }
    }

    for (const auto& c : trial.checks) trial.pass = trial.pass && c.pass;
    return trial;
}

// ── Float (flow) trial batteries ────────────────────────────────────────

inline TrialRecord run_float_trial(const SymplecticSpace<Rational>& rational_space,
                                   SquareClass cls, int index, std::uint64_t trial_seed,
                                   double tol) {
    Rng rng(trial_seed);
    TrialRecord trial;
    trial.index = index;
    trial.seed = trial_seed;
    trial.square_class = std::string(to_string(cls));

    const auto gen_q = generate_instance(rational_space, cls, rng);
    const auto gen = to_double(gen_q, tol);
    trial.generator_hash = generator_hash(gen_q);
    const std::size_t n = gen.dim();

    const double t = next_real(rng, -1.5, 1.5);
    const double s = next_real(rng, -1.5, 1.5);
    const Vec<double> z = random_vector<double>(rng, n);
    const Vec<double> u = random_vector<double>(rng, n);
    const Vec<double> v = random_vector<double>(rng, n);

    const Mat<double> phi_t = flow_matrix(gen, t);
    const Mat<double> phi_s = flow_matrix(gen, s);
    const Mat<double> phi_st = flow_matrix(gen, s + t);

    {
        const double raw = (phi_s * (phi_t * z) - phi_st * z).max_abs();
        const double rel = raw / (1.0 + (phi_st * z).max_abs());
        trial.checks.push_back(detail::residual_check("flow_group_law", Condition::FlowEquivariance,
                                                      "phi", Residual<double>{raw, rel}, tol,
                                                      vec_to_json(z)));
    }
    {
        const double lhs = gen.space().omega(phi_t * u, phi_t * v);
        const double rhs = std::exp(t) * gen.space().omega(u, v);
        const double raw = std::fabs(lhs - rhs);
        trial.checks.push_back(detail::residual_check(
            "flow_conformal_scaling", Condition::FlowEquivariance, "phi",
            Residual<double>{raw, raw / (1.0 + std::fabs(rhs))}, tol, vec_to_json(u)));
    }
    {
        const double lhs = gen.theta(phi_t * z, phi_t * v);
        const double rhs = std::exp(t) * gen.theta(z, v);
        const double raw = std::fabs(lhs - rhs);
        trial.checks.push_back(detail::residual_check(
            "theta_flow_scaling", Condition::FlowEquivariance, "phi",
            Residual<double>{raw, raw / (1.0 + std::fabs(rhs))}, tol, vec_to_json(z)));
    }
    if (cls != SquareClass::Other) {
        const Mat<double> generic =
            std::exp(0.5 * t) * expm((-0.5 * t) * gen.matrix());
        const double raw = (phi_t - generic).max_abs();
        trial.checks.push_back(detail::residual_check("closed_form_vs_expm",
                                                      Condition::FlowEquivariance, "phi",
                                                      Residual<double>{raw, raw}, tol, Json(t)));
    }
    {
        // dz/dt at 0 matches the Liouville field: slope check at h = 1e-6.
        const double h = 1e-6;
        const Vec<double> slope = (1.0 / h) * (flow(gen, h, z) - z);
        const double raw = (slope - gen.liouville_field(z)).max_abs();
        trial.checks.push_back(detail::residual_check("ode_slope", Condition::FlowEquivariance,
                                                      "phi", Residual<double>{raw, raw}, 1e-5,
                                                      vec_to_json(z)));
    }
    if (cls == SquareClass::PlusIdentity) {
        const double raw = (flow_on_splitting(gen, t, z) - flow(gen, t, z)).max_abs();
        trial.checks.push_back(detail::residual_check("flow_on_splitting_agrees",
                                                      Condition::FlowEquivariance, "phi",
                                                      Residual<double>{raw, raw}, tol,
                                                      vec_to_json(z)));
    }
    {
        // Exponentiated centralizer members preserve the structure.
        const auto basis = centralizer_lie_basis(gen_q);
        if (!basis.basis.empty()) {
            const auto& b = basis.basis[next_below(rng, basis.basis.size())];
            const Mat<double> g = expm(next_real(rng, -1.0, 1.0) * to_double(b));
            const auto gm = SmoothMap<double>::linear(g);
            Residual<double> worst{0.0, 0.0};
            const auto pull = pullback_residual(gen, gm, z);
            const auto eq = flow_equivariance_residual(gen, gm, t, z);
            worst.raw = std::max(pull.raw, eq.raw);
            worst.rel = std::max(pull.rel, eq.rel);
            trial.checks.push_back(detail::residual_check("centralizer_exponential",
                                                          Condition::Pullback, "expm(tB)", worst,
                                                          tol, vec_to_json(z)));
        }
    }

    for (const auto& c : trial.checks) trial.pass = trial.pass && c.pass;
    return trial;
}

// ── Curated negative controls ───────────────────────────────────────────

/// Deterministic counterexamples with hand-checkable residuals; they pass
/// by FAILING their membership conditions with residual at least 1/2 at the
/// documented witness.
inline TrialRecord run_negative_controls(double /*tol*/) {
    TrialRecord trial;
    trial.index = -1;
    trial.seed = 0;
    trial.generator_hash = "negative_controls";
    trial.square_class = "controls";

    const auto space = SymplecticSpace<Rational>::standard(1);
    const Rational half(1, 2);

    {
        // Nonlinear shear against the canonical structure; witness z=(1,0).
        const QuadraticGenerator<Rational> gen(space, Mat<Rational>::zero(2, 2));
        const auto shear = shear_map<Rational>(Rational(1));
        const Vec<Rational> z{Rational(1), Rational(0)};
        const auto r = pullback_residual(gen, shear, z);
        CheckRecord c = detail::bool_check("shear_vs_canonical", "pullback",
                                           "(p,q)->(p,q+p^2)", r.raw >= half, nullptr);
        c.negative_control = true;
        c.raw = scalar_to_json(r.raw);
        c.rel = scalar_to_json(r.rel);
        c.witness = vec_to_json(z);
        trial.checks.push_back(std::move(c));

        const auto verdict = canonical_aut_check(space, shear);
        CheckRecord c2 = detail::bool_check(
            "shear_canonical_clause", "membership", "(p,q)->(p,q+p^2)",
            !verdict.ok && verdict.failed == CanonicalAutVerdict::Clause::Residual);
        c2.negative_control = true;
        trial.checks.push_back(std::move(c2));

        const auto translation = translation_map<Rational>(Vec<Rational>{Rational(1), Rational(1)});
        const auto tv = canonical_aut_check(space, translation);
        CheckRecord c3 = detail::bool_check(
            "translation_origin_clause", "membership", "z->z+c",
            !tv.ok && tv.failed == CanonicalAutVerdict::Clause::Origin);
        c3.negative_control = true;
        trial.checks.push_back(std::move(c3));
    }
    {
        // Symplectic stretch against the complex structure; witness z=e1.
        const QuadraticGenerator<Rational> gen(space, space.gram());
        const Mat<Rational> g = stretch_map<Rational>();
        const Vec<Rational> z{Rational(1), Rational(0)};
        const auto r = pullback_residual(gen, SmoothMap<Rational>::linear(g), z);
        CheckRecord c = detail::bool_check(
            "stretch_vs_complex_structure", "pullback", "diag(2,1/2)",
            r.raw >= half && !is_centralizer_element(gen, g) && !preserves_inner_product(gen, g));
        c.negative_control = true;
        c.raw = scalar_to_json(r.raw);
        c.rel = scalar_to_json(r.rel);
        c.witness = vec_to_json(z);
        trial.checks.push_back(std::move(c));
    }
    {
        // Non-commuting unit shear against a nilpotent; witness z=e1.
        Mat<Rational> a(2, 2);
        a(0, 1) = Rational(1);
        const QuadraticGenerator<Rational> gen(space, a);
        const Mat<Rational> g = noncommuting_linear<Rational>();
        const Vec<Rational> z{Rational(1), Rational(0)};
        const auto r = pullback_residual(gen, SmoothMap<Rational>::linear(g), z);
        CheckRecord c = detail::bool_check("shear_vs_nilpotent", "pullback", "[[1,0],[1,1]]",
                                           r.raw >= half && !is_centralizer_element(gen, g));
        c.negative_control = true;
        c.raw = scalar_to_json(r.raw);
        c.rel = scalar_to_json(r.rel);
        c.witness = vec_to_json(z);
        trial.checks.push_back(std::move(c));
    }

    for (const auto& c : trial.checks) trial.pass = trial.pass && c.pass;
    return trial;
}

// ── Suite driver ────────────────────────────────────────────────────────

inline VerificationReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    VerificationReport report;
    report.config = cfg.to_json();

    const auto space = SymplecticSpace<Rational>::standard(cfg.dim / 2);
    std::vector<SquareClass> classes;
    if (cfg.class_filter) {
        classes.push_back(*cfg.class_filter);
    } else {
        classes = {SquareClass::Zero, SquareClass::PlusIdentity, SquareClass::MinusIdentity,
                   SquareClass::Other};
    }

    int index = 0;
    double max_rel = 0.0;
    for (const auto cls : classes) {
        for (int k = 0; k < cfg.trials; ++k) {
            const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
            TrialRecord trial = cfg.scalar == ScalarKind::Rational
                                    ? run_rational_trial(space, cls, index, trial_seed, cfg.tol)
                                    : run_float_trial(space, cls, index, trial_seed, cfg.tol);
            for (const auto& c : trial.checks) {
                (c.pass ? report.checks_passed : report.checks_failed)++;
                if (c.rel.is_number()) max_rel = std::max(max_rel, c.rel.get<double>());
            }
            report.trials.push_back(std::move(trial));
            ++index;
        }
    }

    TrialRecord controls = run_negative_controls(cfg.tol);
    for (const auto& c : controls.checks) (c.pass ? report.checks_passed : report.checks_failed)++;
    report.trials.push_back(std::move(controls));

    if (cfg.scalar == ScalarKind::Float64) report.max_rel_residual = max_rel;
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

/// Write the report once, atomically (temp file + rename).
inline void write_report(const VerificationReport& report, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InvalidInput("write_report: cannot open '" + tmp + "'");
        out << report.to_json().dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidInput("write_report: cannot move report into place at '" + path + "'");
}

// ── Single-map verification (CLI verify-aut) ────────────────────────────

inline std::string_view classification_clause(SquareClass cls) {
    switch (cls) {
        case SquareClass::Zero:
            return "A^2=0: automorphisms are exactly the symplectic centralizer of A";
        case SquareClass::PlusIdentity:
            return "A^2=+I: automorphisms are exactly the cotangent lifts of Diff(V+)";
        case SquareClass::MinusIdentity:
            return "A^2=-I: automorphisms are exactly the pseudounitary group of <.|.>";
        case SquareClass::Other:
            return "A^2 generic: centralizer members are automorphisms (inclusion only)";
    }
    return "";
}

/// Evaluate the defining conditions of a candidate automorphism at sampled
/// points and report per-condition maxima with a verdict.
template <ScalarField S>
Json verify_map(const QuadraticGenerator<S>& gen, const SmoothMap<S>& g, int samples,
                std::uint64_t seed, double tol) {
    if (samples < 1) throw InvalidInput("verify_map: samples must be >= 1");
    Rng rng(seed);
    const std::size_t n = gen.dim();

    std::vector<Vec<S>> points;
    points.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) points.push_back(random_vector<S>(rng, n));

    Residual<S> pull{S(0), S(0)}, push{S(0), S(0)};
    Json pull_witness = nullptr, push_witness = nullptr;
    for (const auto& sample : residual_samples(gen, g, points)) {
        auto& worst = sample.condition == Condition::Pullback ? pull : push;
        auto& witness = sample.condition == Condition::Pullback ? pull_witness : push_witness;
        if (sample.rel > worst.rel) {
            worst = Residual<S>{sample.raw, sample.rel};
            witness = vec_to_json(sample.point);
        }
    }

    Json conditions = Json::array();
    auto emit = [&](std::string_view name, const Residual<S>& r, const Json& witness) {
        const bool ok = detail::residual_passes(r, tol);
        Json c{{"condition", std::string(name)},
               {"max_raw", scalar_to_json(r.raw)},
               {"max_rel", scalar_to_json(r.rel)},
               {"pass", ok}};
        if (!ok) c["witness"] = witness;
        conditions.push_back(std::move(c));
    };
    emit("pullback", pull, pull_witness);
    emit("pushforward", push, push_witness);

    bool all = detail::residual_passes(pull, tol) && detail::residual_passes(push, tol);

    if constexpr (!is_rational_v<S>) {
        Residual<double> eq{0.0, 0.0};
        Json eq_witness = nullptr;
        for (int k = 0; k < samples; ++k) {
            const Vec<double> z = random_vector<double>(rng, n);
            const double t = next_real(rng, -1.0, 1.0);
            const auto er = flow_equivariance_residual(gen, g, t, z);
            if (er.rel > eq.rel) {
                eq = er;
                eq_witness = vec_to_json(z);
            }
        }
        emit("flow_equivariance", eq, eq_witness);
        all = all && detail::residual_passes(eq, tol);
    }

    return Json{{"generator", generator_to_json(gen)},
                {"clause", std::string(classification_clause(gen.square_class()))},
                {"samples", samples},
                {"seed", seed},
                {"tol", tol},
                {"conditions", std::move(conditions)},
                {"verdict", all ? "pass" : "fail"}};
}

}  // namespace liouville
