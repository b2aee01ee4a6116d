#pragma once

// Scenario orchestration and machine-readable reports. One scenario per
// invocation; verdicts serialize to a stable JSON schema (complex numbers as
// [re, im]) and to csv-plot rows for external plotting.

#include <chrono>
#include <sstream>
#include <string>

#include "sclab/config.hpp"

namespace sclab {

enum class Verdict { Pass, Fail, Error };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Error: return "ERROR";
    }
    return "ERROR";
}

enum class ReportFormat { Json, CsvPlot };

struct VerdictReport {
    std::string scenario;
    std::string check;
    Verdict verdict = Verdict::Error;
    double worst_case = 0.0;
    double eps = 0.0;
    std::size_t budget = 0;
    std::uint64_t seed = 0;
    nlohmann::json witnesses; ///< check-specific; "plot" holds csv rows
    double wall_time_ms = 0.0;

    bool operator==(const VerdictReport& other) const {
        return scenario == other.scenario && check == other.check && verdict == other.verdict &&
               worst_case == other.worst_case && eps == other.eps && budget == other.budget &&
               seed == other.seed && witnesses == other.witnesses &&
               wall_time_ms == other.wall_time_ms;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["scenario"] = scenario;
        j["check"] = check;
        j["verdict"] = to_string(verdict);
        j["worst_case"] = worst_case;
        j["eps"] = eps;
        j["budget"] = budget;
        j["seed"] = seed;
        j["witnesses"] = witnesses;
        j["wall_time_ms"] = wall_time_ms;
        return j;
    }

    static VerdictReport from_json(const nlohmann::json& j) {
        VerdictReport r;
        r.scenario = config::require_field(j, "scenario", "report").get<std::string>();
        r.check = config::require_field(j, "check", "report").get<std::string>();
        const std::string v = config::require_field(j, "verdict", "report").get<std::string>();
        if (v == "PASS")
            r.verdict = Verdict::Pass;
        else if (v == "FAIL")
            r.verdict = Verdict::Fail;
        else if (v == "ERROR")
            r.verdict = Verdict::Error;
        else
            throw ConfigError("report: unknown verdict '" + v + "'");
        r.worst_case = config::require_field(j, "worst_case", "report").get<double>();
        r.eps = config::require_field(j, "eps", "report").get<double>();
        r.budget = config::require_field(j, "budget", "report").get<std::size_t>();
        r.seed = config::require_field(j, "seed", "report").get<std::uint64_t>();
        r.witnesses = config::require_field(j, "witnesses", "report");
        r.wall_time_ms = j.value("wall_time_ms", 0.0);
        return r;
    }
};

inline std::string emit_report(const VerdictReport& report, ReportFormat format) {
    if (format == ReportFormat::Json)
        return report.to_json().dump(2) + "\n";
    std::ostringstream csv;
    csv << "index,value,member\n";
    if (report.witnesses.contains("plot")) {
        for (const auto& row : report.witnesses["plot"]) {
            csv << row[0].get<std::size_t>() << ',' << row[1].get<double>() << ','
                << row[2].get<std::size_t>() << "\n";
        }
    }
    return csv.str();
}

inline VerdictReport parse_report(const std::string& text) {
    return VerdictReport::from_json(nlohmann::json::parse(text));
}

namespace detail {

inline nlohmann::json density_plot(const DensityReport& r) {
    nlohmann::json plot = nlohmann::json::array();
    for (std::size_t i = 0; i < r.per_probe.size(); ++i)
        plot.push_back({i, r.per_probe[i].distance, r.per_probe[i].member});
    return plot;
}

inline void fill_density(VerdictReport& out, const DensityReport& r) {
    out.verdict = r.pass ? Verdict::Pass : Verdict::Fail;
    out.worst_case = r.worst_case;
    out.eps = r.eps_used;
    out.budget = r.budget_used;
    out.witnesses["worst_probe"] = r.worst_probe;
    out.witnesses["worst_member"] =
        r.per_probe.empty() ? 0 : r.per_probe[r.worst_probe].member;
    out.witnesses["plot"] = density_plot(r);
}

} // namespace detail

/// Dispatch one scenario to the matching module operation. Configuration
/// problems throw ConfigError; domain preconditions surface as the library's
/// own error types.
inline VerdictReport run_scenario(const nlohmann::json& cfg_json) {
    using config::require_field;
    const auto start = std::chrono::steady_clock::now();

    if (!cfg_json.is_object())
        throw ConfigError("scenario: expected a JSON object");
    VerdictReport out;
    out.scenario = cfg_json.value("id", std::string("unnamed"));
    out.check = require_field(cfg_json, "check", "scenario").get<std::string>();
    const ToleranceConfig tol = config::parse_tolerances(cfg_json);
    const std::uint64_t seed = cfg_json.value("seed", kDefaultSeed);
    out.seed = seed;
    out.eps = tol.eps_density;
    out.budget = tol.budget;
    out.witnesses = nlohmann::json::object();

    const auto family_of = [&]() {
        return config::build_family(require_field(cfg_json, "family", "scenario"));
    };

    if (out.check == "sc") {
        const OperatorFamily family = family_of();
        const CVector x =
            config::parse_cvector(require_field(cfg_json, "vector", "sc"), "sc.vector");
        const ProbeSet probes =
            config::parse_probes(require_field(cfg_json, "probes", "sc"), family.dim(), seed);
        detail::fill_density(out, eps_supercyclic_test(family, x, probes, tol));
        out.seed = probes.seed;
    } else if (out.check == "gdelta") {
        const OperatorFamily family = family_of();
        const CVector x =
            config::parse_cvector(require_field(cfg_json, "vector", "gdelta"), "gdelta.vector");
        const BallBasis balls =
            config::parse_balls(require_field(cfg_json, "balls", "gdelta"), family.dim(), seed);
        const auto report = gdelta_membership(family, x, balls, tol);
        out.verdict = report.overall ? Verdict::Pass : Verdict::Fail;
        out.budget = report.budget_used;
        nlohmann::json plot = nlohmann::json::array();
        double worst = 0.0;
        std::size_t failing = 0;
        for (std::size_t i = 0; i < report.per_ball.size(); ++i) {
            const auto& b = report.per_ball[i];
            plot.push_back({i, b.distance, b.witness});
            worst = std::max(worst, b.distance);
            if (!b.inside)
                ++failing;
        }
        out.worst_case = worst;
        out.witnesses["failing_balls"] = failing;
        out.witnesses["plot"] = std::move(plot);
    } else if (out.check == "transitive") {
        const OperatorFamily family = family_of();
        const auto pairs = config::parse_pairs(require_field(cfg_json, "pairs", "transitive"),
                                               family.dim(), seed);
        const double w_radius = require_field(cfg_json, "w_radius", "transitive").get<double>();
        nlohmann::json plot = nlohmann::json::array();
        nlohmann::json witnesses = nlohmann::json::array();
        std::size_t failures = 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto r = transitive_pair_test(family, pairs[i].first, pairs[i].second, w_radius, tol);
            const double metric = r.witness ? r.witness->projective_residual : 1.0;
            plot.push_back({i, metric, r.witness ? r.witness->member : 0});
            worst = std::max(worst, metric);
            if (r.witness) {
                witnesses.push_back({{"pair", i},
                                     {"member", r.witness->member},
                                     {"alpha", config::complex_to_json(r.witness->alpha)},
                                     {"z", config::cvector_to_json(r.witness->z)}});
            }
            if (!r.success)
                ++failures;
        }
        out.verdict = failures == 0 ? Verdict::Pass : Verdict::Fail;
        out.worst_case = worst;
        out.witnesses["failing_pairs"] = failures;
        out.witnesses["w_radius"] = w_radius;
        out.witnesses["pairs"] = std::move(witnesses);
        out.witnesses["plot"] = std::move(plot);
    } else if (out.check == "strict") {
        const OperatorFamily family = family_of();
        const auto pairs =
            config::parse_pairs(require_field(cfg_json, "pairs", "strict"), family.dim(), seed);
        const auto report = strict_transitivity_test(family, pairs, tol);
        out.verdict = report.pass ? Verdict::Pass : Verdict::Fail;
        out.worst_case = report.max_residual;
        nlohmann::json plot = nlohmann::json::array();
        nlohmann::json witnesses = nlohmann::json::array();
        for (std::size_t i = 0; i < report.per_pair.size(); ++i) {
            const auto& p = report.per_pair[i];
            plot.push_back({i, p.residual, p.member});
            if (p.success)
                witnesses.push_back({{"pair", i},
                                     {"member", p.member},
                                     {"alpha", config::complex_to_json(p.alpha)}});
        }
        out.witnesses["failing_pairs"] = report.failures.size();
        out.witnesses["pairs"] = std::move(witnesses);
        out.witnesses["plot"] = std::move(plot);
    } else if (out.check == "supertransitive") {
        const OperatorFamily family = family_of();
        const auto sample = config::parse_vector_list(
            require_field(cfg_json, "sample", "supertransitive"), family.dim(), seed,
            "supertransitive.sample");
        const ProbeSet probes = config::parse_probes(
            require_field(cfg_json, "probes", "supertransitive"), family.dim(), seed);
        const auto report = supertransitive_scan(family, sample, probes, tol);
        out.verdict = report.pass ? Verdict::Pass : Verdict::Fail;
        nlohmann::json plot = nlohmann::json::array();
        double worst = 0.0;
        for (std::size_t i = 0; i < report.per_sample.size(); ++i) {
            plot.push_back({i, report.per_sample[i].worst_case,
                            report.per_sample[i].per_probe[report.per_sample[i].worst_probe].member});
            worst = std::max(worst, report.per_sample[i].worst_case);
        }
        out.worst_case = worst;
        out.witnesses["failing_samples"] = report.failing;
        out.witnesses["plot"] = std::move(plot);
        out.seed = probes.seed;
    } else if (out.check == "criterion") {
        auto instance = [&]() -> CriterionInstance {
            if (cfg_json.contains("rolewicz")) {
                return rolewicz_truncated_family(
                    cfg_json["rolewicz"].value("dim", Eigen::Index{16}),
                    config::parse_complex(
                        require_field(cfg_json["rolewicz"], "lambda", "rolewicz"),
                        "rolewicz.lambda"));
            }
            OperatorFamily family =
                config::build_family(require_field(cfg_json, "family", "criterion"));
            CriterionData data = config::parse_criterion_data(
                require_field(cfg_json, "data", "criterion"), family.dim());
            return CriterionInstance{std::move(family), std::move(data)};
        }();
        const OperatorFamily& family = instance.family;
        const CriterionData& data = instance.data;
        const auto report = verify_criterion(family, data, tol);
        out.verdict = report.pass ? Verdict::Pass : Verdict::Fail;
        double worst = 0.0;
        for (const auto& c : report.conditions)
            worst = std::max(worst, c.final_value);
        out.worst_case = worst;
        nlohmann::json plot = nlohmann::json::array();
        for (std::size_t i = 0; i < data.indices.size(); ++i) {
            const double row_max = std::max({report.profile.forward_decay[i],
                                             report.profile.backward_decay[i],
                                             report.profile.reconstruction_error[i]});
            plot.push_back({data.indices[i], row_max, data.member_selector[i]});
        }
        out.witnesses["forward_decay"] = report.profile.forward_decay;
        out.witnesses["backward_decay"] = report.profile.backward_decay;
        out.witnesses["reconstruction_error"] = report.profile.reconstruction_error;
        out.witnesses["plot"] = std::move(plot);
    } else if (out.check == "semigroup") {
        const DenseOperator a = config::parse_matrix(
            require_field(cfg_json, "generator", "semigroup"), "semigroup.generator");
        const auto grid =
            semigroup_grid(a, require_field(cfg_json, "step", "semigroup").get<double>(),
                           require_field(cfg_json, "count", "semigroup").get<std::size_t>());
        const double law = semigroup_law_residual(grid);
        const auto factorization = factorization_property_test(grid.family, tol);
        // 1e-8 is the semigroup-law tolerance for grids with |A| h <= 1
        const bool law_ok = law <= 1e-8;
        out.verdict = (law_ok && factorization.pass) ? Verdict::Pass : Verdict::Fail;
        out.worst_case = law;
        out.witnesses["law_residual"] = law;
        out.witnesses["max_drift"] = grid.max_drift;
        out.witnesses["factorization_pass"] = factorization.pass;
        out.witnesses["factorization_residual"] = factorization.max_witnessed_residual;
        out.witnesses["plot"] = nlohmann::json::array();
    } else if (out.check == "group") {
        const DenseOperator a = config::parse_matrix(require_field(cfg_json, "generator", "group"),
                                                     "group.generator");
        const DenseOperator c = config::parse_matrix(
            require_field(cfg_json, "regularizer", "group"), "group.regularizer");
        const auto grid = regularized_group_grid(
            a, c, config::parse_z_grid(require_field(cfg_json, "z_grid", "group"), "group.z_grid"));
        const auto axioms = group_axioms_check(grid, tol);
        bool pass = axioms.pass;
        out.witnesses["axiom_residual"] = axioms.max_residual;
        out.witnesses["pairs_tested"] = axioms.pairs_tested;
        out.witnesses["insufficient_grid"] = axioms.insufficient_grid;
        out.witnesses["commutation_defect"] = grid.commutation_defect;
        if (cfg_json.contains("vector")) {
            const CVector x = config::parse_cvector(cfg_json["vector"], "group.vector");
            const auto nv = nonvanishing_orbit_check(grid, x, tol);
            pass = pass && nv.pass;
            out.witnesses["min_orbit_norm"] = nv.min_norm;
            out.witnesses["min_orbit_at"] = nv.argmin;
        }
        out.verdict = pass ? Verdict::Pass : Verdict::Fail;
        out.worst_case = axioms.max_residual;
        out.witnesses["plot"] = nlohmann::json::array();
    } else if (out.check == "tail") {
        const DenseOperator a = config::parse_matrix(require_field(cfg_json, "generator", "tail"),
                                                     "tail.generator");
        const DenseOperator c = config::parse_matrix(
            require_field(cfg_json, "regularizer", "tail"), "tail.regularizer");
        const auto grid = regularized_group_grid(
            a, c, config::parse_z_grid(require_field(cfg_json, "z_grid", "tail"), "tail.z_grid"));
        const CVector x =
            config::parse_cvector(require_field(cfg_json, "vector", "tail"), "tail.vector");
        const ProbeSet probes =
            config::parse_probes(require_field(cfg_json, "probes", "tail"), grid.family.dim(), seed);
        const double omega0 = require_field(cfg_json, "omega0", "tail").get<double>();
        const auto report = tail_density_check(grid, x, omega0, probes, tol);
        detail::fill_density(out, report.tail);
        out.witnesses["full_verdict"] = report.full.pass ? "PASS" : "FAIL";
        out.witnesses["full_worst_case"] = report.full.worst_case;
        out.witnesses["omega0"] = omega0;
        out.witnesses["tail_members"] = report.tail_members;
        out.seed = probes.seed;
    } else {
        throw ConfigError("scenario: unknown check '" + out.check + "'");
    }

    out.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return out;
}

} // namespace sclab
