#pragma once

// Scenario configuration: JSON with complex numbers as [re, im] pairs,
// matrices as nested row arrays, family specs by kind. Structural problems
// throw ConfigError; the schema shipped in schema/scenario.schema.json
// documents the same format.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sclab/criterion.hpp"
#include "sclab/density.hpp"
#include "sclab/families.hpp"
#include "sclab/semigroups.hpp"
#include "sclab/transitivity.hpp"

namespace sclab::config {

using nlohmann::json;

inline const json& require_field(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(std::string(where) + ": missing field '" + key + "'");
    return *it;
}

inline Complex parse_complex(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(where) + ": complex numbers are [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline CVector parse_cvector(const json& j, const char* where) {
    if (!j.is_array() || j.empty())
        throw ConfigError(std::string(where) + ": vectors are nonempty arrays of [re, im]");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], where);
    return v;
}

inline json cvector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v(i)));
    return out;
}

inline DenseOperator parse_matrix(const json& j, const char* where) {
    if (!j.is_array() || j.empty())
        throw ConfigError(std::string(where) + ": matrices are nonempty arrays of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty())
            throw ConfigError(std::string(where) + ": matrix rows must be nonempty arrays");
        if (cols == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ConfigError(std::string(where) + ": ragged matrix rows");
    }
    if (rows != cols)
        throw ConfigError(std::string(where) + ": matrix must be square (" +
                          std::to_string(rows) + "x" + std::to_string(cols) + ")");
    DenseOperator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(j[r][c], where);
    return m;
}

inline ToleranceConfig parse_tolerances(const json& j) {
    ToleranceConfig cfg;
    if (const auto it = j.find("tolerances"); it != j.end()) {
        const json& t = *it;
        if (!t.is_object())
            throw ConfigError("tolerances: expected an object");
        if (t.contains("eps_density"))
            cfg.eps_density = t["eps_density"].get<double>();
        if (t.contains("tol_residual"))
            cfg.tol_residual = t["tol_residual"].get<double>();
        if (t.contains("zero_cutoff"))
            cfg.zero_cutoff = t["zero_cutoff"].get<double>();
        if (t.contains("budget"))
            cfg.budget = t["budget"].get<std::size_t>();
    }
    cfg.validate();
    return cfg;
}

inline std::vector<Complex> parse_z_grid(const json& j, const char* where) {
    if (j.is_object() && j.contains("annular")) {
        const json& a = j["annular"];
        return annular_z_grid(require_field(a, "r_min", where).get<double>(),
                              require_field(a, "r_max", where).get<double>(),
                              require_field(a, "rings", where).get<std::size_t>(),
                              require_field(a, "angles", where).get<std::size_t>());
    }
    const json& list = j.is_object() ? require_field(j, "list", where) : j;
    if (!list.is_array() || list.empty())
        throw ConfigError(std::string(where) + ": z grid must be a nonempty list or annular spec");
    std::vector<Complex> zs;
    zs.reserve(list.size());
    for (const auto& z : list)
        zs.push_back(parse_complex(z, where));
    return zs;
}

/// Recursive family builder over the config kinds.
inline OperatorFamily build_family(const json& j) {
    if (!j.is_object())
        throw ConfigError("family: expected an object with a 'kind'");
    const std::string kind = require_field(j, "kind", "family").get<std::string>();
    if (kind == "finite_list") {
        std::vector<DenseOperator> ops;
        for (const auto& m : require_field(j, "operators", "finite_list"))
            ops.push_back(parse_matrix(m, "finite_list.operators"));
        return OperatorFamily::finite_list(std::move(ops));
    }
    if (kind == "powers_of") {
        return OperatorFamily::powers_of(
            parse_matrix(require_field(j, "base", "powers_of"), "powers_of.base"),
            require_field(j, "max_exponent", "powers_of").get<std::size_t>());
    }
    if (kind == "scaled") {
        OperatorFamily base = build_family(require_field(j, "base", "scaled"));
        std::vector<Complex> scalars;
        for (const auto& s : require_field(j, "scalars", "scaled"))
            scalars.push_back(parse_complex(s, "scaled.scalars"));
        return scale_members(base, std::move(scalars));
    }
    if (kind == "direct_sum") {
        std::vector<OperatorFamily> parts;
        for (const auto& p : require_field(j, "parts", "direct_sum"))
            parts.push_back(build_family(p));
        return OperatorFamily::direct_sum(std::move(parts));
    }
    if (kind == "conjugated") {
        OperatorFamily base = build_family(require_field(j, "base", "conjugated"));
        const auto map = IntertwiningMap::analyze(
            parse_matrix(require_field(j, "phi", "conjugated"), "conjugated.phi"));
        return conjugate_similar(base, map);
    }
    if (kind == "semigroup_grid") {
        return semigroup_grid(
                   parse_matrix(require_field(j, "generator", "semigroup_grid"),
                                "semigroup_grid.generator"),
                   require_field(j, "step", "semigroup_grid").get<double>(),
                   require_field(j, "count", "semigroup_grid").get<std::size_t>())
            .family;
    }
    if (kind == "regularized_group_grid") {
        return regularized_group_grid(
                   parse_matrix(require_field(j, "generator", "regularized_group_grid"),
                                "regularized_group_grid.generator"),
                   parse_matrix(require_field(j, "regularizer", "regularized_group_grid"),
                                "regularized_group_grid.regularizer"),
                   parse_z_grid(require_field(j, "z_grid", "regularized_group_grid"),
                                "regularized_group_grid.z_grid"))
            .family;
    }
    if (kind == "diag_grid") {
        return diag_grid_family(j.value("extent", 10.0), j.value("step", 0.5));
    }
    if (kind == "identity") {
        return identity_family(require_field(j, "dim", "identity").get<Eigen::Index>());
    }
    if (kind == "completion_oracle") {
        std::vector<CVector> from, to;
        for (const auto& v : require_field(j, "from", "completion_oracle"))
            from.push_back(parse_cvector(v, "completion_oracle.from"));
        for (const auto& v : require_field(j, "to", "completion_oracle"))
            to.push_back(parse_cvector(v, "completion_oracle.to"));
        return completion_oracle_family(from, to);
    }
    throw ConfigError("family: unknown kind '" + kind + "'");
}

/// Seeded unit vectors (no canonical prefix); used for pair/sample draws.
inline std::vector<CVector> random_unit_vectors(Eigen::Index dim, std::size_t count,
                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CVector> out;
    out.reserve(count);
    while (out.size() < count) {
        CVector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            v(i) = Complex(gauss(rng), gauss(rng));
        const double n = v.norm();
        if (n <= 1e-12)
            continue;
        out.push_back(v / n);
    }
    return out;
}

inline ProbeSet parse_probes(const json& j, Eigen::Index dim, std::uint64_t default_seed) {
    if (j.is_object() && j.contains("list")) {
        ProbeSet set;
        set.seed = j.value("seed", default_seed);
        for (const auto& p : j["list"])
            set.probes.push_back(parse_cvector(p, "probes.list"));
        set.validate(dim);
        return set;
    }
    if (!j.is_object() || !j.contains("count"))
        throw ConfigError("probes: expected {count[, seed]} or {list}");
    return ProbeSet::generate(dim, j["count"].get<std::size_t>(), j.value("seed", default_seed));
}

inline std::vector<std::pair<CVector, CVector>>
parse_pairs(const json& j, Eigen::Index dim, std::uint64_t default_seed) {
    std::vector<std::pair<CVector, CVector>> pairs;
    if (j.is_object() && j.contains("list")) {
        for (const auto& entry : j["list"]) {
            if (!entry.is_array() || entry.size() != 2)
                throw ConfigError("pairs.list: entries are [x, y]");
            pairs.emplace_back(parse_cvector(entry[0], "pairs.list.x"),
                               parse_cvector(entry[1], "pairs.list.y"));
        }
    } else if (j.is_object() && j.contains("count")) {
        const std::size_t count = j["count"].get<std::size_t>();
        const auto vs = random_unit_vectors(dim, 2 * count, j.value("seed", default_seed));
        for (std::size_t i = 0; i < count; ++i)
            pairs.emplace_back(vs[2 * i], vs[2 * i + 1]);
    } else {
        throw ConfigError("pairs: expected {count[, seed]} or {list}");
    }
    if (pairs.empty())
        throw ConfigError("pairs: empty");
    for (const auto& [x, y] : pairs)
        if (x.size() != dim || y.size() != dim)
            throw ConfigError("pairs: dimension mismatch with the family");
    return pairs;
}

inline std::vector<CVector> parse_vector_list(const json& j, Eigen::Index dim,
                                              std::uint64_t default_seed, const char* where) {
    std::vector<CVector> out;
    if (j.is_object() && j.contains("list")) {
        for (const auto& v : j["list"])
            out.push_back(parse_cvector(v, where));
    } else if (j.is_object() && j.contains("count")) {
        out = random_unit_vectors(dim, j["count"].get<std::size_t>(), j.value("seed", default_seed));
    } else {
        throw ConfigError(std::string(where) + ": expected {count[, seed]} or {list}");
    }
    for (const auto& v : out)
        if (v.size() != dim)
            throw ConfigError(std::string(where) + ": dimension mismatch with the family");
    return out;
}

inline BallBasis parse_balls(const json& j, Eigen::Index dim, std::uint64_t default_seed) {
    BallBasis basis;
    if (j.is_object() && j.contains("list")) {
        for (const auto& entry : j["list"]) {
            Ball ball;
            ball.center = parse_cvector(require_field(entry, "center", "balls.list"), "balls.center");
            ball.radius = require_field(entry, "radius", "balls.list").get<double>();
            if (ball.center.size() != dim)
                throw ConfigError("balls: center dimension mismatch");
            basis.balls.push_back(std::move(ball));
        }
        return basis;
    }
    if (j.is_object() && j.contains("relative_radius")) {
        const auto probes = ProbeSet::generate(dim, j.value("count", std::size_t{64}),
                                               j.value("seed", default_seed));
        return BallBasis::from_probes(probes, j["relative_radius"].get<double>());
    }
    throw ConfigError("balls: expected {relative_radius[, count, seed]} or {list}");
}

inline CriterionData parse_criterion_data(const json& j, Eigen::Index dim) {
    CriterionData data;
    for (const auto& k : require_field(j, "indices", "criterion.data"))
        data.indices.push_back(k.get<std::size_t>());
    for (const auto& a : require_field(j, "alphas", "criterion.data"))
        data.alphas.push_back(parse_complex(a, "criterion.alphas"));
    for (const auto& s : require_field(j, "member_selector", "criterion.data"))
        data.member_selector.push_back(s.get<std::size_t>());
    for (const auto& s : require_field(j, "s_maps", "criterion.data"))
        data.s_maps.push_back(parse_matrix(s, "criterion.s_maps"));
    for (const auto& v : require_field(j, "x0", "criterion.data"))
        data.x0.push_back(parse_cvector(v, "criterion.x0"));
    for (const auto& v : require_field(j, "y0", "criterion.data"))
        data.y0.push_back(parse_cvector(v, "criterion.y0"));
    data.validate(dim);
    return data;
}

} // namespace sclab::config
