#pragma once

// Density questions: eps-approximate supercyclic vectors, the G-delta
// membership formula, supertransitivity scans, supercyclic-vector search and
// pointwise SOT-limit consistency. Open sets are surrogated by unit probes
// plus a distance threshold, or by explicit balls.

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "sclab/families.hpp"

namespace sclab {

constexpr std::uint64_t kDefaultSeed = 0x5c1ab;

/// Unit vectors standing in for "every nonempty open subset": the canonical
/// basis followed by seeded uniform draws from the unit sphere.
struct ProbeSet {
    std::vector<CVector> probes;
    std::uint64_t seed = 0;

    static ProbeSet generate(Eigen::Index dim, std::size_t count, std::uint64_t seed = kDefaultSeed) {
        if (dim < 2)
            throw DimensionError("ProbeSet: ambient dimension must be >= 2");
        if (count < 2 * static_cast<std::size_t>(dim))
            throw InvalidParameterError("ProbeSet: probe count must be >= 2*dim");
        ProbeSet set;
        set.seed = seed;
        set.probes.reserve(count);
        for (Eigen::Index i = 0; i < dim && set.probes.size() < count; ++i)
            set.probes.push_back(CVector::Unit(dim, i));
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        while (set.probes.size() < count) {
            CVector v(dim);
            for (Eigen::Index i = 0; i < dim; ++i)
                v(i) = Complex(gauss(rng), gauss(rng));
            const double n = v.norm();
            if (n <= 1e-12)
                continue;
            set.probes.push_back(v / n);
        }
        return set;
    }

    void validate(Eigen::Index dim) const {
        if (probes.size() < 2 * static_cast<std::size_t>(dim))
            throw InvalidParameterError("ProbeSet: probe count must be >= 2*dim");
        for (const auto& p : probes) {
            if (p.size() != dim)
                throw DimensionError("ProbeSet: probe dimension mismatch");
            if (std::abs(p.norm() - 1.0) > 1e-12)
                throw InvalidParameterError("ProbeSet: probes must be unit vectors");
        }
    }
};

struct Ball {
    CVector center;
    double radius = 0.0;
};

/// Finite stand-in for the countable basis (U_n) in the G-delta formula.
struct BallBasis {
    std::vector<Ball> balls;

    static BallBasis from_probes(const ProbeSet& probes, double relative_radius) {
        if (!(relative_radius > 0.0))
            throw InvalidBallError("BallBasis: radius must be positive");
        BallBasis basis;
        basis.balls.reserve(probes.probes.size());
        for (const auto& p : probes.probes)
            basis.balls.push_back(Ball{p, relative_radius * p.norm()});
        return basis;
    }
};

struct ProbeDistance {
    double distance = 1.0;
    std::size_t member = 0; ///< index of the achieving member
};

struct DensityReport {
    std::vector<ProbeDistance> per_probe;
    double worst_case = 0.0;
    std::size_t worst_probe = 0;
    bool pass = false;
    std::size_t budget_used = 0;
    double eps_used = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Orbit images Tx for the enumerated members. Zero images are kept; they
/// contribute distance 1 downstream.
inline std::vector<CVector> orbit_images(const OperatorFamily& g, const CVector& x,
                                         std::size_t budget) {
    if (g.dim() != x.size())
        throw DimensionError("orbit: vector dimension does not match the family");
    const auto members = g.enumerate(budget);
    std::vector<CVector> images;
    images.reserve(members.size());
    for (const auto& t : members)
        images.push_back(t * x);
    return images;
}

inline ProbeDistance min_distance_to_images(std::span<const CVector> images, const CVector& probe,
                                            const ToleranceConfig& cfg) {
    ProbeDistance best;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const double d = projective_distance(probe, images[i], cfg);
        if (i == 0 || d < best.distance)
            best = ProbeDistance{d, i};
    }
    return best;
}

} // namespace detail

/// Minimum projective distance from the probe to the truncated orbit of x.
inline ProbeDistance min_projective_distance(const OperatorFamily& g, const CVector& x,
                                             const CVector& probe, std::size_t budget,
                                             const ToleranceConfig& cfg = {}) {
    if (probe.norm() <= cfg.zero_cutoff)
        throw ZeroProbeError("min_projective_distance: zero probe");
    const auto images = detail::orbit_images(g, x, budget);
    return detail::min_distance_to_images(images, probe, cfg);
}

/// x is eps-supercyclic when every probe lies within eps of the projective
/// orbit {[Tx]}: the finite surrogate for density of the scaled orbit.
inline DensityReport eps_supercyclic_test(const OperatorFamily& g, const CVector& x,
                                          const ProbeSet& probes, const ToleranceConfig& cfg = {}) {
    if (x.norm() <= cfg.zero_cutoff)
        throw ZeroVectorError("eps_supercyclic_test: zero vector is never supercyclic");
    probes.validate(g.dim());
    const auto images = detail::orbit_images(g, x, cfg.budget);
    DensityReport report;
    report.per_probe.reserve(probes.probes.size());
    report.budget_used = images.size();
    report.eps_used = cfg.eps_density;
    report.seed = probes.seed;
    for (std::size_t i = 0; i < probes.probes.size(); ++i) {
        const auto pd = detail::min_distance_to_images(images, probes.probes[i], cfg);
        if (i == 0 || pd.distance > report.worst_case) {
            report.worst_case = pd.distance;
            report.worst_probe = i;
        }
        report.per_probe.push_back(pd);
    }
    report.pass = report.worst_case <= cfg.eps_density;
    return report;
}

struct BallVerdict {
    bool inside = false;
    std::size_t witness = 0;
    double distance = 1.0;
};

struct GdeltaReport {
    std::vector<BallVerdict> per_ball;
    bool overall = false;
    std::size_t budget_used = 0;
};

/// One layer of the G-delta description of the supercyclic vectors: some
/// scalar multiple of some Tx lands in the ball, i.e. the projective
/// distance from the center to Tx is below radius/|center|. Overall = AND
/// over balls.
inline GdeltaReport gdelta_membership(const OperatorFamily& g, const CVector& x,
                                      const BallBasis& basis, const ToleranceConfig& cfg = {}) {
    if (x.norm() <= cfg.zero_cutoff)
        throw ZeroVectorError("gdelta_membership: zero vector");
    const auto images = detail::orbit_images(g, x, cfg.budget);
    GdeltaReport report;
    report.budget_used = images.size();
    report.overall = true;
    report.per_ball.reserve(basis.balls.size());
    for (const auto& ball : basis.balls) {
        const double center_norm = ball.center.norm();
        if (center_norm <= cfg.zero_cutoff)
            throw InvalidBallError("gdelta_membership: ball centered at zero");
        if (!(ball.radius > 0.0))
            throw InvalidBallError("gdelta_membership: ball radius must be positive");
        const auto pd = detail::min_distance_to_images(images, ball.center, cfg);
        BallVerdict verdict{pd.distance < ball.radius / center_norm, pd.member, pd.distance};
        report.overall = report.overall && verdict.inside;
        report.per_ball.push_back(verdict);
    }
    return report;
}

struct SearchReport {
    std::vector<DensityReport> per_candidate;
    std::vector<std::size_t> passing;
    double pass_fraction = 0.0;
};

/// Empirical surrogate for "SC(Gamma) is dense": fraction of candidates that
/// pass the eps test.
inline SearchReport search_supercyclic_vectors(const OperatorFamily& g,
                                               std::span<const CVector> candidates,
                                               const ProbeSet& probes,
                                               const ToleranceConfig& cfg = {}) {
    SearchReport report;
    report.per_candidate.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        report.per_candidate.push_back(eps_supercyclic_test(g, candidates[i], probes, cfg));
        if (report.per_candidate.back().pass)
            report.passing.push_back(i);
    }
    report.pass_fraction =
        candidates.empty() ? 0.0
                           : static_cast<double>(report.passing.size()) /
                                 static_cast<double>(candidates.size());
    return report;
}

struct ScanReport {
    std::vector<DensityReport> per_sample;
    std::vector<std::size_t> failing;
    bool pass = false;
};

/// SC(Gamma) = X \ {0} surrogate: every sampled nonzero vector must pass.
inline ScanReport supertransitive_scan(const OperatorFamily& g, std::span<const CVector> sample,
                                       const ProbeSet& probes, const ToleranceConfig& cfg = {}) {
    ScanReport report;
    report.per_sample.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        report.per_sample.push_back(eps_supercyclic_test(g, sample[i], probes, cfg));
        if (!report.per_sample.back().pass)
            report.failing.push_back(i);
    }
    report.pass = !sample.empty() && report.failing.empty();
    return report;
}

/// A declared pointwise limit S of members T_k, k running over
/// `approximants` in order; the last gap is the one that matters.
struct PointwiseLimit {
    DenseOperator op;
    std::vector<std::size_t> approximants;
};

struct SotProbeRow {
    double base = 1.0;      ///< min distance over the family alone
    double augmented = 1.0; ///< min distance with the limits adjoined
};

struct SotReport {
    double delta = 0.0; ///< max over limits of the final relative gap
    std::vector<double> limit_gaps;
    std::vector<SotProbeRow> per_probe;
    bool pass = false;
};

/// Desk-scale form of SC(Gamma) = SC(SOT-closure): adjoining verified
/// pointwise limits (at the tested x) never improves any probe's distance by
/// more than the final approximation gap.
inline SotReport sot_limit_consistency(const OperatorFamily& g,
                                       std::span<const PointwiseLimit> limits, const CVector& x,
                                       const ProbeSet& probes, const ToleranceConfig& cfg = {}) {
    if (x.norm() <= cfg.zero_cutoff)
        throw ZeroVectorError("sot_limit_consistency: zero vector");
    probes.validate(g.dim());
    const auto images = detail::orbit_images(g, x, cfg.budget);

    SotReport report;
    std::vector<CVector> limit_images;
    limit_images.reserve(limits.size());
    for (const auto& limit : limits) {
        if (limit.op.rows() != g.dim() || limit.op.cols() != g.dim())
            throw DimensionError("sot_limit_consistency: limit dimension mismatch");
        if (limit.approximants.empty())
            throw NotALimitError("sot_limit_consistency: limit declares no approximants");
        const CVector sx = limit.op * x;
        double final_gap = 0.0;
        for (std::size_t idx : limit.approximants) {
            if (idx >= images.size())
                throw IndexError("sot_limit_consistency: approximant index out of budget");
            const double image_norm = std::max(images[idx].norm(), cfg.zero_cutoff);
            final_gap = (sx - images[idx]).norm() / image_norm;
        }
        if (final_gap > cfg.eps_density)
            throw NotALimitError("sot_limit_consistency: declared limit stays at relative gap " +
                                 std::to_string(final_gap) + " from its approximants at x");
        report.limit_gaps.push_back(final_gap);
        report.delta = std::max(report.delta, final_gap);
        limit_images.push_back(sx);
    }

    std::vector<CVector> all_images = images;
    all_images.insert(all_images.end(), limit_images.begin(), limit_images.end());
    report.pass = true;
    report.per_probe.reserve(probes.probes.size());
    for (const auto& p : probes.probes) {
        SotProbeRow row;
        row.base = detail::min_distance_to_images(images, p, cfg).distance;
        row.augmented = detail::min_distance_to_images(all_images, p, cfg).distance;
        report.pass = report.pass && row.augmented >= row.base - report.delta;
        report.per_probe.push_back(row);
    }
    return report;
}

} // namespace sclab
