#pragma once

// Transitivity checkers: the neighborhood form of supercyclic transitivity,
// strict transitivity with an exact completion oracle, the Gamma_xy
// construction with its 1/n-perturbation trick, and the factorization
// hypothesis behind "supercyclic implies supercyclic transitive".

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sclab/density.hpp"
#include "sclab/families.hpp"

namespace sclab {

namespace detail {

inline constexpr std::array<unsigned, 40> kHaltonPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

inline double halton(std::size_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    for (std::size_t i = index + 1; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

/// Deterministic low-discrepancy points in the complex ball of the given
/// radius (strictly inside it).
inline CVector ball_point(std::size_t index, Eigen::Index dim, double radius) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = 2.0 * halton(index, kHaltonPrimes[(2 * i) % kHaltonPrimes.size()]) - 1.0;
        const double im =
            2.0 * halton(index, kHaltonPrimes[(2 * i + 1) % kHaltonPrimes.size()]) - 1.0;
        v(i) = Complex(re, im);
    }
    const double n = v.norm();
    if (n > 1.0)
        v /= n;
    return 0.999 * radius * v;
}

} // namespace detail

struct TransitiveWitness {
    CVector z;
    Complex alpha{};
    std::size_t member = 0;
    double projective_residual = 1.0;
    double additive_residual = 0.0; ///< |alpha T z - y|
};

struct TransitivePairReport {
    bool success = false;
    std::optional<TransitiveWitness> witness;
    std::size_t candidates_tried = 0;
};

/// Neighborhood form of supercyclic transitivity for one pair: find z,
/// alpha, T with x - z in W and alpha T z - y in W, where W is the ball of
/// radius w_radius. Candidates are x itself, any caller-supplied hints inside
/// W around x, then low-discrepancy perturbations (count taken from the
/// budget). The scalar is eliminated analytically and recovered afterwards.
inline TransitivePairReport transitive_pair_test(const OperatorFamily& g, const CVector& x,
                                                 const CVector& y, double w_radius,
                                                 const ToleranceConfig& cfg = {},
                                                 std::span<const CVector> z_hints = {}) {
    if (x.norm() <= cfg.zero_cutoff || y.norm() <= cfg.zero_cutoff)
        throw ZeroVectorError("transitive_pair_test: x and y must be nonzero");
    if (!(w_radius > 0.0))
        throw InvalidParameterError("transitive_pair_test: w_radius must be positive");
    const auto members = g.enumerate(cfg.budget);
    const double threshold = w_radius / y.norm();

    TransitivePairReport report;
    auto try_candidate = [&](const CVector& z) -> bool {
        ++report.candidates_tried;
        for (std::size_t m = 0; m < members.size(); ++m) {
            const CVector image = members[m] * z;
            const double d = projective_distance(y, image, cfg);
            if (d <= threshold) {
                TransitiveWitness w;
                w.z = z;
                w.member = m;
                w.alpha = projective_alignment(y, image, cfg);
                w.projective_residual = d;
                w.additive_residual = (w.alpha * image - y).norm();
                report.witness = std::move(w);
                report.success = true;
                return true;
            }
        }
        return false;
    };

    if (try_candidate(x))
        return report;
    for (const auto& hint : z_hints) {
        if (hint.size() != x.size())
            throw DimensionError("transitive_pair_test: hint dimension mismatch");
        if ((hint - x).norm() > w_radius)
            continue; // outside W; not admissible as z
        if (try_candidate(hint))
            return report;
    }
    for (std::size_t i = 0; i < cfg.budget; ++i) {
        if (try_candidate(x + detail::ball_point(i, x.size(), w_radius)))
            return report;
    }
    return report;
}

struct StrictPairOutcome {
    bool success = false;
    std::size_t member = 0;
    Complex alpha{};
    double residual = 1.0; ///< projective distance of the best member
};

struct StrictTransitivityReport {
    bool pass = false;
    double max_residual = 0.0; ///< over successful pairs
    std::vector<StrictPairOutcome> per_pair;
    std::vector<std::size_t> failures;
};

/// Exact connection: for every pair some member satisfies alpha T x = y to
/// within the residual tolerance.
inline StrictTransitivityReport
strict_transitivity_test(const OperatorFamily& g,
                         std::span<const std::pair<CVector, CVector>> pairs,
                         const ToleranceConfig& cfg = {}) {
    const auto members = g.enumerate(cfg.budget);
    StrictTransitivityReport report;
    report.per_pair.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        if (x.norm() <= cfg.zero_cutoff || y.norm() <= cfg.zero_cutoff)
            throw ZeroVectorError("strict_transitivity_test: pairs must be nonzero");
        StrictPairOutcome best;
        for (std::size_t m = 0; m < members.size(); ++m) {
            const CVector image = members[m] * x;
            const double d = projective_distance(y, image, cfg);
            if (m == 0 || d < best.residual) {
                best.residual = d;
                best.member = m;
                best.alpha = projective_alignment(y, image, cfg);
                const double additive = (best.alpha * image - y).norm();
                best.success = d <= cfg.tol_residual && additive <= cfg.tol_residual * y.norm();
                if (best.success)
                    break;
            }
        }
        if (best.success)
            report.max_residual = std::max(report.max_residual, best.residual);
        else
            report.failures.push_back(i);
        report.per_pair.push_back(best);
    }
    report.pass = !pairs.empty() && report.failures.empty();
    return report;
}

/// Rank-one completion T = I + (y - x) x* / |x|^2, which maps x to y exactly.
inline DenseOperator completion_operator(const CVector& x, const CVector& y) {
    if (x.size() != y.size())
        throw DimensionError("completion_operator: dimension mismatch");
    const double nx2 = x.squaredNorm();
    if (nx2 == 0.0)
        throw ZeroVectorError("completion_operator: x must be nonzero");
    return DenseOperator::Identity(x.size(), x.size()) + ((y - x) * x.adjoint()) / nx2;
}

/// Finite family of completion operators for every (from, to) combination;
/// the strict-transitivity witness generator.
inline OperatorFamily completion_oracle_family(std::span<const CVector> from,
                                               std::span<const CVector> to) {
    std::vector<DenseOperator> ops;
    ops.reserve(from.size() * to.size());
    for (const auto& x : from)
        for (const auto& y : to)
            ops.push_back(completion_operator(x, y));
    return OperatorFamily::finite_list(std::move(ops));
}

/// Membership in Gamma_xy = {T : Tx and y are linearly independent}. The
/// convention Tx = 0 counts as dependent; (x, y) themselves must be
/// independent.
inline bool gamma_xy_membership(const DenseOperator& t, const CVector& x, const CVector& y,
                                const ToleranceConfig& cfg = {}) {
    if (x.norm() <= cfg.zero_cutoff || y.norm() <= cfg.zero_cutoff)
        throw PreconditionError("gamma_xy_membership: x and y must be nonzero");
    if (projective_distance(y, x, cfg) <= cfg.tol_residual)
        throw PreconditionError("gamma_xy_membership: x and y must be linearly independent");
    const CVector image = apply_operator(t, x);
    if (image.norm() <= cfg.zero_cutoff)
        return false;
    return projective_distance(y, image, cfg) > cfg.tol_residual;
}

/// The proof's perturbation trick: S + (1/n) I for the smallest n >= 1 that
/// lands in Gamma_xy. At most one n can fail, so this terminates quickly.
inline DenseOperator gamma_xy_perturb(const DenseOperator& s, const CVector& x, const CVector& y,
                                      const ToleranceConfig& cfg = {}) {
    if (s.rows() != s.cols() || s.rows() != x.size())
        throw DimensionError("gamma_xy_perturb: dimension mismatch");
    const DenseOperator eye = DenseOperator::Identity(s.rows(), s.cols());
    for (std::size_t n = 1; n <= static_cast<std::size_t>(s.rows()) + 1; ++n) {
        DenseOperator candidate = s + eye / static_cast<double>(n);
        if (gamma_xy_membership(candidate, x, y, cfg))
            return candidate;
    }
    throw NumericalError("gamma_xy_perturb: no perturbation found (x, y dependent?)");
}

struct UnwitnessedPair {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    double best_residual = 0.0; ///< best relative residual over both directions
};

struct FactorizationReport {
    bool pass = false;
    double max_witnessed_residual = 0.0;
    std::size_t pairs_checked = 0;
    std::vector<UnwitnessedPair> unwitnessed;
};

/// Hypothesis of the factorization theorem: every pair of distinct members
/// factorizes through the family, T = A S for some member A. A pair counts
/// as witnessed when either ordering factorizes (for a semigroup only
/// t1 > t2 can, and that is what the theorem's proof uses). Semigroup grids
/// short-circuit the member search by index arithmetic.
inline FactorizationReport factorization_property_test(const OperatorFamily& g,
                                                       const ToleranceConfig& cfg = {}) {
    const auto members = g.enumerate(cfg.budget);
    const std::size_t m = members.size();
    FactorizationReport report;
    const bool grid_arithmetic = g.kind() == FamilyKind::SemigroupGrid && !g.has_removals();

    auto directed_residual = [&](std::size_t ti, std::size_t si) -> double {
        // best over A of |T - A S| / |T|
        const double tnorm = std::max(members[ti].norm(), cfg.zero_cutoff);
        if (grid_arithmetic) {
            if (ti < si)
                return std::numeric_limits<double>::infinity();
            return (members[ti] - members[ti - si] * members[si]).norm() / tnorm;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < m; ++a) {
            best = std::min(best, (members[ti] - members[a] * members[si]).norm() / tnorm);
            if (best <= cfg.tol_residual)
                break;
        }
        return best;
    };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            ++report.pairs_checked;
            const double forward = directed_residual(j, i);
            double best = forward;
            if (forward > cfg.tol_residual)
                best = std::min(best, directed_residual(i, j));
            if (best <= cfg.tol_residual)
                report.max_witnessed_residual = std::max(report.max_witnessed_residual, best);
            else
                report.unwitnessed.push_back(UnwitnessedPair{j, i, best});
        }
    }
    report.pass = report.unwitnessed.empty();
    return report;
}

} // namespace sclab
