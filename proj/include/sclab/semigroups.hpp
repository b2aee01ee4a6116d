#pragma once

// C0-semigroup grids from matrix generators, rescaled and similar
// semigroups, entire C-regularized group grids, and the checks for the
// group axioms, nonvanishing orbits and tail density.

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sclab/density.hpp"
#include "sclab/families.hpp"

namespace sclab {

/// {e^{khA} : k = 0..count} built by repeated multiplication of e^{hA},
/// re-anchored to a direct exponential every few steps to control drift.
struct SemigroupGrid {
    DenseOperator generator;
    double step = 0.0;
    std::size_t count = 0;
    OperatorFamily family;
    double max_drift = 0.0; ///< largest |member_k - e^{khA}| seen at re-anchor points
};

inline SemigroupGrid semigroup_grid(const DenseOperator& a, double step, std::size_t count) {
    if (a.rows() != a.cols())
        throw DimensionError("semigroup_grid: generator must be square");
    if (!(step > 0.0))
        throw InvalidParameterError("semigroup_grid: step must be positive");
    if (count < 1)
        throw InvalidParameterError("semigroup_grid: count must be >= 1");
    if (!a.allFinite())
        throw NumericalError("semigroup_grid: non-finite generator");

    const DenseOperator stepper = matrix_exponential(a, Complex(step, 0.0));
    std::vector<DenseOperator> members;
    members.reserve(count + 1);
    members.push_back(DenseOperator::Identity(a.rows(), a.cols()));
    double max_drift = 0.0;
    constexpr std::size_t reanchor_every = 8;
    for (std::size_t k = 1; k <= count; ++k) {
        DenseOperator next = members.back() * stepper;
        if (k % reanchor_every == 0) {
            DenseOperator direct =
                matrix_exponential(a, Complex(static_cast<double>(k) * step, 0.0));
            max_drift = std::max(max_drift, (next - direct).norm());
            next = std::move(direct);
        }
        if (!next.allFinite())
            throw NumericalError("semigroup_grid: overflow while building members");
        members.push_back(std::move(next));
    }
    SemigroupGrid grid{a, step, count,
                       OperatorFamily::tagged_members(FamilyKind::SemigroupGrid, std::move(members)),
                       max_drift};
    return grid;
}

/// Max over k1 + k2 <= count of |T_{(k1+k2)h} - T_{k1 h} T_{k2 h}|.
inline double semigroup_law_residual(const SemigroupGrid& grid) {
    const auto members = grid.family.enumerate(grid.count + 1);
    double worst = 0.0;
    for (std::size_t k1 = 0; k1 < members.size(); ++k1)
        for (std::size_t k2 = 0; k1 + k2 < members.size(); ++k2)
            worst = std::max(worst, (members[k1 + k2] - members[k1] * members[k2]).norm());
    return worst;
}

struct RescaleParams {
    Complex mu{};
    double alpha = 1.0;

    void validate() const {
        if (!(alpha > 0.0))
            throw InvalidParameterError("RescaleParams: alpha must be positive");
    }
};

/// Rescaled semigroup S_t = e^{mu t} T_{alpha t} sampled on the same index
/// grid: member k = e^{mu k h} e^{(alpha k h) A}. For alpha = 1 this is
/// exactly a scaled family over the original members.
inline OperatorFamily rescale_semigroup(const SemigroupGrid& grid, const RescaleParams& params) {
    params.validate();
    std::vector<Complex> scalars;
    scalars.reserve(grid.count + 1);
    for (std::size_t k = 0; k <= grid.count; ++k)
        scalars.push_back(std::exp(params.mu * (static_cast<double>(k) * grid.step)));
    if (params.alpha == 1.0)
        return scale_members(grid.family, std::move(scalars));
    const SemigroupGrid stretched =
        semigroup_grid(params.alpha * grid.generator, grid.step, grid.count);
    return scale_members(stretched.family, std::move(scalars));
}

/// Similar semigroup S_t = phi^{-1} T_t phi (the semigroup convention maps
/// through the inverse on the left).
inline OperatorFamily similar_semigroup(const SemigroupGrid& grid, const IntertwiningMap& phi) {
    return conjugate_similar(grid.family, phi.inverted());
}

/// {S(z) = e^{zA} C : z in z_grid}; S(0) = C exactly by construction.
struct RegularizedGroupGrid {
    DenseOperator generator;
    DenseOperator regularizer;
    std::vector<Complex> z_grid;
    OperatorFamily family;
    double commutation_defect = 0.0; ///< |AC - CA|
};

inline RegularizedGroupGrid regularized_group_grid(const DenseOperator& a, const DenseOperator& c,
                                                   std::vector<Complex> z_grid) {
    if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows())
        throw DimensionError("regularized_group_grid: A and C must be square and share dims");
    const bool has_zero = std::any_of(z_grid.begin(), z_grid.end(),
                                      [](Complex z) { return z == Complex(0.0, 0.0); });
    if (!has_zero)
        throw InvalidParameterError("regularized_group_grid: z grid must contain 0");
    std::vector<DenseOperator> members;
    members.reserve(z_grid.size());
    for (const Complex z : z_grid)
        members.push_back(z == Complex(0.0, 0.0) ? c : DenseOperator(matrix_exponential(a, z) * c));
    RegularizedGroupGrid grid{
        a, c, std::move(z_grid),
        OperatorFamily::tagged_members(FamilyKind::RegularizedGroupGrid, std::move(members)),
        (a * c - c * a).norm()};
    return grid;
}

/// z = 0 plus log-spaced ring moduli with uniformly spaced arguments; the
/// sampling pattern used for tail-density sweeps.
inline std::vector<Complex> annular_z_grid(double r_min, double r_max, std::size_t rings,
                                           std::size_t angles) {
    if (!(r_min > 0.0) || !(r_max >= r_min))
        throw InvalidParameterError("annular_z_grid: need 0 < r_min <= r_max");
    if (rings < 1 || angles < 1)
        throw InvalidParameterError("annular_z_grid: rings and angles must be >= 1");
    std::vector<Complex> zs;
    zs.reserve(rings * angles + 1);
    zs.push_back(Complex(0.0, 0.0));
    const double ratio = rings > 1 ? std::pow(r_max / r_min, 1.0 / (rings - 1.0)) : 1.0;
    double r = r_min;
    for (std::size_t i = 0; i < rings; ++i, r *= ratio) {
        for (std::size_t j = 0; j < angles; ++j) {
            const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(angles);
            zs.push_back(Complex(r * std::cos(theta), r * std::sin(theta)));
        }
    }
    return zs;
}

struct GroupAxiomsReport {
    double max_residual = 0.0;
    std::size_t pairs_tested = 0;
    bool insufficient_grid = false; ///< no pair beyond (0, 0) was testable
    bool pass = false;
};

/// Axiom (2): S(z+w) C = S(z) S(w) for every grid pair whose sum lies on the
/// grid again. PASS iff the worst residual is at most tol * |C|^2.
inline GroupAxiomsReport group_axioms_check(const RegularizedGroupGrid& grid,
                                            const ToleranceConfig& cfg = {}) {
    const auto members = grid.family.enumerate(grid.z_grid.size());
    GroupAxiomsReport report;
    const double cnorm = grid.regularizer.norm();
    std::size_t nontrivial = 0;

    // quantized lookup of grid points; exact matching up to 1e-12 relative
    constexpr double kCell = 1e-7;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets;
    auto key = [](double re, double im) {
        return (static_cast<std::int64_t>(std::llround(re / kCell)) << 32) ^
               static_cast<std::int64_t>(std::llround(im / kCell));
    };
    for (std::size_t i = 0; i < grid.z_grid.size(); ++i)
        buckets[key(grid.z_grid[i].real(), grid.z_grid[i].imag())].push_back(i);

    auto find_on_grid = [&](Complex target) -> std::ptrdiff_t {
        for (int dr = -1; dr <= 1; ++dr) {
            for (int di = -1; di <= 1; ++di) {
                const auto it =
                    buckets.find(key(target.real() + dr * kCell, target.imag() + di * kCell));
                if (it == buckets.end())
                    continue;
                for (std::size_t i : it->second) {
                    const double scale =
                        std::max({1.0, std::abs(target), std::abs(grid.z_grid[i])});
                    if (std::abs(grid.z_grid[i] - target) <= 1e-12 * scale)
                        return static_cast<std::ptrdiff_t>(i);
                }
            }
        }
        return -1;
    };

    for (std::size_t i = 0; i < grid.z_grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.z_grid.size(); ++j) {
            const std::ptrdiff_t sum_index = find_on_grid(grid.z_grid[i] + grid.z_grid[j]);
            if (sum_index < 0)
                continue;
            ++report.pairs_tested;
            if (grid.z_grid[i] != Complex(0.0, 0.0) || grid.z_grid[j] != Complex(0.0, 0.0))
                ++nontrivial;
            const double residual =
                (members[static_cast<std::size_t>(sum_index)] * grid.regularizer -
                 members[i] * members[j])
                    .norm();
            report.max_residual = std::max(report.max_residual, residual);
        }
    }
    report.insufficient_grid = nontrivial == 0;
    report.pass = report.max_residual <= cfg.tol_residual * cnorm * cnorm;
    return report;
}

struct NonvanishingReport {
    double min_norm = 0.0;
    std::size_t argmin = 0;
    bool pass = false;
};

/// Necessary condition for supercyclic vectors of a regularized group:
/// S(z) x never vanishes on the grid.
inline NonvanishingReport nonvanishing_orbit_check(const RegularizedGroupGrid& grid,
                                                   const CVector& x,
                                                   const ToleranceConfig& cfg = {}) {
    if (x.norm() <= cfg.zero_cutoff)
        throw ZeroVectorError("nonvanishing_orbit_check: zero vector");
    const auto images = detail::orbit_images(grid.family, x, grid.z_grid.size());
    NonvanishingReport report;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const double n = images[i].norm();
        if (i == 0 || n < report.min_norm) {
            report.min_norm = n;
            report.argmin = i;
        }
    }
    report.pass = report.min_norm >= cfg.zero_cutoff;
    return report;
}

struct TailDensityReport {
    DensityReport tail;
    DensityReport full;
    double omega0 = 0.0;
    std::size_t tail_members = 0;
};

/// Density of {alpha S(z) x : |z| > omega0} versus the full grid. Verdicts
/// are reported side by side; on a finite-dimensional grid the tail claim
/// eventually fails once omega0 exhausts the sampled annuli.
inline TailDensityReport tail_density_check(const RegularizedGroupGrid& grid, const CVector& x,
                                            double omega0, const ProbeSet& probes,
                                            const ToleranceConfig& cfg = {}) {
    if (omega0 < 0.0)
        throw InvalidParameterError("tail_density_check: omega0 must be >= 0");
    std::vector<DenseOperator> tail_ops;
    const auto members = grid.family.enumerate(grid.z_grid.size());
    for (std::size_t i = 0; i < grid.z_grid.size(); ++i)
        if (std::abs(grid.z_grid[i]) > omega0)
            tail_ops.push_back(members[i]);
    if (tail_ops.empty())
        throw EmptyTailError("tail_density_check: no grid point beyond omega0");

    TailDensityReport report;
    report.omega0 = omega0;
    report.tail_members = tail_ops.size();
    const OperatorFamily tail_family = OperatorFamily::finite_list(std::move(tail_ops));
    report.tail = eps_supercyclic_test(tail_family, x, probes, cfg);
    report.full = eps_supercyclic_test(grid.family, x, probes, cfg);
    return report;
}

} // namespace sclab
