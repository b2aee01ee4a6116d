#include <catch_amalgamated.hpp>

#include <sclab/semigroups.hpp>
#include <sclab/transitivity.hpp>

#include "oracles.hpp"

using namespace sclab;
using Catch::Approx;

namespace {

CVector vec2(Complex a, Complex b) {
    CVector v(2);
    v << a, b;
    return v;
}

DenseOperator diag2(Complex a, Complex b) {
    DenseOperator m = DenseOperator::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

TEST_CASE("semigroup grids from a generator", "[semigroups]") {
    oracles::Rng rng(41);

    SECTION("member 0 is the identity exactly") {
        const auto grid = semigroup_grid(rng.matrix_with_norm(3, 1.0), 0.1, 5);
        REQUIRE((grid.family.member(0) - DenseOperator::Identity(3, 3)).norm() == 0.0);
    }

    SECTION("diagonal generators exponentiate entrywise") {
        const Complex a(0.4, -0.3);
        const auto grid = semigroup_grid(diag2(a, 2.0 * a), 0.25, 8);
        for (std::size_t k = 0; k <= 8; ++k) {
            const DenseOperator m = grid.family.member(k);
            const double t = 0.25 * double(k);
            REQUIRE(std::abs(m(0, 0) - std::exp(a * t)) <= 1e-10);
            REQUIRE(std::abs(m(1, 1) - std::exp(2.0 * a * t)) <= 1e-10);
        }
    }

    SECTION("drift against single-shot exponentials stays below 1e-8") {
        const DenseOperator a = rng.matrix_with_norm(4, 2.0);
        const auto grid = semigroup_grid(a, 0.1, 20);
        for (std::size_t k = 0; k <= 20; ++k) {
            const DenseOperator direct =
                matrix_exponential(a, Complex(0.1 * double(k), 0.0));
            REQUIRE((grid.family.member(k) - direct).norm() <= 1e-8);
        }
        REQUIRE(semigroup_law_residual(grid) <= 1e-8);
    }

    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(semigroup_grid(rng.matrix(2), -0.1, 5), InvalidParameterError);
        REQUIRE_THROWS_AS(semigroup_grid(rng.matrix(2), 0.1, 0), InvalidParameterError);
    }
}

TEST_CASE("rescaled semigroups", "[semigroups]") {
    oracles::Rng rng(43);
    const auto grid = semigroup_grid(rng.matrix_with_norm(2, 1.5), 0.2, 10);

    SECTION("mu = 0, alpha = 1 reproduces the grid") {
        const auto rescaled = rescale_semigroup(grid, RescaleParams{Complex(0, 0), 1.0});
        for (std::size_t k = 0; k <= 10; ++k)
            REQUIRE((rescaled.member(k) - grid.family.member(k)).norm() == 0.0);
    }

    SECTION("real mu leaves every projective distance unchanged") {
        const auto rescaled = rescale_semigroup(grid, RescaleParams{Complex(0.7, 0), 1.0});
        const auto probes = ProbeSet::generate(2, 16, 2718);
        const CVector x = rng.unit_vector(2);
        const auto before = eps_supercyclic_test(grid.family, x, probes);
        const auto after = eps_supercyclic_test(rescaled, x, probes);
        REQUIRE(after.pass == before.pass);
        for (std::size_t i = 0; i < probes.probes.size(); ++i)
            REQUIRE(after.per_probe[i].distance ==
                    Approx(before.per_probe[i].distance).margin(1e-12));
    }

    SECTION("complex mu with alpha = 2 matches direct exponentials") {
        const RescaleParams params{Complex(1.0, 1.0), 2.0};
        const auto rescaled = rescale_semigroup(grid, params);
        for (std::size_t k = 0; k <= 10; ++k) {
            const double t = 0.2 * double(k);
            const DenseOperator expected =
                std::exp(params.mu * t) *
                DenseOperator(matrix_exponential(grid.generator, Complex(2.0 * t, 0.0)));
            REQUIRE((rescaled.member(k) - expected).norm() <= 1e-8 * expected.norm());
        }
    }

    SECTION("alpha must be positive") {
        REQUIRE_THROWS_AS(rescale_semigroup(grid, RescaleParams{Complex(0, 0), 0.0}),
                          InvalidParameterError);
    }
}

TEST_CASE("similar semigroups", "[semigroups]") {
    oracles::Rng rng(47);
    const auto grid = semigroup_grid(rng.matrix_with_norm(3, 1.0), 0.2, 8);

    SECTION("phi = I reproduces the grid") {
        const auto phi = IntertwiningMap::analyze(DenseOperator::Identity(3, 3));
        const auto similar = similar_semigroup(grid, phi);
        for (std::size_t k = 0; k <= 8; ++k)
            REQUIRE((similar.member(k) - grid.family.member(k)).norm() <= 1e-13);
    }

    SECTION("a permutation conjugates a diagonal generator's grid") {
        const auto dgrid = semigroup_grid(diag2(1.0, 2.0), 0.3, 4);
        DenseOperator perm = DenseOperator::Zero(2, 2);
        perm(0, 1) = 1.0;
        perm(1, 0) = 1.0;
        const auto similar = similar_semigroup(dgrid, IntertwiningMap::analyze(perm));
        for (std::size_t k = 0; k <= 4; ++k) {
            const DenseOperator m = similar.member(k);
            const double t = 0.3 * double(k);
            REQUIRE(std::abs(m(0, 0) - std::exp(2.0 * t)) <= 1e-10);
            REQUIRE(std::abs(m(1, 1) - std::exp(1.0 * t)) <= 1e-10);
        }
    }

    SECTION("similar grids obey the semigroup law up to kappa * 1e-8") {
        const auto phi = IntertwiningMap::analyze(rng.matrix(3));
        REQUIRE(phi.invertible);
        const auto similar = similar_semigroup(grid, phi);
        const auto members = similar.enumerate(9);
        const double kappa = phi.condition();
        double worst = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = 0; i + j < members.size(); ++j)
                worst = std::max(worst, (members[i + j] - members[i] * members[j]).norm());
        REQUIRE(worst <= kappa * 1e-8);
    }

    SECTION("supercyclic verdicts transfer with tolerance inflated by kappa") {
        const auto dgrid = semigroup_grid(diag2(Complex(0, 0), Complex(0.2, 1.1)), 0.4, 24);
        const auto phi = IntertwiningMap::analyze(rng.matrix(2));
        const double kappa = phi.condition();
        const auto similar = similar_semigroup(dgrid, phi);
        const auto probes = ProbeSet::generate(2, 12, 123);
        const CVector x = vec2(1, 1);
        const auto base = eps_supercyclic_test(dgrid.family, x, probes);

        // S_t = phi^{-1} T_t phi acts on phi^{-1} x; probes move the same way
        const DenseOperator phi_inv = *phi.right_inverse;
        ProbeSet mapped;
        mapped.seed = probes.seed;
        for (const auto& p : probes.probes) {
            const CVector q = phi_inv * p;
            mapped.probes.push_back(q / q.norm());
        }
        const auto moved = eps_supercyclic_test(similar, CVector(phi_inv * x), mapped);
        for (std::size_t i = 0; i < probes.probes.size(); ++i)
            REQUIRE(moved.per_probe[i].distance <= kappa * base.per_probe[i].distance + 1e-12);
    }
}

TEST_CASE("regularized group grids", "[semigroups]") {
    oracles::Rng rng(53);

    SECTION("S(0) = C exactly, defect recorded") {
        const DenseOperator a = rng.matrix(2), c = rng.matrix(2);
        const auto grid = regularized_group_grid(a, c, {Complex(0, 0), Complex(1, 0)});
        REQUIRE((grid.family.member(0) - c).norm() == 0.0);
        REQUIRE(grid.commutation_defect == Approx((a * c - c * a).norm()));
    }

    SECTION("diagonal A, C give diagonal members with closed-form entries") {
        const auto grid = regularized_group_grid(diag2(1.0, 2.0), diag2(1.0, 0.5),
                                                 {Complex(0, 0), Complex(1, 0)});
        const DenseOperator m = grid.family.member(1);
        REQUIRE(std::abs(m(0, 0) - std::exp(1.0)) <= 1e-12);
        REQUIRE(std::abs(m(1, 1) - 0.5 * std::exp(2.0)) <= 1e-10);
        REQUIRE(std::abs(m(0, 1)) <= 1e-14);
    }

    SECTION("the z grid must contain 0") {
        REQUIRE_THROWS_AS(regularized_group_grid(diag2(1, 1), diag2(1, 1), {Complex(1, 0)}),
                          InvalidParameterError);
    }
}

TEST_CASE("group axioms check", "[semigroups][oracle]") {
    ToleranceConfig cfg;

    SECTION("diagonal pairs satisfy the axiom to 1e-10") {
        std::vector<Complex> zs = {Complex(0, 0), Complex(0.5, 0), Complex(1, 0),
                                   Complex(1.5, 0), Complex(2, 0)};
        const auto grid = regularized_group_grid(diag2(Complex(0.3, 0.7), Complex(-0.2, 1.0)),
                                                 diag2(1.0, 0.5), zs);
        const auto report = group_axioms_check(grid, cfg);
        REQUIRE(report.pass);
        REQUIRE(report.max_residual <= 1e-10);
        REQUIRE_FALSE(report.insufficient_grid);
        // C = S(0) commutes with every member for diagonal constructions
        const auto members = grid.family.enumerate(zs.size());
        for (const auto& m : members)
            REQUIRE((m * grid.regularizer - grid.regularizer * m).norm() <= 1e-10);
    }

    SECTION("a non-commuting pair fails with the handwritten residual 2|w|") {
        // A = elementary nilpotent, C = diag(1, 2): S(z) = (I + zA) C and
        // S(z+w)C - S(z)S(w) = w (A C^2 - C A C) = w [[0, 2], [0, 0]]
        DenseOperator a = DenseOperator::Zero(2, 2);
        a(0, 1) = 1.0;
        const DenseOperator c = diag2(1.0, 2.0);
        std::vector<Complex> zs = {Complex(0, 0), Complex(0.5, 0), Complex(1, 0)};
        const auto grid = regularized_group_grid(a, c, zs);
        const auto report = group_axioms_check(grid, cfg);
        REQUIRE_FALSE(report.pass);
        // pairs with z + w on the grid reach w = 1: residual exactly 2
        REQUIRE(report.max_residual == Approx(2.0).margin(1e-9));
    }

    SECTION("the singleton grid {0} is a vacuous pass, flagged") {
        const auto grid = regularized_group_grid(diag2(1, 2), diag2(1, 1), {Complex(0, 0)});
        const auto report = group_axioms_check(grid, cfg);
        REQUIRE(report.pass);
        REQUIRE(report.insufficient_grid);
    }
}

TEST_CASE("nonvanishing orbit check", "[semigroups][oracle]") {
    ToleranceConfig cfg;
    oracles::Rng rng(59);

    SECTION("invertible C never vanishes") {
        const auto grid = regularized_group_grid(rng.matrix_with_norm(2, 1.0),
                                                 DenseOperator::Identity(2, 2),
                                                 annular_z_grid(0.5, 2.0, 3, 8));
        const auto report = nonvanishing_orbit_check(grid, rng.unit_vector(2), cfg);
        REQUIRE(report.pass);
        REQUIRE(report.min_norm > cfg.zero_cutoff);
    }

    SECTION("x in ker C vanishes identically") {
        const auto grid = regularized_group_grid(rng.matrix_with_norm(2, 1.0), diag2(1.0, 0.0),
                                                 {Complex(0, 0), Complex(1, 0)});
        const auto report = nonvanishing_orbit_check(grid, vec2(0, 1), cfg);
        REQUIRE_FALSE(report.pass);
        REQUIRE(report.min_norm == 0.0);
    }

    SECTION("a strongly contracting direction still clears the zero cutoff") {
        // A = diag(-5, -5), C = I, x = e1, real z up to 2: min |S(z)x| = e^-10
        std::vector<Complex> zs;
        for (int k = 0; k <= 8; ++k)
            zs.push_back(Complex(0.25 * k, 0.0));
        const auto grid = regularized_group_grid(diag2(-5.0, -5.0), DenseOperator::Identity(2, 2),
                                                 zs);
        const auto report = nonvanishing_orbit_check(grid, vec2(1, 0), cfg);
        REQUIRE(report.pass);
        REQUIRE(report.min_norm == Approx(std::exp(-10.0)).margin(1e-12));
    }
}

TEST_CASE("tail density of a covering regularized group", "[semigroups][oracle]") {
    // A = diag(0, i), C = I: S(z) x = (x1, e^{iz} x2) sweeps the ratio
    // e^{iz}. Rings between 2 pi and 4 pi keep covering projective space
    // until omega0 exhausts the inner rings.
    const auto zs = annular_z_grid(2.0 * M_PI, 4.0 * M_PI, 33, 96);
    const auto grid =
        regularized_group_grid(diag2(Complex(0, 0), Complex(0, 1)),
                               DenseOperator::Identity(2, 2), zs);
    const CVector x = vec2(1, 1);
    const auto probes = ProbeSet::generate(2, 128, 99);
    ToleranceConfig cfg;
    cfg.eps_density = 0.2;

    const auto full = tail_density_check(grid, x, 0.0, probes, cfg);
    REQUIRE(full.full.pass);
    REQUIRE(full.tail.pass); // omega0 = 0 only drops z = 0

    for (const double omega0 : {1.0, M_PI, 2.0 * M_PI, 9.0}) {
        const auto report = tail_density_check(grid, x, omega0, probes, cfg);
        REQUIRE(report.tail.pass);
        // tail orbit is a subset of the full orbit
        REQUIRE(report.tail.worst_case >= report.full.worst_case - 1e-15);
    }

    SECTION("a finite grid eventually loses the tail (expected divergence)") {
        const auto report = tail_density_check(grid, x, 11.0, probes, cfg);
        REQUIRE_FALSE(report.tail.pass);
        REQUIRE(report.full.pass);
    }

    SECTION("an empty tail is an error") {
        REQUIRE_THROWS_AS(tail_density_check(grid, x, 100.0, probes, cfg), EmptyTailError);
    }

    SECTION("a vector failing the full test fails the tail too") {
        const auto report = tail_density_check(grid, vec2(1, 0), 1.0, probes, cfg);
        REQUIRE_FALSE(report.full.pass);
        REQUIRE_FALSE(report.tail.pass);
    }
}
