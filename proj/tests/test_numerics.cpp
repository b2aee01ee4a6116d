#include <catch_amalgamated.hpp>

#include <sclab/numerics.hpp>

#include "oracles.hpp"

using namespace sclab;
using Catch::Approx;

namespace {
CVector e(Eigen::Index dim, Eigen::Index i) { return CVector::Unit(dim, i); }
} // namespace

TEST_CASE("apply_operator is the matrix-vector product", "[numerics]") {
    const DenseOperator id = DenseOperator::Identity(3, 3);
    REQUIRE((apply_operator(id, e(3, 0)) - e(3, 0)).norm() == 0.0);

    DenseOperator diag = DenseOperator::Zero(2, 2);
    diag(0, 0) = Complex(1, 0);
    diag(1, 1) = Complex(2, 1);
    CVector x(2);
    x << Complex(1, 0), Complex(1, 0);
    const CVector y = apply_operator(diag, x);
    REQUIRE(y(0) == Complex(1, 0));
    REQUIRE(y(1) == Complex(2, 1));

    SECTION("column-sum oracle on a random 4x4 operator") {
        oracles::Rng rng(101);
        const DenseOperator t = rng.matrix(4);
        const CVector v = rng.vector(4);
        CVector expected = CVector::Zero(4);
        for (Eigen::Index j = 0; j < 4; ++j)
            expected += v(j) * t.col(j);
        REQUIRE((apply_operator(t, v) - expected).norm() <= 1e-12);
    }

    SECTION("linearity on random probes") {
        oracles::Rng rng(102);
        const DenseOperator t = rng.matrix(5);
        for (int trial = 0; trial < 20; ++trial) {
            const CVector a = rng.vector(5), b = rng.vector(5);
            const Complex ca = rng.complex_gauss(), cb = rng.complex_gauss();
            const CVector lhs = apply_operator(t, CVector(ca * a + cb * b));
            const CVector rhs = ca * apply_operator(t, a) + cb * apply_operator(t, b);
            REQUIRE((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }
    }

    REQUIRE_THROWS_AS(apply_operator(id, e(2, 0)), DimensionError);
}

TEST_CASE("projective distance on canonical configurations", "[numerics]") {
    REQUIRE(projective_distance(e(2, 0), CVector(Complex(0, 5) * e(2, 0))) == Approx(0.0).margin(1e-15));
    REQUIRE(projective_distance(e(2, 0), e(2, 1)) == 1.0);

    CVector u(2);
    u << Complex(1, 0), Complex(1, 0);
    u /= u.norm();
    REQUIRE(projective_distance(u, e(2, 0)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));

    SECTION("zero v is distance 1 by convention, zero probe is an error") {
        REQUIRE(projective_distance(e(2, 0), CVector(CVector::Zero(2))) == 1.0);
        REQUIRE_THROWS_AS(projective_distance(CVector(CVector::Zero(2)), e(2, 0)), ZeroProbeError);
    }
}

TEST_CASE("projective distance properties on random pairs", "[numerics][property]") {
    oracles::Rng rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const Eigen::Index dim = 2 + trial % 7;
        const CVector u = rng.vector(dim), v = rng.vector(dim);
        const double d = projective_distance(u, v);

        // scaling invariance in both arguments
        const Complex a = rng.nonzero_scalar(1e-3, 1e3), b = rng.nonzero_scalar(1e-3, 1e3);
        REQUIRE(projective_distance(CVector(a * u), CVector(b * v)) == Approx(d).margin(1e-12));

        // Pythagoras: d^2 + cos^2 = 1
        const double cosine = std::abs(u.dot(v)) / (u.norm() * v.norm());
        REQUIRE(d * d + cosine * cosine == Approx(1.0).margin(1e-12));

        // symmetry of normalized arguments
        REQUIRE(projective_distance(v, u) == Approx(d).margin(1e-12));
    }
}

TEST_CASE("projective distance agrees with brute-force scalar search", "[numerics][oracle]") {
    oracles::Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Index dim = 2 + trial % 7;
        const CVector u = rng.vector(dim), v = rng.vector(dim);
        const double expected = oracles::brute_force_projective_distance(u, v);
        REQUIRE(projective_distance(u, v) == Approx(expected).margin(1e-6));
    }
    // parallel vectors: distance must vanish
    const CVector u = rng.vector(4);
    const CVector v = Complex(0.3, -2.0) * u;
    REQUIRE(projective_distance(u, v) == Approx(oracles::brute_force_projective_distance(u, v))
                                             .margin(1e-6));
    REQUIRE(projective_distance(u, v) <= 1e-7);
}

TEST_CASE("projective_alignment recovers the least-squares scalar", "[numerics]") {
    oracles::Rng rng(13);
    const CVector y = rng.vector(3);
    const CVector v = rng.vector(3);
    const Complex g = projective_alignment(y, v);
    // perturbing the scalar can only increase the residual
    const double base = (y - g * v).norm();
    for (int k = 0; k < 8; ++k) {
        const Complex dg = 1e-3 * rng.complex_gauss();
        REQUIRE((y - (g + dg) * v).norm() >= base - 1e-12);
    }
    // alignment residual matches |y| * projective distance
    REQUIRE(base == Approx(y.norm() * projective_distance(y, v)).margin(1e-10));
}

TEST_CASE("matrix exponential on closed forms", "[numerics]") {
    oracles::Rng rng(17);

    SECTION("t = 0 gives the identity exactly") {
        const DenseOperator a = rng.matrix(4);
        const DenseOperator m = matrix_exponential(a, Complex(0, 0));
        REQUIRE((m - DenseOperator::Identity(4, 4)).norm() == 0.0);
    }

    SECTION("diagonal case") {
        DenseOperator a = DenseOperator::Zero(2, 2);
        a(0, 0) = Complex(0.3, -0.2);
        a(1, 1) = Complex(-1.0, 0.5);
        const Complex t(0.7, 0.1);
        const DenseOperator m = matrix_exponential(a, t);
        REQUIRE(std::abs(m(0, 0) - std::exp(t * a(0, 0))) <= 1e-12);
        REQUIRE(std::abs(m(1, 1) - std::exp(t * a(1, 1))) <= 1e-12);
        REQUIRE(std::abs(m(0, 1)) <= 1e-14);
        REQUIRE(std::abs(m(1, 0)) <= 1e-14);
    }

    SECTION("nilpotent case truncates the series") {
        DenseOperator n = DenseOperator::Zero(2, 2);
        n(0, 1) = Complex(3.0, -1.0);
        const DenseOperator m = matrix_exponential(n);
        REQUIRE((m - (DenseOperator::Identity(2, 2) + n)).norm() <= 1e-13);
    }

    SECTION("semigroup law residual stays small for moderate norms") {
        const DenseOperator a = rng.matrix_with_norm(4, 5.0);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        for (int trial = 0; trial < 10; ++trial) {
            const double t = dist(rng.engine), s = dist(rng.engine);
            const DenseOperator lhs =
                matrix_exponential(a, Complex(t, 0)) * matrix_exponential(a, Complex(s, 0));
            const DenseOperator rhs = matrix_exponential(a, Complex(t + s, 0));
            REQUIRE((lhs - rhs).norm() <= 1e-8);
        }
    }

    SECTION("non-finite input is rejected") {
        DenseOperator bad = DenseOperator::Zero(2, 2);
        bad(0, 0) = std::numeric_limits<double>::infinity();
        REQUIRE_THROWS_AS(matrix_exponential(bad), NumericalError);
    }
}

TEST_CASE("tolerance config validation", "[numerics]") {
    ToleranceConfig cfg;
    REQUIRE_NOTHROW(cfg.validate());
    REQUIRE(cfg.zero_cutoff < cfg.tol_residual);
    REQUIRE(cfg.tol_residual < cfg.eps_density);

    cfg.eps_density = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = ToleranceConfig{};
    cfg.budget = 0;
    REQUIRE_THROWS_AS(cfg.validate(), InvalidParameterError);
}
