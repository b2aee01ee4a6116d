#pragma once

// Test-only oracles and generators. These stay independent of the library
// paths they check: the brute-force projective distance minimizes over an
// explicit scalar grid instead of using the closed-form optimum.

#include <random>

#include <sclab/numerics.hpp>

namespace oracles {

using sclab::Complex;
using sclab::CVector;
using sclab::DenseOperator;

/// min over complex gamma of |u/|u| - gamma v| by staged grid refinement.
/// The optimal gamma lies within |gamma| <= 1/|v|; each stage shrinks the
/// search box around the best grid point. Final resolution is well below
/// 1e-6 in the distance.
inline double brute_force_projective_distance(const CVector& u, const CVector& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nv == 0.0)
        return 1.0;
    const CVector un = u / nu;
    const Complex c = un.dot(v); // <un, v>, first argument conjugated
    const double b = v.squaredNorm();

    auto objective = [&](Complex g) {
        const double val = 1.0 - 2.0 * (g * c).real() + std::norm(g) * b;
        return val > 0.0 ? std::sqrt(val) : 0.0;
    };

    Complex center(0.0, 0.0);
    double half_width = 1.2 / nv;
    double best = objective(center);
    Complex best_g = center;
    constexpr int kPoints = 25;
    for (int stage = 0; stage < 13; ++stage) {
        const double spacing = 2.0 * half_width / (kPoints - 1);
        for (int i = 0; i < kPoints; ++i) {
            for (int j = 0; j < kPoints; ++j) {
                const Complex g = center + Complex(-half_width + i * spacing,
                                                   -half_width + j * spacing);
                const double val = objective(g);
                if (val < best) {
                    best = val;
                    best_g = g;
                }
            }
        }
        center = best_g;
        half_width = 4.0 * spacing;
    }
    return best;
}

struct Rng {
    std::mt19937_64 engine;
    std::normal_distribution<double> gauss{0.0, 1.0};

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    Complex complex_gauss() { return Complex(gauss(engine), gauss(engine)); }

    CVector vector(Eigen::Index dim) {
        CVector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            v(i) = complex_gauss();
        return v;
    }

    CVector unit_vector(Eigen::Index dim) {
        CVector v = vector(dim);
        return v / v.norm();
    }

    DenseOperator matrix(Eigen::Index dim) {
        DenseOperator m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                m(i, j) = complex_gauss();
        return m;
    }

    /// Random matrix rescaled to the requested 2-norm.
    DenseOperator matrix_with_norm(Eigen::Index dim, double norm) {
        DenseOperator m = matrix(dim);
        return m * (norm / sclab::operator_norm(m));
    }

    Complex nonzero_scalar(double lo = 0.1, double hi = 10.0) {
        std::uniform_real_distribution<double> mod(lo, hi);
        std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
        const double r = mod(engine);
        const double t = arg(engine);
        return Complex(r * std::cos(t), r * std::sin(t));
    }
};

} // namespace oracles
