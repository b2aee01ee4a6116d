#pragma once

// Complex dense linear-algebra substrate: vectors, operators, the matrix
// exponential, and the projective (sine) distance every density question
// reduces to.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <cstddef>
#include <cstdint>

#include "sclab/errors.hpp"

namespace sclab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using DenseOperator = Eigen::MatrixXcd;

/// Every numeric threshold in one auditable record. No comparison in the
/// library uses an inline constant.
struct ToleranceConfig {
    double eps_density = 0.15;   ///< projective-distance threshold for density verdicts
    double tol_residual = 1e-10; ///< residual allowed for exact identities
    double zero_cutoff = 1e-14;  ///< norm below which a vector counts as zero
    std::size_t budget = 4096;   ///< max family members enumerated per sweep

    void validate() const {
        if (!(eps_density > 0.0) || !(tol_residual > 0.0) || !(zero_cutoff > 0.0))
            throw InvalidParameterError("ToleranceConfig: thresholds must be strictly positive");
        if (budget == 0)
            throw InvalidParameterError("ToleranceConfig: budget must be >= 1");
    }
};

inline bool is_zero_vector(const CVector& v, const ToleranceConfig& cfg = {}) {
    return v.norm() <= cfg.zero_cutoff;
}

inline CVector apply_operator(const DenseOperator& op, const CVector& x) {
    if (op.cols() != x.size() || op.rows() != op.cols())
        throw DimensionError("apply_operator: operator is " + std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + " but vector has dim " +
                             std::to_string(x.size()));
    return op * x;
}

/// Distance from the normalized probe u to the complex line spanned by v,
/// min over gamma of |u/|u| - gamma v|, evaluated at the closed-form
/// least-squares optimum gamma = <v, u/|u|> / |v|^2. Equal to
/// sqrt(1 - |<u,v>|^2 / (|u|^2 |v|^2)) but keeps full precision near zero,
/// where the cosine identity loses half the digits. A zero v covers nothing
/// projectively and yields distance 1 by convention; a zero probe is
/// rejected.
inline double projective_distance(const CVector& u, const CVector& v,
                                  const ToleranceConfig& cfg = {}) {
    if (u.size() != v.size())
        throw DimensionError("projective_distance: dimension mismatch");
    const double nu = u.norm();
    if (nu <= cfg.zero_cutoff)
        throw ZeroProbeError("projective_distance: probe norm below zero cutoff");
    const double nv = v.norm();
    if (nv <= cfg.zero_cutoff)
        return 1.0;
    const CVector un = u / nu;
    const Complex gamma = v.dot(un) / (nv * nv);
    const double d = (un - gamma * v).norm();
    return d < 1.0 ? d : 1.0;
}

/// Least-squares scalar aligning v with the target: argmin_g |target - g v|.
/// Returns 0 when v is numerically zero.
inline Complex projective_alignment(const CVector& target, const CVector& v,
                                    const ToleranceConfig& cfg = {}) {
    const double nv2 = v.squaredNorm();
    if (nv2 <= cfg.zero_cutoff * cfg.zero_cutoff)
        return Complex(0.0, 0.0);
    return v.dot(target) / nv2;
}

/// e^{tA} by scaling-and-squaring Pade (Eigen's MatrixFunctions). exp(0*A)
/// is the identity exactly.
inline DenseOperator matrix_exponential(const DenseOperator& a, Complex t = Complex(1.0, 0.0)) {
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exponential: matrix must be square");
    if (!a.allFinite())
        throw NumericalError("matrix_exponential: non-finite entries");
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
        throw NumericalError("matrix_exponential: non-finite scale");
    if (t == Complex(0.0, 0.0) || a.isZero(0.0))
        return DenseOperator::Identity(a.rows(), a.cols());
    DenseOperator scaled = t * a;
    DenseOperator result = scaled.exp();
    if (!result.allFinite())
        throw NumericalError("matrix_exponential: overflow in exponential");
    return result;
}

/// 2-norm condition number via SVD; infinity-like sentinel for singular maps.
inline double condition_number(const DenseOperator& phi) {
    Eigen::JacobiSVD<DenseOperator> svd(phi);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

inline double operator_norm(const DenseOperator& a) {
    Eigen::JacobiSVD<DenseOperator> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

} // namespace sclab
