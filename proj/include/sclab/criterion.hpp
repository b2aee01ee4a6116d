#pragma once

// The supercyclicity criterion for sets: three simultaneous decay conditions
// over finite probe sets X0, Y0, plus the built-in truncated-shift
// instantiation that reaches the limits exactly.

#include <array>
#include <span>
#include <vector>

#include "sclab/families.hpp"

namespace sclab {

/// Data for the criterion: indices k, scalars alpha_k, the member T_k picked
/// per index, the maps S_k on Y0, and the probe sets X0, Y0 standing in for
/// the dense subsets (declared, never defaulted).
struct CriterionData {
    std::vector<std::size_t> indices;         ///< strictly increasing, >= 1
    std::vector<Complex> alphas;              ///< nonzero, one per index
    std::vector<std::size_t> member_selector; ///< T_k as a family member index
    std::vector<DenseOperator> s_maps;        ///< S_k, one per index
    std::vector<CVector> x0;
    std::vector<CVector> y0;

    void validate(Eigen::Index dim) const {
        if (indices.empty())
            throw InvalidParameterError("CriterionData: empty index sequence");
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] == 0 || (i > 0 && indices[i] <= indices[i - 1]))
                throw InvalidParameterError(
                    "CriterionData: indices must be strictly increasing positive integers");
        }
        if (alphas.size() != indices.size() || member_selector.size() != indices.size() ||
            s_maps.size() != indices.size())
            throw InvalidParameterError("CriterionData: per-index sequences must align");
        for (const auto& a : alphas)
            if (a == Complex(0.0, 0.0))
                throw InvalidScalarError("CriterionData: zero alpha");
        if (x0.empty() || y0.empty())
            throw InvalidParameterError("CriterionData: X0 and Y0 must be nonempty");
        for (const auto& v : x0)
            if (v.size() != dim)
                throw DimensionError("CriterionData: X0 dimension mismatch");
        for (const auto& v : y0)
            if (v.size() != dim)
                throw DimensionError("CriterionData: Y0 dimension mismatch");
        for (const auto& s : s_maps)
            if (s.rows() != dim || s.cols() != dim)
                throw DimensionError("CriterionData: S_k dimension mismatch");
    }
};

/// Per-index norm profiles for the three conditions.
struct DecayProfile {
    std::vector<double> forward_decay;        ///< (i)   max_x |alpha_k T_k x|
    std::vector<double> backward_decay;       ///< (ii)  max_y |alpha_k^{-1} S_k y|
    std::vector<double> reconstruction_error; ///< (iii) max_y |T_k S_k y - y|
};

struct ConditionVerdict {
    double final_value = 0.0;
    bool tail_monotone = false;
    bool reached_zero = false; ///< final value at or below the zero cutoff
    bool pass = false;
};

struct CriterionReport {
    DecayProfile profile;
    std::array<ConditionVerdict, 3> conditions;
    bool pass = false;
    double tol = 0.0;
};

namespace detail {

/// "Converges to 0" at desk scale: the final value is under the tolerance,
/// and either the last three values are non-increasing or the sequence has
/// already reached an exact zero (the truncated examples do).
inline ConditionVerdict judge_decay(const std::vector<double>& values,
                                    const ToleranceConfig& cfg) {
    ConditionVerdict v;
    v.final_value = values.back();
    v.reached_zero = v.final_value <= cfg.zero_cutoff;
    v.tail_monotone = true;
    const std::size_t tail = std::min<std::size_t>(values.size(), 3);
    for (std::size_t i = values.size() - tail; i + 1 < values.size(); ++i)
        v.tail_monotone = v.tail_monotone && values[i] >= values[i + 1];
    v.pass = v.final_value <= cfg.tol_residual && (v.tail_monotone || v.reached_zero);
    return v;
}

} // namespace detail

/// Evaluate the three criterion conditions per index and decide the verdict.
inline CriterionReport verify_criterion(const OperatorFamily& g, const CriterionData& data,
                                        const ToleranceConfig& cfg = {}) {
    data.validate(g.dim());
    for (std::size_t sel : data.member_selector)
        if (sel >= g.size())
            throw IndexError("verify_criterion: member selector out of range");

    CriterionReport report;
    report.tol = cfg.tol_residual;
    const std::size_t n = data.indices.size();
    report.profile.forward_decay.reserve(n);
    report.profile.backward_decay.reserve(n);
    report.profile.reconstruction_error.reserve(n);

    for (std::size_t j = 0; j < n; ++j) {
        const DenseOperator tk = g.member(data.member_selector[j]);
        const Complex alpha = data.alphas[j];
        const DenseOperator& sk = data.s_maps[j];

        double forward = 0.0;
        for (const auto& x : data.x0)
            forward = std::max(forward, (alpha * (tk * x)).norm());
        double backward = 0.0;
        double reconstruction = 0.0;
        for (const auto& y : data.y0) {
            const CVector sy = sk * y;
            backward = std::max(backward, (sy / alpha).norm());
            reconstruction = std::max(reconstruction, (tk * sy - y).norm());
        }
        report.profile.forward_decay.push_back(forward);
        report.profile.backward_decay.push_back(backward);
        report.profile.reconstruction_error.push_back(reconstruction);
    }

    report.conditions[0] = detail::judge_decay(report.profile.forward_decay, cfg);
    report.conditions[1] = detail::judge_decay(report.profile.backward_decay, cfg);
    report.conditions[2] = detail::judge_decay(report.profile.reconstruction_error, cfg);
    report.pass = report.conditions[0].pass && report.conditions[1].pass &&
                  report.conditions[2].pass;
    return report;
}

struct CriterionInstance {
    OperatorFamily family;
    CriterionData data;
};

/// Truncated Rolewicz-style instantiation on C^d: T = lambda B with B the
/// truncated backward shift, S_k = (F/lambda)^k with F the forward shift,
/// alpha_k = 1, X0 = Y0 = {e_1, ..., e_ceil(d/2)}. Supports are restricted
/// to the first half of the coordinates so the shift identities are exact,
/// which forces k <= floor(d/2).
inline CriterionInstance rolewicz_truncated_family(Eigen::Index dim, Complex lambda) {
    if (dim < 4)
        throw InvalidParameterError("rolewicz_truncated_family: dim must be >= 4");
    if (!(std::abs(lambda) > 1.0))
        throw InvalidParameterError("rolewicz_truncated_family: |lambda| must exceed 1");

    DenseOperator backward = DenseOperator::Zero(dim, dim);
    DenseOperator forward = DenseOperator::Zero(dim, dim);
    for (Eigen::Index j = 0; j + 1 < dim; ++j) {
        backward(j, j + 1) = 1.0;
        forward(j + 1, j) = 1.0;
    }

    CriterionInstance instance{
        OperatorFamily::powers_of(lambda * backward, static_cast<std::size_t>(dim)), {}};

    const Eigen::Index support = (dim + 1) / 2; // ceil(d/2)
    const std::size_t k_max = static_cast<std::size_t>(dim / 2);
    const DenseOperator step = forward / lambda;
    DenseOperator s_acc = DenseOperator::Identity(dim, dim);
    for (std::size_t k = 1; k <= k_max; ++k) {
        s_acc = s_acc * step;
        instance.data.indices.push_back(k);
        instance.data.alphas.push_back(Complex(1.0, 0.0));
        instance.data.member_selector.push_back(k); // powers enumerate T^0, T^1, ...
        instance.data.s_maps.push_back(s_acc);
    }
    for (Eigen::Index i = 0; i < support; ++i) {
        instance.data.x0.push_back(CVector::Unit(dim, i));
        instance.data.y0.push_back(CVector::Unit(dim, i));
    }
    return instance;
}

} // namespace sclab
