#pragma once

// Construction and enumeration of operator families: finite lists, powers of
// one operator, scaled families, direct sums, similarity conjugates, and the
// grid families produced by the semigroup module. Enumeration is
// deterministic and budget-capped; all families are immutable values.

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sclab/numerics.hpp"

namespace sclab {

enum class FamilyKind {
    FiniteList,
    PowersOf,
    Scaled,
    DirectSum,
    Conjugated,
    SemigroupGrid,
    RegularizedGroupGrid,
};

inline const char* to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::FiniteList: return "finite_list";
    case FamilyKind::PowersOf: return "powers_of";
    case FamilyKind::Scaled: return "scaled";
    case FamilyKind::DirectSum: return "direct_sum";
    case FamilyKind::Conjugated: return "conjugated";
    case FamilyKind::SemigroupGrid: return "semigroup_grid";
    case FamilyKind::RegularizedGroupGrid: return "regularized_group_grid";
    }
    return "unknown";
}

/// A continuous map intertwining two families. `invertible` certifies that
/// `right_inverse` undoes `phi` to within the residual tolerance; only then
/// may the map be used to *construct* a conjugated family. Non-invertible
/// maps are still usable for verification (quasi-similarity).
struct IntertwiningMap {
    DenseOperator phi;
    bool invertible = false;
    std::optional<DenseOperator> right_inverse;

    /// Decide invertibility numerically and attach the inverse when sound.
    static IntertwiningMap analyze(DenseOperator map, const ToleranceConfig& cfg = {}) {
        IntertwiningMap result{std::move(map), false, std::nullopt};
        if (result.phi.rows() != result.phi.cols())
            return result;
        Eigen::FullPivLU<DenseOperator> lu(result.phi);
        if (!lu.isInvertible())
            return result;
        DenseOperator inv = lu.inverse();
        const double defect =
            (result.phi * inv - DenseOperator::Identity(result.phi.rows(), result.phi.cols()))
                .norm();
        if (defect <= cfg.tol_residual) {
            result.invertible = true;
            result.right_inverse = std::move(inv);
        }
        return result;
    }

    IntertwiningMap inverted() const {
        if (!invertible || !right_inverse)
            throw NotInvertibleError("IntertwiningMap: not invertible");
        return IntertwiningMap{*right_inverse, true, phi};
    }

    double condition() const { return condition_number(phi); }
};

class OperatorFamily {
    struct FiniteData {
        std::vector<DenseOperator> ops;
    };
    struct PowersData {
        DenseOperator base;
        std::size_t max_exponent;
    };
    struct ScaledData {
        std::shared_ptr<const OperatorFamily> base;
        std::vector<Complex> scalars;
    };
    struct DirectSumData {
        std::vector<std::shared_ptr<const OperatorFamily>> parts;
    };
    struct ConjugatedData {
        std::shared_ptr<const OperatorFamily> base;
        DenseOperator phi;
        DenseOperator phi_inv;
    };
    using Storage = std::variant<FiniteData, PowersData, ScaledData, DirectSumData, ConjugatedData>;

public:
    static OperatorFamily finite_list(std::vector<DenseOperator> ops) {
        return from_list(FamilyKind::FiniteList, std::move(ops));
    }

    static OperatorFamily powers_of(DenseOperator base, std::size_t max_exponent) {
        require_square(base, "powers_of");
        OperatorFamily f;
        f.kind_ = FamilyKind::PowersOf;
        f.dim_ = base.rows();
        f.storage_ = std::make_shared<Storage>(PowersData{std::move(base), max_exponent});
        return f;
    }

    static OperatorFamily direct_sum(std::vector<OperatorFamily> parts) {
        if (parts.size() < 2)
            throw InvalidParameterError("direct_sum: needs at least two families");
        OperatorFamily f;
        f.kind_ = FamilyKind::DirectSum;
        DirectSumData data;
        Eigen::Index total = 0;
        for (auto& p : parts) {
            total += p.dim();
            data.parts.push_back(std::make_shared<const OperatorFamily>(std::move(p)));
        }
        f.dim_ = total;
        f.storage_ = std::make_shared<Storage>(std::move(data));
        return f;
    }

    /// Used by the semigroup module: precomputed grid members with a kind tag.
    static OperatorFamily tagged_members(FamilyKind kind, std::vector<DenseOperator> members) {
        if (kind != FamilyKind::SemigroupGrid && kind != FamilyKind::RegularizedGroupGrid)
            throw InvalidParameterError("tagged_members: grid kinds only");
        return from_list(kind, std::move(members));
    }

    FamilyKind kind() const { return kind_; }
    Eigen::Index dim() const { return dim_; }
    bool has_removals() const { return !removed_.empty(); }

    /// Number of members after removals.
    std::size_t size() const {
        const std::size_t base = base_size();
        return base - std::min(base, removed_.size());
    }

    /// The k-th surviving member; deterministic order.
    DenseOperator member(std::size_t k) const {
        if (k >= size())
            throw IndexError("member: index " + std::to_string(k) + " out of range");
        return base_member(surviving_base_index(k));
    }

    /// First min(budget, size()) members in enumeration order.
    std::vector<DenseOperator> enumerate(std::size_t budget) const {
        if (budget == 0)
            throw InvalidParameterError("enumerate: budget must be >= 1");
        const std::size_t n = std::min(budget, size());
        std::vector<DenseOperator> out;
        out.reserve(n);
        if (const auto* powers = std::get_if<PowersData>(storage_.get());
            powers && removed_.empty()) {
            // incremental powers instead of k multiplications per member
            DenseOperator acc = DenseOperator::Identity(dim_, dim_);
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 0)
                    acc = acc * powers->base;
                out.push_back(acc);
            }
            return out;
        }
        if (const auto* sum = std::get_if<DirectSumData>(storage_.get());
            sum && removed_.empty()) {
            for (const auto& tuple : diagonal_tuples(*sum, n))
                out.push_back(assemble_block(*sum, tuple, dim_));
            return out;
        }
        for (std::size_t k = 0; k < n; ++k)
            out.push_back(member(k));
        return out;
    }

    /// Same enumeration minus the member at `index` (relative to the current
    /// enumeration). Kind is preserved.
    OperatorFamily without_member(std::size_t index) const {
        if (index >= size())
            throw IndexError("remove_member: index " + std::to_string(index) + " out of range");
        OperatorFamily copy = *this;
        const std::size_t base_index = surviving_base_index(index);
        copy.removed_.insert(
            std::upper_bound(copy.removed_.begin(), copy.removed_.end(), base_index), base_index);
        return copy;
    }

    friend OperatorFamily scale_members(const OperatorFamily& g, std::vector<Complex> alphas);
    friend OperatorFamily conjugate_similar(const OperatorFamily& g, const IntertwiningMap& phi);

private:
    OperatorFamily() = default;

    static void require_square(const DenseOperator& op, const char* where) {
        if (op.rows() != op.cols())
            throw DimensionError(std::string(where) + ": operator must be square");
        if (op.rows() < 2)
            throw DimensionError(std::string(where) + ": ambient dimension must be >= 2");
    }

    static OperatorFamily from_list(FamilyKind kind, std::vector<DenseOperator> ops) {
        if (ops.empty())
            throw InvalidParameterError("operator family: empty member list");
        require_square(ops.front(), to_string(kind));
        const Eigen::Index d = ops.front().rows();
        for (const auto& op : ops)
            if (op.rows() != d || op.cols() != d)
                throw DimensionError(std::string(to_string(kind)) +
                                     ": members must share the ambient dimension");
        OperatorFamily f;
        f.kind_ = kind;
        f.dim_ = d;
        f.storage_ = std::make_shared<Storage>(FiniteData{std::move(ops)});
        return f;
    }

    std::size_t base_size() const {
        struct Visitor {
            std::size_t operator()(const FiniteData& d) const { return d.ops.size(); }
            std::size_t operator()(const PowersData& d) const { return d.max_exponent + 1; }
            std::size_t operator()(const ScaledData& d) const { return d.base->size(); }
            std::size_t operator()(const DirectSumData& d) const {
                std::size_t total = 1;
                for (const auto& p : d.parts) {
                    const std::size_t s = p->size();
                    if (s != 0 && total > std::numeric_limits<std::size_t>::max() / s)
                        return std::numeric_limits<std::size_t>::max();
                    total *= s;
                }
                return total;
            }
            std::size_t operator()(const ConjugatedData& d) const { return d.base->size(); }
        };
        return std::visit(Visitor{}, *storage_);
    }

    std::size_t surviving_base_index(std::size_t k) const {
        // removed_ is sorted; shift k past every removed slot at or below it
        std::size_t index = k;
        for (std::size_t r : removed_) {
            if (r <= index)
                ++index;
            else
                break;
        }
        return index;
    }

    DenseOperator base_member(std::size_t k) const {
        struct Visitor {
            std::size_t k;
            Eigen::Index dim;
            DenseOperator operator()(const FiniteData& d) const { return d.ops[k]; }
            DenseOperator operator()(const PowersData& d) const {
                DenseOperator acc = DenseOperator::Identity(dim, dim);
                for (std::size_t i = 0; i < k; ++i)
                    acc = acc * d.base;
                return acc;
            }
            DenseOperator operator()(const ScaledData& d) const {
                return d.scalars[k] * d.base->member(k);
            }
            DenseOperator operator()(const DirectSumData& d) const {
                return assemble_block(d, diagonal_tuples(d, k + 1).back(), dim);
            }
            DenseOperator operator()(const ConjugatedData& d) const {
                return d.phi * d.base->member(k) * d.phi_inv;
            }
        };
        return std::visit(Visitor{k, dim_}, *storage_);
    }

    /// Cantor-style enumeration of the product index set: the first `count`
    /// tuples ordered by total sum, then lexicographically. Fair under
    /// budget truncation.
    static std::vector<std::vector<std::size_t>> diagonal_tuples(const DirectSumData& data,
                                                                 std::size_t count) {
        const std::size_t n = data.parts.size();
        std::vector<std::size_t> sizes(n);
        std::size_t max_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sizes[i] = data.parts[i]->size();
            max_sum += sizes[i] - 1;
        }
        std::vector<std::vector<std::size_t>> out;
        out.reserve(count);
        std::vector<std::size_t> tuple(n, 0);
        for (std::size_t total = 0; total <= max_sum && out.size() < count; ++total)
            collect_sum(sizes, tuple, 0, total, count, out);
        if (out.size() < count)
            throw IndexError("direct_sum: member index out of range");
        return out;
    }

    static void collect_sum(const std::vector<std::size_t>& sizes, std::vector<std::size_t>& tuple,
                            std::size_t pos, std::size_t remaining, std::size_t count,
                            std::vector<std::vector<std::size_t>>& out) {
        if (out.size() >= count)
            return;
        if (pos == sizes.size() - 1) {
            if (remaining < sizes[pos]) {
                tuple[pos] = remaining;
                out.push_back(tuple);
            }
            return;
        }
        const std::size_t cap = std::min(remaining, sizes[pos] - 1);
        for (std::size_t v = 0; v <= cap && out.size() < count; ++v) {
            tuple[pos] = v;
            collect_sum(sizes, tuple, pos + 1, remaining - v, count, out);
        }
    }

    static DenseOperator assemble_block(const DirectSumData& data,
                                        const std::vector<std::size_t>& tuple, Eigen::Index dim) {
        DenseOperator block = DenseOperator::Zero(dim, dim);
        Eigen::Index offset = 0;
        for (std::size_t i = 0; i < data.parts.size(); ++i) {
            const DenseOperator m = data.parts[i]->member(tuple[i]);
            block.block(offset, offset, m.rows(), m.cols()) = m;
            offset += m.rows();
        }
        return block;
    }

    FamilyKind kind_ = FamilyKind::FiniteList;
    Eigen::Index dim_ = 0;
    std::shared_ptr<const Storage> storage_;
    std::vector<std::size_t> removed_; // sorted base indices
};

inline std::vector<DenseOperator> enumerate_members(const OperatorFamily& g, std::size_t budget) {
    return g.enumerate(budget);
}

inline OperatorFamily remove_member(const OperatorFamily& g, std::size_t index) {
    return g.without_member(index);
}

/// Member k of the result is alphas[k] * member k of g. The scalar list must
/// cover the whole family and contain no zeros.
inline OperatorFamily scale_members(const OperatorFamily& g, std::vector<Complex> alphas) {
    if (alphas.size() != g.size())
        throw InvalidParameterError("scale_members: scalar count " + std::to_string(alphas.size()) +
                                    " does not match family size " + std::to_string(g.size()));
    for (const auto& a : alphas)
        if (a == Complex(0.0, 0.0))
            throw InvalidScalarError("scale_members: zero scalar");
    OperatorFamily f;
    f.kind_ = FamilyKind::Scaled;
    f.dim_ = g.dim();
    f.storage_ = std::make_shared<OperatorFamily::Storage>(
        OperatorFamily::ScaledData{std::make_shared<const OperatorFamily>(g), std::move(alphas)});
    return f;
}

/// Member-wise phi T phi^{-1}. Constructing a conjugate requires an
/// invertible map; quasi-similar pairs are only ever verified.
inline OperatorFamily conjugate_similar(const OperatorFamily& g, const IntertwiningMap& phi) {
    if (!phi.invertible || !phi.right_inverse)
        throw NotInvertibleError("conjugate_similar: map is not invertible");
    if (phi.phi.cols() != g.dim())
        throw DimensionError("conjugate_similar: map dimension mismatch");
    OperatorFamily f;
    f.kind_ = FamilyKind::Conjugated;
    f.dim_ = g.dim();
    f.storage_ = std::make_shared<OperatorFamily::Storage>(OperatorFamily::ConjugatedData{
        std::make_shared<const OperatorFamily>(g), phi.phi, *phi.right_inverse});
    return f;
}

struct IntertwiningReport {
    double max_residual = 0.0;  ///< max over pairs of |S phi - phi T|
    bool residual_pass = false;
    double sigma_min = 0.0;     ///< smallest singular value of phi
    Eigen::Index rank = 0;
    bool dense_range_proxy = false; ///< rank equals codomain dimension
    bool pass = false;
};

/// Check S_{pairing[i]} phi = phi T_i over enumerated members, plus the
/// finite-dimensional dense-range surrogate (full row rank of phi).
inline IntertwiningReport verify_intertwining(const OperatorFamily& g, const OperatorFamily& h,
                                              const IntertwiningMap& phi,
                                              std::span<const std::size_t> pairing,
                                              const ToleranceConfig& cfg = {}) {
    if (phi.phi.cols() != g.dim() || phi.phi.rows() != h.dim())
        throw DimensionError("verify_intertwining: map shape does not match the families");
    const auto lhs = g.enumerate(cfg.budget);
    if (pairing.size() < lhs.size())
        throw PairingError("verify_intertwining: pairing misses " +
                           std::to_string(lhs.size() - pairing.size()) + " members");
    IntertwiningReport report;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (pairing[i] >= h.size())
            throw PairingError("verify_intertwining: pairing entry " + std::to_string(i) +
                               " exceeds the codomain family");
        const DenseOperator rhs = h.member(pairing[i]);
        report.max_residual =
            std::max(report.max_residual, (rhs * phi.phi - phi.phi * lhs[i]).norm());
    }
    Eigen::JacobiSVD<DenseOperator> svd(phi.phi);
    const auto& sv = svd.singularValues();
    report.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
    const double rank_cut = (sv.size() ? sv(0) : 0.0) * cfg.tol_residual;
    report.rank = (sv.array() > rank_cut).count();
    report.dense_range_proxy = report.rank == phi.phi.rows();
    report.residual_pass = report.max_residual <= cfg.tol_residual;
    report.pass = report.residual_pass && report.dense_range_proxy;
    return report;
}

/// {diag(1, w)} for w on a square grid of the given step, |Re w|,|Im w| <=
/// extent. The workhorse supercyclic example on C^2.
inline OperatorFamily diag_grid_family(double extent = 10.0, double step = 0.5) {
    if (!(extent > 0.0) || !(step > 0.0))
        throw InvalidParameterError("diag_grid_family: extent and step must be positive");
    std::vector<DenseOperator> ops;
    const long n = std::lround(extent / step);
    ops.reserve(static_cast<std::size_t>((2 * n + 1) * (2 * n + 1)));
    for (long re = -n; re <= n; ++re) {
        for (long im = -n; im <= n; ++im) {
            DenseOperator t = DenseOperator::Identity(2, 2);
            t(1, 1) = Complex(static_cast<double>(re) * step, static_cast<double>(im) * step);
            ops.push_back(std::move(t));
        }
    }
    return OperatorFamily::finite_list(std::move(ops));
}

inline OperatorFamily identity_family(Eigen::Index dim) {
    return OperatorFamily::finite_list({DenseOperator::Identity(dim, dim)});
}

} // namespace sclab
