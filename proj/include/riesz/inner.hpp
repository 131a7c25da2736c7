#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "riesz/blocks.hpp"
#include "riesz/errors.hpp"
#include "riesz/matrix.hpp"

namespace riesz {

/// Inner band projection P_Gamma on the operator space: keeps entry (i, j)
/// exactly when (owner(i), owner(j)) is a pair of the relation. In the
/// order continuous (here: finite) case the defining supremum collapses to
/// the finite sum of P_alpha T P_beta over the relation, i.e. to this mask.
class InnerProjection {
public:
    InnerProjection(BlockFamily family, IndexRelation relation)
        : family_(std::move(family)), relation_(std::move(relation)) {
        for (const auto& [a, b] : relation_)
            if (!family_.has_label(a) || !family_.has_label(b))
                throw DimensionError("relation pair (" + a + ", " + b +
                                     ") uses a label outside the block family");
    }

    const BlockFamily& family() const { return family_; }
    const IndexRelation& relation() const { return relation_; }
    std::size_t dim() const { return family_.dim(); }

    bool keeps(std::size_t i, std::size_t j) const {
        const Label* a = family_.owner(i);
        const Label* b = family_.owner(j);
        return a && b && relation_.contains(*a, *b);
    }

    friend bool operator==(const InnerProjection& x, const InnerProjection& y) {
        return x.family_ == y.family_ && x.relation_ == y.relation_;
    }

private:
    BlockFamily family_;
    IndexRelation relation_;
};

template <ScalarType S>
Matrix<S> apply(const InnerProjection& p, const Matrix<S>& t) {
    if (t.dim() != p.dim())
        throw DimensionError("inner projection applied to operator of wrong dimension");
    Matrix<S> r(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j)
            if (p.keeps(i, j)) r(i, j) = t(i, j);
    return r;
}

inline constexpr std::size_t kSupOracleMaxRelation = 20;

/// The defining supremum taken literally: enumerate every finite subset Phi
/// of the relation, form the partial sum of P_alpha T P_beta x, and return
/// the coordinatewise supremum. Checks the partial sums grow monotonically
/// along subset inclusion while it goes (for relations small enough to
/// memoize). Must coincide with apply(p, t) * x; oracle-scale only.
template <ScalarType S>
Vector<S> sup_over_finite_oracle(const InnerProjection& p, const Matrix<S>& t,
                                 const Vector<S>& x) {
    const std::size_t n = p.dim();
    if (t.dim() != n || x.dim() != n)
        throw DimensionError("sup oracle dimension mismatch");
    if (!t.is_nonneg() || !x.is_nonneg())
        throw std::invalid_argument("sup oracle requires T >= 0 and x >= 0");
    const std::size_t m = p.relation().size();
    if (m > kSupOracleMaxRelation)
        throw std::invalid_argument("sup oracle capped at |Gamma| <= 20");

    // One term P_alpha T P_beta x per relation pair.
    std::vector<Vector<S>> term;
    term.reserve(m);
    for (const auto& [a, b] : p.relation()) {
        Vector<S> w(n);
        for (std::size_t i : p.family().block(a))
            for (std::size_t j : p.family().block(b)) w[i] += t(i, j) * x[j];
        term.push_back(std::move(w));
    }

    Vector<S> sup(n);
    if (m <= 12) {
        std::vector<Vector<S>> sum(std::size_t{1} << m, Vector<S>(n));
        for (std::uint64_t phi = 1; phi < sum.size(); ++phi) {
            const std::uint64_t low = phi & (~phi + 1);
            const std::size_t k = static_cast<std::size_t>(__builtin_ctzll(phi));
            sum[phi] = sum[phi ^ low] + term[k];
            // partial sums grow along subset inclusion
            for (std::size_t e = 0; e < m; ++e)
                if (phi & (std::uint64_t{1} << e))
                    if (!dominated_by(sum[phi ^ (std::uint64_t{1} << e)], sum[phi]))
                        throw std::logic_error("partial sums not monotone in Phi");
            sup = join(sup, sum[phi]);
        }
    } else {
        for (std::uint64_t phi = 1; phi < (std::uint64_t{1} << m); ++phi) {
            Vector<S> s(n);
            for (std::size_t k = 0; k < m; ++k)
                if (phi & (std::uint64_t{1} << k)) s += term[k];
            sup = join(sup, s);
        }
    }
    return sup;
}

namespace detail {
inline void require_same_family(const InnerProjection& x, const InnerProjection& y) {
    if (!(x.family() == y.family()))
        throw DimensionError("inner projections live over different block families");
}
} // namespace detail

/// Relation-level Boolean algebra; isomorphic to the operator-level one.
inline InnerProjection boolean_meet(const InnerProjection& x, const InnerProjection& y) {
    detail::require_same_family(x, y);
    return InnerProjection(x.family(), intersection(x.relation(), y.relation()));
}
inline InnerProjection boolean_join(const InnerProjection& x, const InnerProjection& y) {
    detail::require_same_family(x, y);
    return InnerProjection(x.family(), set_union(x.relation(), y.relation()));
}
/// Complement relative to the top relation Lambda x Lambda (the top inner
/// projection, which equals the identity only for covering families).
inline InnerProjection boolean_complement(const InnerProjection& x) {
    return InnerProjection(x.family(),
                           set_difference(all_pairs(x.family()), x.relation()));
}

/// T lies in the band B_Gamma iff the projection fixes it; equivalently each
/// column taken from block beta is supported in the blocks of Gamma^beta and
/// columns outside the family vanish. Both characterizations are evaluated
/// and must agree here (the lattice is order continuous).
template <ScalarType S>
bool band_member(const InnerProjection& p, const Matrix<S>& t) {
    const std::size_t n = p.dim();
    if (t.dim() != n)
        throw DimensionError("band membership dimension mismatch");

    const bool fixed_point = apply(p, t) == t;

    bool column_support = true;
    const S zero(0);
    for (std::size_t j = 0; j < n && column_support; ++j) {
        const Label* beta = p.family().owner(j);
        for (std::size_t i = 0; i < n && column_support; ++i) {
            if (t(i, j) == zero) continue;
            const Label* alpha = p.family().owner(i);
            if (!beta || !alpha || !p.relation().contains(*alpha, *beta))
                column_support = false;
        }
    }

    if (fixed_point != column_support)
        throw std::logic_error("band membership characterizations disagree");
    return fixed_point;
}

/// B_Gamma is left orthogonal to B_Delta (TS = 0 for all members) iff no
/// block receives from Gamma and feeds Delta.
inline bool left_orthogonal(const InnerProjection& gamma, const InnerProjection& delta) {
    detail::require_same_family(gamma, delta);
    for (const Label& l : gamma.relation().project_second())
        if (delta.relation().project_first().count(l)) return false;
    return true;
}

/// For a failed orthogonality: rank-one members T of B_Gamma and S of
/// B_Delta with TS != 0, composed through a shared block (coordinate
/// functionals standing in for the Hahn-Banach functionals of the proof).
template <ScalarType S>
std::optional<std::pair<Matrix<S>, Matrix<S>>>
orthogonality_witness(const InnerProjection& gamma, const InnerProjection& delta) {
    detail::require_same_family(gamma, delta);
    const auto mid = [&]() -> std::optional<Label> {
        const auto firsts = delta.relation().project_first();
        for (const Label& l : gamma.relation().project_second())
            if (firsts.count(l)) return l;
        return std::nullopt;
    }();
    if (!mid) return std::nullopt;

    const Label alpha = *gamma.relation().slice_col(*mid).begin();
    const Label beta = *delta.relation().slice_row(*mid).begin();
    const std::size_t a = *gamma.family().block(alpha).begin();
    const std::size_t c = *gamma.family().block(*mid).begin();
    const std::size_t b = *gamma.family().block(beta).begin();

    const std::size_t n = gamma.dim();
    return std::make_pair(elementary<S>(a, c, n), elementary<S>(c, b, n));
}

} // namespace riesz
