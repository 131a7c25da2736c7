#pragma once

#include <cstddef>

#include "riesz/inner.hpp"
#include "riesz/matrix.hpp"

namespace riesz {

/// Levels of the dyadic partition of [0,1]: level n splits the interval
/// into 2^n pieces of measure 2^-n, and the simple functions over that
/// partition form a lattice of dimension 2^n with one coordinate per piece.
/// Refining a level splits every piece in half, which keeps the function a
/// coordinate represents unchanged.
struct DyadicLevel {
    unsigned level;
    std::size_t dimension() const { return std::size_t{1} << level; }
};

inline constexpr unsigned kDyadicMaxLevel = 10;

inline DyadicLevel checked_level(unsigned level) {
    if (level < 1 || level > kDyadicMaxLevel)
        throw std::invalid_argument("dyadic level must be in 1.." +
                                    std::to_string(kDyadicMaxLevel));
    return DyadicLevel{level};
}

/// f maps to (integral of f) * chi_Omega: in the characteristic-function
/// basis every entry is the piece measure 2^-n. Averaging fixes constants,
/// so it is a positive projection, but its off-diagonal entries keep it
/// from being dominated by the identity.
template <ScalarType S>
Matrix<S> averaging_operator(unsigned level) {
    const DyadicLevel lv = checked_level(level);
    const S w = S::from_fraction(1, static_cast<long long>(lv.dimension()));
    Matrix<S> t(lv.dimension());
    for (std::size_t i = 0; i < lv.dimension(); ++i)
        for (std::size_t j = 0; j < lv.dimension(); ++j) t(i, j) = w;
    return t;
}

/// || T /\ I || in the L1 operator norm at the given level. The meet is
/// 2^-n I, so the value is exactly 2^-n: the sequence over levels is the
/// finite shadow of "T /\ I = 0" on a non-atomic space.
template <ScalarType S>
S meet_with_identity_decay(unsigned level) {
    const DyadicLevel lv = checked_level(level);
    const Matrix<S> t = averaging_operator<S>(level);
    return regular_norm(meet(t, Matrix<S>::identity(lv.dimension())), OperatorNorm::l1);
}

/// Doubling embedding: each coordinate splits into its two halves.
template <ScalarType S>
Vector<S> refine(const Vector<S>& v) {
    Vector<S> w(2 * v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        w[2 * k] = v[k];
        w[2 * k + 1] = v[k];
    }
    return w;
}

/// The averaging operator commutes with refinement on every basis vector.
template <ScalarType S>
bool refinement_consistency(unsigned level) {
    checked_level(level);
    checked_level(level + 1);
    const Matrix<S> coarse = averaging_operator<S>(level);
    const Matrix<S> fine = averaging_operator<S>(level + 1);
    const std::size_t n = std::size_t{1} << level;
    for (std::size_t k = 0; k < n; ++k) {
        const Vector<S> e = Vector<S>::basis(n, k);
        if (!(refine(coarse * e) == fine * refine(e))) return false;
    }
    return true;
}

/// The level-2 block family (four dyadic quarters, labelled "1".."4" as in
/// the usual 1-based interval numbering) and the relation
/// {(1,1),(2,1),(3,1),(1,2)} whose band is cut out by three support
/// conditions on columns.
inline InnerProjection dyadic_quarter_projection() {
    BlockFamily::BlockMap blocks;
    for (std::size_t k = 0; k < 4; ++k) blocks[std::to_string(k + 1)] = {k};
    IndexRelation rel{{"1", "1"}, {"2", "1"}, {"3", "1"}, {"1", "2"}};
    return InnerProjection(BlockFamily(4, std::move(blocks)), std::move(rel));
}

/// (Tf)(x) = f(x/2) restricted to [0, 1/2], written on level-2 simple
/// functions: the first quarter stretches onto the first half, and every
/// other quarter stretches outside [0, 1/2] and is truncated away.
template <ScalarType S>
Matrix<S> stretching_operator_level2() {
    Matrix<S> t(4);
    t(0, 0) = S(1);
    t(1, 0) = S(1);
    return t;
}

/// Sends the third quarter onto the first: violates the "columns three and
/// four vanish" condition.
template <ScalarType S>
Matrix<S> condition3_violator_level2() {
    return elementary<S>(0, 2, 4);
}

/// The three column-support conditions, stated directly: columns feeding
/// from the first quarter land in quarters 1..3, from the second quarter in
/// quarter 1 only, and from the second half nowhere.
inline bool dyadic_conditions_allow(std::size_t row, std::size_t col) {
    if (col == 0) return row <= 2;
    if (col == 1) return row == 0;
    return false;
}

struct DyadicMembershipReport {
    bool stretching_member = false;    // expected: true
    bool violator_member = false;      // expected: false
    unsigned elementary_agreements = 0; // out of 16
    bool consistent = false;           // all of the above as expected
};

/// Level-2 membership demonstration: the stretching operator belongs to the
/// band, the condition-3 violator does not, and on all sixteen block
/// elementary operators membership coincides with the support conditions.
template <ScalarType S>
DyadicMembershipReport dyadic_membership_demo() {
    const InnerProjection proj = dyadic_quarter_projection();
    DyadicMembershipReport rep;
    rep.stretching_member = band_member(proj, stretching_operator_level2<S>());
    rep.violator_member = band_member(proj, condition3_violator_level2<S>());
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            if (band_member(proj, elementary<S>(a, b, 4)) == dyadic_conditions_allow(a, b))
                ++rep.elementary_agreements;
    rep.consistent =
        rep.stretching_member && !rep.violator_member && rep.elementary_agreements == 16;
    return rep;
}

} // namespace riesz
