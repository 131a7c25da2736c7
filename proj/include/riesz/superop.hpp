#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "riesz/errors.hpp"
#include "riesz/inner.hpp"
#include "riesz/matrix.hpp"

namespace riesz {

/// Column-major vectorization: entry (i, j) of an n-by-n operator sits at
/// slot i + n*j, so the operator-space basis element at that slot is E_ij.
inline std::size_t vec_slot(std::size_t i, std::size_t j, std::size_t n) {
    return i + n * j;
}

template <ScalarType S>
Vector<S> vec(const Matrix<S>& t) {
    const std::size_t n = t.dim();
    Vector<S> v(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v[vec_slot(i, j, n)] = t(i, j);
    return v;
}

template <ScalarType S>
Matrix<S> unvec(const Vector<S>& v, std::size_t n) {
    if (v.dim() != n * n)
        throw DimensionError("unvec: vector length is not n^2");
    Matrix<S> t(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) t(i, j) = v[vec_slot(i, j, n)];
    return t;
}

/// An arbitrary linear map on the n^2-dimensional operator space, stored as
/// its matrix in the vectorized basis. This is the raw object the band
/// projection detector works on.
template <ScalarType S>
class SuperOperator {
public:
    explicit SuperOperator(std::size_t base_dim)
        : base_(base_dim), mat_(base_dim * base_dim) {}
    SuperOperator(std::size_t base_dim, Matrix<S> m) : base_(base_dim), mat_(std::move(m)) {
        if (mat_.dim() != base_ * base_)
            throw DimensionError("superoperator matrix must be n^2 by n^2");
    }

    static SuperOperator identity(std::size_t base_dim) {
        return SuperOperator(base_dim, Matrix<S>::identity(base_dim * base_dim));
    }

    std::size_t base_dim() const { return base_; }
    const Matrix<S>& matrix() const { return mat_; }
    Matrix<S>& matrix() { return mat_; }

    friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
        same_base(a, b);
        return SuperOperator(a.base_, a.mat_ + b.mat_);
    }
    friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
        same_base(a, b);
        return SuperOperator(a.base_, a.mat_ - b.mat_);
    }
    /// Composition (a after b).
    friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
        same_base(a, b);
        return SuperOperator(a.base_, a.mat_ * b.mat_);
    }
    friend SuperOperator operator*(const S& s, const SuperOperator& p) {
        return SuperOperator(p.base_, s * p.mat_);
    }
    friend bool operator==(const SuperOperator& a, const SuperOperator& b) {
        return a.base_ == b.base_ && a.mat_ == b.mat_;
    }

private:
    static void same_base(const SuperOperator& a, const SuperOperator& b) {
        if (a.base_ != b.base_)
            throw DimensionError("superoperator base dimension mismatch");
    }

    std::size_t base_;
    Matrix<S> mat_;
};

template <ScalarType S>
Matrix<S> super_apply(const SuperOperator<S>& p, const Matrix<S>& t) {
    if (t.dim() != p.base_dim())
        throw DimensionError("superoperator applied to operator of wrong dimension");
    return unvec(p.matrix() * vec(t), p.base_dim());
}

/// Matrix of an inner projection on operator space: column (i, j) is the
/// vectorization of P_Gamma(E_ij).
template <ScalarType S>
SuperOperator<S> assemble(const InnerProjection& proj) {
    const std::size_t n = proj.dim();
    SuperOperator<S> p(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (proj.keeps(i, j)) {
                const std::size_t s = vec_slot(i, j, n);
                p.matrix()(s, s) = S(1);
            }
    return p;
}

/// Matrix of the multiplication operator T -> A T B.
template <ScalarType S>
SuperOperator<S> assemble_mult(const Matrix<S>& a, const Matrix<S>& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n)
        throw DimensionError("multiplication operator needs square factors of equal size");
    SuperOperator<S> p(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const Matrix<S> image = a * elementary<S>(i, j, n) * b;
            const Vector<S> col = vec(image);
            for (std::size_t r = 0; r < n * n; ++r)
                p.matrix()(r, vec_slot(i, j, n)) = col[r];
        }
    return p;
}

/// Positivity tested on the generators of the positive cone: every E_ab
/// must map to an entrywise nonnegative operator.
template <ScalarType S>
bool is_positive_super(const SuperOperator<S>& p) {
    const std::size_t n = p.base_dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!super_apply(p, elementary<S>(a, b, n)).is_nonneg()) return false;
    return true;
}

enum class DetectStage { idempotence, positivity, domination, dichotomy, reconstruction };

inline const char* stage_name(DetectStage s) {
    switch (s) {
        case DetectStage::idempotence: return "idempotence";
        case DetectStage::positivity: return "positivity";
        case DetectStage::domination: return "domination";
        case DetectStage::dichotomy: return "dichotomy";
        case DetectStage::reconstruction: return "reconstruction";
    }
    return "?";
}

/// Canonical form of a detected band projection: the atom-pair relation.
using AtomRelation = std::set<std::pair<std::size_t, std::size_t>>;

struct DetectResult {
    bool is_band_projection = false;
    AtomRelation gamma;                        // meaningful iff accepted
    std::optional<DetectStage> rejection_stage;
};

/// The atom relation as an inner projection over singleton blocks.
inline InnerProjection to_inner_projection(const AtomRelation& gamma, std::size_t n) {
    IndexRelation rel;
    for (const auto& [a, b] : gamma) rel.insert(std::to_string(a), std::to_string(b));
    return InnerProjection(BlockFamily::singletons(n), std::move(rel));
}

/// Decides whether a linear map on operator space is a band projection and
/// recovers its canonical inner form. Stages, in order: idempotence,
/// positivity, domination by the identity on the cone generators, the 0-or-
/// E_ab dichotomy on elementary operators, and reconstruction from the
/// recovered relation. Over an atomic order continuous lattice the first
/// three force the last two, so with exact scalars a late failure signals a
/// broken invariant rather than a rejection; with tolerant scalars entries
/// near {0, 1} are snapped and anything else rejects.
template <ScalarType S>
DetectResult detect_band_projection(const SuperOperator<S>& p) {
    const std::size_t n = p.base_dim();
    const auto reject = [](DetectStage s) {
        DetectResult r;
        r.rejection_stage = s;
        return r;
    };

    if (!(p.matrix() * p.matrix() == p.matrix()))
        return reject(DetectStage::idempotence);
    if (!is_positive_super(p))
        return reject(DetectStage::positivity);

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!dominated_by(super_apply(p, elementary<S>(a, b, n)),
                              elementary<S>(a, b, n)))
                return reject(DetectStage::domination);

    AtomRelation gamma;
    const Matrix<S> zero(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Matrix<S> unit = elementary<S>(a, b, n);
            const Matrix<S> image = super_apply(p, unit);
            if (image == unit) {
                gamma.insert({a, b});
            } else if (!(image == zero)) {
                if constexpr (is_exact_scalar_v<S>)
                    throw std::logic_error(
                        "dichotomy failed after idempotence+positivity+domination");
                else
                    return reject(DetectStage::dichotomy);
            }
        }

    if (!(assemble<S>(to_inner_projection(gamma, n)) == p)) {
        if constexpr (is_exact_scalar_v<S>)
            throw std::logic_error("reconstruction failed after dichotomy");
        else
            return reject(DetectStage::reconstruction);
    }

    DetectResult r;
    r.is_band_projection = true;
    r.gamma = std::move(gamma);
    return r;
}

} // namespace riesz
