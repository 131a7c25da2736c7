#pragma once

#include <optional>

#include "riesz/errors.hpp"
#include "riesz/matrix.hpp"
#include "riesz/superop.hpp"

namespace riesz {

/// The multiplication operator L_A R_B evaluated at T.
template <ScalarType S>
Matrix<S> mult_apply(const Matrix<S>& a, const Matrix<S>& b, const Matrix<S>& t) {
    if (a.dim() != t.dim() || b.dim() != t.dim())
        throw DimensionError("multiplication operator dimension mismatch");
    return a * t * b;
}

enum class SignCase { both_positive, both_negative, mixed };

inline const char* sign_case_name(SignCase s) {
    switch (s) {
        case SignCase::both_positive: return "both_positive";
        case SignCase::both_negative: return "both_negative";
        case SignCase::mixed: return "mixed";
    }
    return "?";
}

template <ScalarType S>
struct MultClassification {
    bool positive = false;
    SignCase sign_case = SignCase::mixed;
    bool positive_projection = false;
    bool band_projection = false;
    std::optional<S> lambda; // present iff positive_projection
};

/// Classifies L_A R_B for nonzero A, B. Positivity needs the symbols both
/// positive or both negative; a positive projection needs, additionally, a
/// scalar lambda with B^2 = lambda B and (lambda A)^2 = lambda A; a band
/// projection needs lambda A and B / lambda to be 0/1 diagonals. lambda is
/// extracted from B, whose entry ratios pin it down uniquely (negative in
/// the both-negative case).
template <ScalarType S>
MultClassification<S> classify(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.dim() != b.dim())
        throw DimensionError("classify: A and B must act on the same lattice");
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("classify requires nonzero A and B");

    MultClassification<S> out;
    const bool both_pos = a.is_nonneg() && b.is_nonneg();
    const bool both_neg = a.is_nonpos() && b.is_nonpos();
    out.sign_case = both_pos   ? SignCase::both_positive
                    : both_neg ? SignCase::both_negative
                               : SignCase::mixed;
    out.positive = both_pos || both_neg;
    if (!out.positive) return out;

    const std::size_t n = b.dim();
    const Matrix<S> b2 = b * b;
    std::optional<S> lambda;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (b(i, j).sign() == 0) continue;
            S ratio = b2(i, j) / b(i, j);
            if (!lambda)
                lambda = ratio;
            else if (!(ratio == *lambda))
                return out; // B^2 is no scalar multiple of B
        }
    if (!lambda || lambda->sign() == 0) return out;
    if (!(b2 == *lambda * b)) return out;           // zero entries of B must persist
    if (!(*lambda * (a * a) == a)) return out;      // (lambda A)^2 = lambda A

    out.positive_projection = true;
    out.lambda = lambda;

    const Matrix<S> scaled_a = *lambda * a;
    const Matrix<S> scaled_b = S(1) / *lambda * b;
    out.band_projection = as_band_projection(scaled_a).has_value() &&
                          as_band_projection(scaled_b).has_value();
    return out;
}

inline constexpr std::size_t kMultBruteForceMaxDim = 4;

/// Independent route for the band projection verdict: materialize L_A R_B
/// on the vectorized operator space and run the detector on it.
template <ScalarType S>
bool brute_force_mult_band_check(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.dim() != b.dim())
        throw DimensionError("brute force check: A and B must act on the same lattice");
    if (a.dim() > kMultBruteForceMaxDim)
        throw std::invalid_argument("brute force multiplication check capped at n <= 4");
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("brute force check requires nonzero A and B");
    return detect_band_projection(assemble_mult(a, b)).is_band_projection;
}

} // namespace riesz
