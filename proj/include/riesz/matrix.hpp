#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/scalar.hpp"
#include "riesz/vector.hpp"

namespace riesz {

/// Regular operator on R^n in the atomic basis: a dense n-by-n matrix.
/// Entry (i, j) is the coefficient of e_i in T e_j. The operator order is
/// entrywise: T >= 0 iff every entry is >= 0, and |T|, T+, T- are entrywise.
template <ScalarType S>
class Matrix {
public:
    explicit Matrix(std::size_t dim) : n_(check_dim(dim)), e_(dim * dim, S(0)) {}

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = S(1);
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<S>> rows) {
        Matrix m(rows.size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.n_)
                throw DimensionError("matrix rows must all have length n");
            std::size_t j = 0;
            for (const S& x : row) m(i, j++) = x;
            ++i;
        }
        return m;
    }

    std::size_t dim() const { return n_; }
    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    S& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }

    Matrix operator-() const { return map([](const S& x) { return -x; }); }
    Matrix& operator+=(const Matrix& o) {
        same_dim(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_dim(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const S& s, const Matrix& m) {
        return m.map([&s](const S& x) { return s * x; });
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.same_dim(b);
        Matrix r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                const S& aik = a(i, k);
                if (aik.sign() == 0) continue;
                for (std::size_t j = 0; j < a.n_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend Vector<S> operator*(const Matrix& m, const Vector<S>& x) {
        if (x.dim() != m.n_)
            throw DimensionError("matrix-vector dimension mismatch");
        Vector<S> y(m.n_);
        for (std::size_t i = 0; i < m.n_; ++i)
            for (std::size_t j = 0; j < m.n_; ++j) y[i] += m(i, j) * x[j];
        return y;
    }

    Matrix transpose() const {
        Matrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) return false;
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            if (!(a.e_[k] == b.e_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const S& x : e_)
            if (x.sign() != 0) return false;
        return true;
    }
    bool is_nonneg() const {
        for (const S& x : e_)
            if (x.sign() < 0) return false;
        return true;
    }
    bool is_nonpos() const {
        for (const S& x : e_)
            if (x.sign() > 0) return false;
        return true;
    }

    /// a <= b entrywise (the operator order in the atomic basis).
    friend bool dominated_by(const Matrix& a, const Matrix& b) {
        a.same_dim(b);
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            if (!(a.e_[k] <= b.e_[k])) return false;
        return true;
    }

    /// Entrywise lattice operations: the Riesz-Kantorovich meet/join of
    /// regular operators collapse to these in the atomic basis.
    friend Matrix meet(const Matrix& a, const Matrix& b) {
        a.same_dim(b);
        Matrix r(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            r.e_[k] = b.e_[k] < a.e_[k] ? b.e_[k] : a.e_[k];
        return r;
    }
    friend Matrix join(const Matrix& a, const Matrix& b) {
        a.same_dim(b);
        Matrix r(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            r.e_[k] = a.e_[k] < b.e_[k] ? b.e_[k] : a.e_[k];
        return r;
    }
    friend Matrix abs(const Matrix& a) {
        return a.map([](const S& x) { return abs(x); });
    }

    Matrix positive_part() const { return meet_zero(false); }
    Matrix negative_part() const { return meet_zero(true); }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < n_; ++i) {
            out += i ? "\n[" : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) out += ", ";
                out += (*this)(i, j).str();
            }
            out += "]";
        }
        return out;
    }

private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim == 0) throw DimensionError("operator dimension must be >= 1");
        return dim;
    }
    void same_dim(const Matrix& o) const {
        if (n_ != o.n_)
            throw DimensionError("operator dimension mismatch: " + std::to_string(n_) +
                                 " vs " + std::to_string(o.n_));
    }
    template <typename F>
    Matrix map(F f) const {
        Matrix r(n_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f(e_[k]);
        return r;
    }
    Matrix meet_zero(bool negate) const {
        Matrix r(n_);
        const S zero(0);
        for (std::size_t k = 0; k < e_.size(); ++k) {
            S x = negate ? -e_[k] : e_[k];
            r.e_[k] = zero < x ? x : zero;
        }
        return r;
    }

    std::size_t n_;
    std::vector<S> e_;
};

/// The matrix unit E_ab: the rank-one atom of the operator lattice sending
/// the b-th atom to the a-th.
template <ScalarType S>
Matrix<S> elementary(std::size_t a, std::size_t b, std::size_t dim) {
    if (a >= dim || b >= dim)
        throw DimensionError("elementary operator index out of range");
    Matrix<S> m(dim);
    m(a, b) = S(1);
    return m;
}

enum class OperatorNorm { l1, linf };

/// Operator norm of |T|: max column sum for l1, max row sum for linf.
template <ScalarType S>
S regular_norm(const Matrix<S>& t, OperatorNorm which) {
    const std::size_t n = t.dim();
    S best(0);
    for (std::size_t k = 0; k < n; ++k) {
        S sum(0);
        for (std::size_t r = 0; r < n; ++r) {
            const S& x = which == OperatorNorm::l1 ? t(r, k) : t(k, r);
            const int sign = x.sign();
            if (sign > 0)
                sum += x;
            else if (sign < 0)
                sum -= x;
        }
        if (best < sum) best = sum;
    }
    return best;
}

/// Diagonal 0/1 test; returns the support when the operator is a band
/// projection on X, i.e. when M^2 = M and 0 <= M <= I in the atomic basis.
template <ScalarType S>
std::optional<BandProjection> as_band_projection(const Matrix<S>& m) {
    const S zero(0), one(1);
    std::set<std::size_t> support;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const S& x = m(i, j);
            if (i != j) {
                if (!(x == zero)) return std::nullopt;
            } else if (x == one) {
                support.insert(i);
            } else if (!(x == zero)) {
                return std::nullopt;
            }
        }
    return BandProjection(m.dim(), std::move(support));
}

template <ScalarType S>
Matrix<S> to_matrix(const BandProjection& p) {
    Matrix<S> m(p.dim());
    for (std::size_t i : p.support()) m(i, i) = S(1);
    return m;
}

/// Every 0 <= T <= E_ab is a scalar multiple of E_ab (elementary operators
/// are atoms); extracts that multiple. Violated preconditions are errors,
/// never a "false" answer.
template <ScalarType S>
S atom_domination_factor(const Matrix<S>& t, std::size_t a, std::size_t b) {
    const Matrix<S> unit = elementary<S>(a, b, t.dim());
    if (!t.is_nonneg() || !dominated_by(t, unit))
        throw std::invalid_argument("operator is not squeezed between 0 and E_ab");
    return t(a, b);
}

inline constexpr std::size_t kRkOracleMaxDim = 12;

/// Riesz-Kantorovich infimum evaluated literally: the coordinatewise
/// infimum of S(u) + T(x - u) over decompositions 0 <= u <= x. Each
/// coordinate is affine in every u_j, so scanning the 2^n vertex
/// decompositions u_j in {0, x_j} is exact. Oracle-scale only.
template <ScalarType S>
Vector<S> rk_oracle_meet(const Matrix<S>& lhs, const Matrix<S>& rhs, const Vector<S>& x) {
    const std::size_t n = lhs.dim();
    if (rhs.dim() != n || x.dim() != n)
        throw DimensionError("rk_oracle_meet dimension mismatch");
    if (!lhs.is_nonneg() || !rhs.is_nonneg() || !x.is_nonneg())
        throw std::invalid_argument("rk_oracle_meet requires nonnegative inputs");
    if (n > kRkOracleMaxDim)
        throw std::invalid_argument("rk_oracle_meet capped at n <= 12");

    Vector<S> best = rhs * x; // u = 0
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Vector<S> u(n);
        Vector<S> rest(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::uint64_t{1} << j))
                u[j] = x[j];
            else
                rest[j] = x[j];
        }
        best = meet(best, lhs * u + rhs * rest);
    }
    return best;
}

} // namespace riesz
