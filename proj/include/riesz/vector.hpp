#pragma once

#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/scalar.hpp"

namespace riesz {

/// Element of the finite atomic lattice R^n, ordered coordinatewise.
/// The atoms are the standard coordinates.
template <ScalarType S>
class Vector {
public:
    explicit Vector(std::size_t dim) : c_(check_dim(dim), S(0)) {}
    Vector(std::initializer_list<S> coords) : c_(coords) { check_dim(c_.size()); }
    explicit Vector(std::vector<S> coords) : c_(std::move(coords)) { check_dim(c_.size()); }

    static Vector basis(std::size_t dim, std::size_t i) {
        Vector v(dim);
        v[i] = S(1);
        return v;
    }

    std::size_t dim() const { return c_.size(); }
    const S& operator[](std::size_t i) const { return c_[i]; }
    S& operator[](std::size_t i) { return c_[i]; }
    const std::vector<S>& coords() const { return c_; }

    Vector operator-() const {
        Vector r(dim());
        for (std::size_t i = 0; i < dim(); ++i) r[i] = -c_[i];
        return r;
    }
    Vector& operator+=(const Vector& o) {
        same_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) c_[i] += o[i];
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        same_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) c_[i] -= o[i];
        return *this;
    }
    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(const S& s, const Vector& v) {
        Vector r(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
        return r;
    }

    friend bool operator==(const Vector& a, const Vector& b) {
        if (a.dim() != b.dim()) return false;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }
    friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

    bool is_nonneg() const {
        for (const S& x : c_)
            if (x.sign() < 0) return false;
        return true;
    }

    /// a <= b coordinatewise.
    friend bool dominated_by(const Vector& a, const Vector& b) {
        a.same_dim(b);
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!(a[i] <= b[i])) return false;
        return true;
    }

    friend Vector meet(const Vector& a, const Vector& b) {
        a.same_dim(b);
        Vector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = b[i] < a[i] ? b[i] : a[i];
        return r;
    }
    friend Vector join(const Vector& a, const Vector& b) {
        a.same_dim(b);
        Vector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] < b[i] ? b[i] : a[i];
        return r;
    }
    friend Vector abs(const Vector& a) {
        Vector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = abs(a[i]);
        return r;
    }

    S norm_l1() const {
        S s(0);
        for (const S& x : c_) s += abs(x);
        return s;
    }
    S norm_linf() const {
        S m(0);
        for (const S& x : c_) {
            S a = abs(x);
            if (m < a) m = a;
        }
        return m;
    }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) out += ", ";
            out += c_[i].str();
        }
        return out + ")";
    }

private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim == 0) throw DimensionError("lattice dimension must be >= 1");
        return dim;
    }
    void same_dim(const Vector& o) const {
        if (dim() != o.dim())
            throw DimensionError("vector dimension mismatch: " + std::to_string(dim()) +
                                 " vs " + std::to_string(o.dim()));
    }

    std::vector<S> c_;
};

/// Band projection on X: the diagonal 0/1 operator supported on a coordinate
/// set. Bands of R^n are exactly the coordinate subspaces, so this type also
/// stands for the band it projects onto.
class BandProjection {
public:
    BandProjection(std::size_t dim, std::set<std::size_t> support)
        : dim_(dim), support_(std::move(support)) {
        if (dim == 0) throw DimensionError("lattice dimension must be >= 1");
        if (!support_.empty() && *support_.rbegin() >= dim)
            throw DimensionError("band support index out of range");
    }

    static BandProjection full(std::size_t dim) {
        std::set<std::size_t> all;
        for (std::size_t i = 0; i < dim; ++i) all.insert(i);
        return BandProjection(dim, std::move(all));
    }

    std::size_t dim() const { return dim_; }
    const std::set<std::size_t>& support() const { return support_; }
    bool contains(std::size_t i) const { return support_.count(i) != 0; }

    BandProjection complement() const {
        std::set<std::size_t> rest;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!contains(i)) rest.insert(i);
        return BandProjection(dim_, std::move(rest));
    }

    /// Coordinates in the support survive, the rest are zeroed. For x >= 0
    /// this is sup{ y in band : 0 <= y <= x }.
    template <ScalarType S>
    Vector<S> operator()(const Vector<S>& x) const {
        if (x.dim() != dim_)
            throw DimensionError("band projection applied to vector of wrong dimension");
        Vector<S> r(dim_);
        for (std::size_t i : support_) r[i] = x[i];
        return r;
    }

    friend bool operator==(const BandProjection& a, const BandProjection& b) = default;

private:
    std::size_t dim_;
    std::set<std::size_t> support_;
};

} // namespace riesz
