#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "riesz/errors.hpp"

namespace riesz {

/// Exact rational scalar, kept canonical (reduced, positive denominator).
/// Every decision procedure in the library runs on this type; the float
/// scalar below exists for the dyadic norm experiment and cross-checks.
class Rational {
public:
    using rep_type = boost::multiprecision::cpp_rational;

    Rational() : v_(0) {}
    Rational(int v) : v_(v) {}
    Rational(long long v) : v_(v) {}
    explicit Rational(rep_type v) : v_(std::move(v)) {}

    static Rational from_fraction(long long num, long long den) {
        if (den == 0)
            throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(rep_type(num, den));
    }

    /// Accepts "p" or "p/q" with optional leading sign on either part.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(rep_type(parse_int(text)));
            boost::multiprecision::cpp_int num = parse_int(text.substr(0, slash));
            boost::multiprecision::cpp_int den = parse_int(text.substr(slash + 1));
            if (den == 0)
                throw ParseError("zero denominator in \"" + std::string(text) + "\"");
            if (den < 0) {
                num = -num;
                den = -den;
            }
            return Rational(rep_type(std::move(num), std::move(den)));
        } catch (const std::runtime_error& e) {
            throw ParseError("bad rational \"" + std::string(text) + "\": " + e.what());
        }
    }

    /// Always renders as "p/q" ("3/1", "-1/2", "0/1").
    std::string str() const {
        return numerator(v_).str() + "/" + denominator(v_).str();
    }

    double to_double() const { return v_.convert_to<double>(); }
    const rep_type& rep() const { return v_; }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.is_zero(); }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    // Sign comparison settles most orderings without cross-multiplying.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.sign() == b.sign() && a.v_ == b.v_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        const int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        const int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb;
        return a.v_ <= b.v_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

private:
    static boost::multiprecision::cpp_int parse_int(std::string_view s) {
        if (s.empty())
            throw std::runtime_error("empty integer");
        const bool negative = s[0] == '-';
        std::string_view digits = (s[0] == '+' || s[0] == '-') ? s.substr(1) : s;
        if (digits.empty())
            throw std::runtime_error("sign without digits");
        for (char c : digits)
            if (c < '0' || c > '9')
                throw std::runtime_error("non-digit character");
        boost::multiprecision::cpp_int v{std::string(digits)};
        return negative ? -v : v;
    }

    rep_type v_;
};

/// IEEE double with a single global comparison tolerance: every equality and
/// sign test is taken up to epsilon. Arithmetic is plain double arithmetic.
class FloatScalar {
public:
    FloatScalar() : v_(0.0) {}
    FloatScalar(int v) : v_(v) {}
    explicit FloatScalar(double v) : v_(v) {}

    static FloatScalar from_fraction(long long num, long long den) {
        if (den == 0)
            throw std::domain_error("fraction with zero denominator");
        return FloatScalar(static_cast<double>(num) / static_cast<double>(den));
    }

    static double epsilon() { return eps_; }
    static void set_epsilon(double e) { eps_ = e; }

    double value() const { return v_; }
    double to_double() const { return v_; }

    /// Shortest round-trip decimal.
    std::string str() const {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v_);
        return std::string(buf, end);
    }

    int sign() const {
        if (std::fabs(v_) <= eps_) return 0;
        return v_ > 0 ? 1 : -1;
    }
    bool is_zero() const { return sign() == 0; }

    FloatScalar operator-() const { return FloatScalar(-v_); }
    FloatScalar& operator+=(const FloatScalar& o) { v_ += o.v_; return *this; }
    FloatScalar& operator-=(const FloatScalar& o) { v_ -= o.v_; return *this; }
    FloatScalar& operator*=(const FloatScalar& o) { v_ *= o.v_; return *this; }
    FloatScalar& operator/=(const FloatScalar& o) {
        if (o.v_ == 0.0)
            throw std::domain_error("float division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend FloatScalar operator+(FloatScalar a, const FloatScalar& b) { return a += b; }
    friend FloatScalar operator-(FloatScalar a, const FloatScalar& b) { return a -= b; }
    friend FloatScalar operator*(FloatScalar a, const FloatScalar& b) { return a *= b; }
    friend FloatScalar operator/(FloatScalar a, const FloatScalar& b) { return a /= b; }

    friend bool operator==(const FloatScalar& a, const FloatScalar& b) {
        return std::fabs(a.v_ - b.v_) <= eps_;
    }
    friend bool operator!=(const FloatScalar& a, const FloatScalar& b) { return !(a == b); }
    friend bool operator<(const FloatScalar& a, const FloatScalar& b) {
        return a.v_ < b.v_ - eps_;
    }
    friend bool operator<=(const FloatScalar& a, const FloatScalar& b) {
        return a.v_ <= b.v_ + eps_;
    }
    friend bool operator>(const FloatScalar& a, const FloatScalar& b) { return b < a; }
    friend bool operator>=(const FloatScalar& a, const FloatScalar& b) { return b <= a; }

    friend FloatScalar abs(const FloatScalar& a) { return FloatScalar(std::fabs(a.v_)); }

private:
    double v_;
    inline static double eps_ = 1e-9;
};

template <typename S>
concept ScalarType = requires(S a, S b) {
    S(0);
    S(1);
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    { a.sign() } -> std::convertible_to<int>;
    { a.str() } -> std::convertible_to<std::string>;
    { S::from_fraction(1, 2) } -> std::convertible_to<S>;
};

template <ScalarType S>
inline constexpr bool is_exact_scalar_v = std::is_same_v<S, Rational>;

/// Lossy by construction; used by the exact/float cross-checks.
inline FloatScalar approximate(const Rational& r) { return FloatScalar(r.to_double()); }

} // namespace riesz
