#include <catch2/catch_amalgamated.hpp>

#include "riesz/fuzz.hpp"
#include "riesz/vector.hpp"

using riesz::BandProjection;
using riesz::FloatScalar;
using riesz::Rational;
using riesz::Vector;
using riesz::fuzz::SplitMix64;
namespace fz = riesz::fuzz;

using R = Rational;
using Vec = Vector<R>;

TEST_CASE("coordinatewise meet and join") {
    const Vec x{R(1), R(-2)};
    const Vec y{R(0), R(3)};
    CHECK(meet(x, y) == Vec{R(0), R(-2)});
    CHECK(join(x, y) == Vec{R(1), R(3)});
    CHECK(meet(x, x) == x);
    CHECK(abs(x) == Vec{R(1), R(2)});
    CHECK_THROWS_AS(meet(x, Vec(3)), riesz::DimensionError);
}

TEST_CASE("lattice axioms hold on random vectors") {
    SplitMix64 g(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + g.below(6);
        const Vec x = fz::gen_vector<R>(g, n);
        const Vec y = fz::gen_vector<R>(g, n);
        const Vec z = fz::gen_vector<R>(g, n);
        REQUIRE(meet(x, y) == meet(y, x));
        REQUIRE(join(x, y) == join(y, x));
        REQUIRE(meet(meet(x, y), z) == meet(x, meet(y, z)));
        REQUIRE(join(join(x, y), z) == join(x, join(y, z)));
        REQUIRE(meet(x, join(x, y)) == x);
        REQUIRE(join(x, meet(x, y)) == x);
        REQUIRE(abs(x) == join(x, -x));
    }
}

TEST_CASE("band projection masks coordinates") {
    const BandProjection p(2, {0});
    CHECK(p(Vec{R(3), R(5)}) == Vec{R(3), R(0)});
    const BandProjection zero_band(2, {});
    CHECK(zero_band(Vec{R(3), R(5)}) == Vec(2));
    CHECK_THROWS_AS(p(Vec(3)), riesz::DimensionError);
    CHECK_THROWS_AS(BandProjection(2, {5}), riesz::DimensionError);
}

namespace {

/// Grid-search oracle for the sup characterization: scan candidates
/// 0 <= y <= x supported inside the band on a per-coordinate grid
/// {0, x_i/2, x_i} and join the admissible ones.
Vec sup_by_grid_search(const BandProjection& p, const Vec& x) {
    const std::size_t n = x.dim();
    Vec best(n);
    std::vector<std::size_t> pick(n, 0);
    const R half = R::from_fraction(1, 2);
    while (true) {
        Vec y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = pick[i] == 0 ? R(0) : pick[i] == 1 ? half * x[i] : x[i];
        bool admissible = dominated_by(Vec(n), y) && dominated_by(y, x);
        for (std::size_t i = 0; i < n && admissible; ++i)
            if (!p.contains(i) && y[i].sign() != 0) admissible = false;
        if (admissible) best = join(best, y);
        std::size_t i = 0;
        while (i < n && ++pick[i] == 3) pick[i++] = 0;
        if (i == n) break;
    }
    return best;
}

} // namespace

TEST_CASE("band projection realizes the supremum over the band") {
    SplitMix64 g(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + g.below(4);
        const BandProjection p(n, fz::gen_support(g, n));
        const Vec x = fz::gen_vector<R>(g, n, true);
        REQUIRE(p(x) == sup_by_grid_search(p, x));
    }
}

TEST_CASE("every support subset gives an idempotent positive contraction") {
    SplitMix64 g(13);
    const std::size_t n = 3;
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
        std::set<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i)
            if (bits & (1u << i)) support.insert(i);
        const BandProjection p(n, support);
        for (int trial = 0; trial < 20; ++trial) {
            const Vec x = fz::gen_vector<R>(g, n, true);
            const Vec px = p(x);
            REQUIRE(p(px) == px);
            REQUIRE(px.is_nonneg());
            REQUIRE(dominated_by(px, x));
        }
    }
}

TEST_CASE("float mode agrees with exact mode within 10 epsilon") {
    SplitMix64 g(17);
    const double tol = 10.0 * FloatScalar::epsilon();
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + g.below(6);
        const Vec x = fz::gen_vector<R>(g, n);
        const Vec y = fz::gen_vector<R>(g, n);
        Vector<FloatScalar> xf(n), yf(n);
        for (std::size_t i = 0; i < n; ++i) {
            xf[i] = riesz::approximate(x[i]);
            yf[i] = riesz::approximate(y[i]);
        }
        const Vec em = meet(x, y);
        const Vector<FloatScalar> fm = meet(xf, yf);
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(std::fabs(em[i].to_double() - fm[i].value()) <= tol);
    }
}

TEST_CASE("vector norms") {
    const Vec x{R(1), R(-3), R::from_fraction(1, 2)};
    CHECK(x.norm_l1() == R::from_fraction(9, 2));
    CHECK(x.norm_linf() == R(3));
    CHECK_THROWS_AS(Vec(0), riesz::DimensionError);
}
