#include <catch2/catch_amalgamated.hpp>

#include "riesz/dyadic.hpp"
#include "riesz/fuzz.hpp"
#include "riesz/multop.hpp"

using riesz::Matrix;
using riesz::Rational;
using riesz::Vector;
namespace fz = riesz::fuzz;

using R = Rational;
using Mat = Matrix<R>;
using Vec = Vector<R>;

TEST_CASE("averaging operator") {
    const Mat t1 = riesz::averaging_operator<R>(1);
    const R half = R::from_fraction(1, 2);
    CHECK(t1 == Mat::from_rows({{half, half}, {half, half}}));

    for (unsigned level = 1; level <= 4; ++level) {
        const Mat t = riesz::averaging_operator<R>(level);
        const std::size_t n = std::size_t{1} << level;
        // row sums are one: the constant function chi_Omega is fixed
        Vec ones(n);
        for (std::size_t i = 0; i < n; ++i) ones[i] = R(1);
        CHECK(t * ones == ones);
        CHECK(t * t == t);
    }
    CHECK_THROWS_AS(riesz::averaging_operator<R>(0), std::invalid_argument);
    CHECK_THROWS_AS(riesz::averaging_operator<R>(99), std::invalid_argument);
}

TEST_CASE("meet with the identity decays like 2^-n") {
    CHECK(riesz::meet_with_identity_decay<R>(1) == R::from_fraction(1, 2));
    CHECK(riesz::meet_with_identity_decay<R>(5) == R::from_fraction(1, 32));
    R prev = riesz::meet_with_identity_decay<R>(1);
    for (unsigned level = 2; level <= 8; ++level) {
        const R cur = riesz::meet_with_identity_decay<R>(level);
        CHECK(cur == R::from_fraction(1, static_cast<long long>(1) << level));
        CHECK(cur / prev == R::from_fraction(1, 2));
        prev = cur;
    }
}

TEST_CASE("averaging is a positive projection but no band projection") {
    const unsigned level = 2;
    const Mat t = riesz::averaging_operator<R>(level);
    const Mat id = Mat::identity(t.dim());
    CHECK(t.is_nonneg());
    CHECK(t * t == t);
    CHECK_FALSE(dominated_by(t, id));
    const auto cls = classify(t, id);
    CHECK(cls.positive_projection);
    CHECK_FALSE(cls.band_projection);
    CHECK(brute_force_mult_band_check(t, id) == cls.band_projection);
}

TEST_CASE("level-2 membership demonstration") {
    const auto proj = riesz::dyadic_quarter_projection();
    const Mat stretch = riesz::stretching_operator_level2<R>();
    // exact level-2 action: the first quarter maps onto the first half
    CHECK(stretch * Vec::basis(4, 0) == Vec{R(1), R(1), R(0), R(0)});
    for (std::size_t j = 1; j < 4; ++j) CHECK((stretch * Vec::basis(4, j)) == Vec(4));

    CHECK(band_member(proj, stretch));
    CHECK_FALSE(band_member(proj, riesz::condition3_violator_level2<R>()));
    CHECK(band_member(proj, Mat(4)));

    const auto rep = riesz::dyadic_membership_demo<R>();
    CHECK(rep.stretching_member);
    CHECK_FALSE(rep.violator_member);
    CHECK(rep.elementary_agreements == 16);
    CHECK(rep.consistent);
}

TEST_CASE("refinement commutes with averaging") {
    CHECK(riesz::refinement_consistency<R>(1));
    for (unsigned level = 1; level <= 4; ++level)
        CHECK(riesz::refinement_consistency<R>(level));

    // chi_Omega is fixed at every level and refines to chi_Omega
    for (unsigned level = 1; level <= 4; ++level) {
        const std::size_t n = std::size_t{1} << level;
        Vec ones(n);
        for (std::size_t i = 0; i < n; ++i) ones[i] = R(1);
        Vec refined = riesz::refine(ones);
        REQUIRE(refined.dim() == 2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) REQUIRE(refined[i] == R(1));
    }

    // a random simple function pushed through the chain of levels 1 -> 4
    fz::SplitMix64 g(131);
    Vec v = fz::gen_vector<R>(g, 2, true);
    for (unsigned level = 1; level <= 3; ++level) {
        const Vec lhs = riesz::refine(riesz::averaging_operator<R>(level) * v);
        const Vec rhs = riesz::averaging_operator<R>(level + 1) * riesz::refine(v);
        REQUIRE(lhs == rhs);
        v = riesz::refine(v);
    }
}
