#include <catch2/catch_amalgamated.hpp>

#include "riesz/scalar.hpp"

using riesz::FloatScalar;
using riesz::Rational;

TEST_CASE("rational arithmetic stays canonical") {
    const Rational a = Rational::from_fraction(-2, 6);
    CHECK(a.str() == "-1/3");
    CHECK(Rational::from_fraction(2, -4).str() == "-1/2");
    CHECK((a + Rational::from_fraction(1, 3)).str() == "0/1");
    CHECK((Rational::from_fraction(1, 3) * Rational(3)).str() == "1/1");
    CHECK((Rational(7) / Rational(2)).str() == "7/2");
    CHECK(abs(Rational(-5)).str() == "5/1");
    CHECK(Rational(-5).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    CHECK(Rational(0).is_zero());
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-4/6") == Rational::from_fraction(-2, 3));
    CHECK(Rational::parse("+5/10") == Rational::from_fraction(1, 2));
    CHECK(Rational::parse("12345678901234567890/3") ==
          Rational::parse("4115226300411522630"));
    CHECK_THROWS_AS(Rational::parse(""), riesz::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), riesz::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), riesz::ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), riesz::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), riesz::ParseError);
}

TEST_CASE("rational comparisons are exact") {
    CHECK(Rational::from_fraction(1, 3) < Rational::from_fraction(34, 100));
    CHECK(Rational::from_fraction(1, 3) != Rational::from_fraction(33, 100));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational::from_fraction(1, 0), std::domain_error);
}

TEST_CASE("float scalar compares up to the global tolerance") {
    const double eps = FloatScalar::epsilon();
    REQUIRE(eps == 1e-9);
    CHECK(FloatScalar(1.0) == FloatScalar(1.0 + eps / 2));
    CHECK(FloatScalar(1.0) != FloatScalar(1.0 + 3 * eps));
    CHECK(FloatScalar(0.0) < FloatScalar(2 * eps));
    CHECK_FALSE(FloatScalar(0.0) < FloatScalar(eps / 2));
    CHECK(FloatScalar(eps / 2).sign() == 0);
    CHECK(FloatScalar(2 * eps).sign() == 1);

    FloatScalar::set_epsilon(1e-3);
    CHECK(FloatScalar(1.0) == FloatScalar(1.0005));
    FloatScalar::set_epsilon(1e-9);
}

TEST_CASE("rationals approximate into floats") {
    const Rational r = Rational::from_fraction(1, 3);
    CHECK(riesz::approximate(r) == FloatScalar(1.0 / 3.0));
    CHECK(FloatScalar::from_fraction(1, 3).value() ==
          Catch::Approx(1.0 / 3.0).epsilon(1e-15));
}
