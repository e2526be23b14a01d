#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toepsv/errors.hpp"
#include "toepsv/rational.hpp"

#include <cmath>
#include <random>

using toepsv::Rational;

TEST_CASE("parse plain and composite literals") {
    CHECK(Rational::parse("7/3") == Rational(7, 3));
    CHECK(Rational::parse("  -14/6 ") == Rational(-7, 3));
    CHECK(Rational::parse("100-1/6") == Rational(599, 6));
    CHECK(Rational::parse("100 - 1/6") == Rational(599, 6));
    CHECK(Rational::parse("1+1/2+1/3") == Rational(11, 6));
    CHECK(Rational::parse("2.75") == Rational(11, 4));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("2.5e2/5") == Rational(50));
    CHECK(Rational::parse("0") == Rational(0));
}

TEST_CASE("parse rejects malformed input") {
    for (const char* bad : {"", " ", "1/", "/3", "1/0", "abc", "1//2", "1 2", "1/2/3", "--1", "1.2.3"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rational::parse(bad), toepsv::ParseError);
    }
}

TEST_CASE("canonical form") {
    const Rational q(-6, -4);
    CHECK(q.numerator_string() == "3");
    CHECK(q.denominator_string() == "2");
    CHECK(Rational(4, -8).to_string() == "-1/2");
    CHECK(Rational(10, 5).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), toepsv::DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), toepsv::DomainError);
}

TEST_CASE("arbitrary precision survives large intermediates") {
    Rational tiny(1);
    for (int k = 0; k < 30; ++k) tiny /= Rational(10);
    const Rational x = Rational(1) - tiny;
    CHECK(x < Rational(1));
    CHECK(x.to_double() == 1.0);
    CHECK((x + tiny) == Rational(1));
    CHECK(x.denominator_string() == "1" + std::string(30, '0'));
}

TEST_CASE("to_double rounds to nearest") {
    CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
    CHECK(Rational(599, 6).to_double() == 599.0 / 6.0);
    // 1 + 2^-53 is a tie between 1 and 1 + 2^-52; ties go to even (1.0).
    Rational half_ulp(1);
    for (int k = 0; k < 53; ++k) half_ulp /= Rational(2);
    CHECK((Rational(1) + half_ulp).to_double() == 1.0);
    // Slightly above the tie must round up; truncation would give 1.0.
    Rational above = Rational(1) + half_ulp + half_ulp / Rational(1000);
    CHECK(above.to_double() == std::nextafter(1.0, 2.0));
    // Just below 1: truncation toward zero and round-to-nearest differ.
    Rational below = Rational(1) - half_ulp / Rational(4);
    CHECK(below.to_double() == 1.0);
}

TEST_CASE("from_double is exact and round-trips") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int k = 0; k < 1000; ++k) {
        const double v = dist(rng);
        CHECK(Rational::from_double(v).to_double() == v);
    }
    CHECK_THROWS_AS(Rational::from_double(NAN), toepsv::DomainError);
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
    CHECK((Rational(7, 3) <=> Rational(14, 6)) == std::strong_ordering::equal);
}
