#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "osculant/expr.hpp"

using namespace osc;

TEST_CASE("parser handles precedence and constants") {
    CHECK(ExprParser::parse("1+2*3")->eval(0.0) == Catch::Approx(7.0));
    CHECK(ExprParser::parse("(1+2)*3")->eval(0.0) == Catch::Approx(9.0));
    CHECK(ExprParser::parse("2^3^2")->eval(0.0) == Catch::Approx(512.0));  // right assoc
    CHECK(ExprParser::parse("-2^2")->eval(0.0) == Catch::Approx(-4.0));
    CHECK(ExprParser::parse("pi")->eval(0.0) == Catch::Approx(M_PI));
    CHECK(ExprParser::parse("e")->eval(0.0) == Catch::Approx(M_E));
    CHECK(ExprParser::parse("2*t")->eval(3.0) == Catch::Approx(6.0));
    CHECK(ExprParser::parse("cos(2*t)+5")->eval(0.0) == Catch::Approx(6.0));
    CHECK(ExprParser::parse("1.5e2")->eval(0.0) == Catch::Approx(150.0));
    CHECK(ExprParser::parse("t^-2")->eval(2.0) == Catch::Approx(0.25));
}

TEST_CASE("parser reports syntax errors with a column") {
    CHECK_THROWS_AS(ExprParser::parse("cos("), ParseError);
    CHECK_THROWS_AS(ExprParser::parse("1+*2"), ParseError);
    CHECK_THROWS_AS(ExprParser::parse("sina(t)"), ParseError);
    try {
        ExprParser::parse("cos(");
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(pe.column >= 4);
    }
    try {
        ExprParser::parse("1 + bogus");
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(pe.column == 5);
    }
}
