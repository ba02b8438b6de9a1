#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "osculant/convexity.hpp"

using namespace osc;

TEST_CASE("affine chart search") {
    SECTION("circle: feasible, margin positive") {
        AffineChart chart = findAffineChart(parseCurve("x=cos(t); y=sin(t)"));
        REQUIRE(chart.feasible);
        CHECK(chart.margin > 0.1);
        CHECK_FALSE(chart.noncontractible);
    }
    SECTION("projective line: infeasible") {
        AffineChart chart = findAffineChart(parseCurve("X=cos(t); Y=sin(t); Z=0"));
        CHECK_FALSE(chart.feasible);
    }
    SECTION("antiperiodic line lift is noncontractible and infeasible") {
        AffineChart chart =
            findAffineChart(parseCurve("X=cos(t); Y=sin(t); Z=0; period=pi"));
        CHECK(chart.noncontractible);
        CHECK_FALSE(chart.feasible);
    }
    SECTION("translated curve avoids a visible line") {
        AffineChart chart =
            findAffineChart(parseCurve("x=cos(t)+10; y=sin(t)"));
        REQUIRE(chart.feasible);
        // every sample is strictly on the positive side of the line
        ClosedCurve c = parseCurve("x=cos(t)+10; y=sin(t)");
        for (int i = 0; i < 64; ++i) {
            Vec3 p = c.point(2 * M_PI * i / 64).homogeneous();
            if (p.dot(chart.line) < 0) p = -p;
            CHECK(p.dot(chart.line) >= chart.margin - 1e-12);
        }
    }
}

TEST_CASE("convexity classification of the example curves") {
    CHECK(isConvex(parseCurve("x=2*cos(t); y=sin(t)")) == Convexity::StrictlyConvex);
    CHECK(isConvex(parseCurve("x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)")) == Convexity::Convex);
    CHECK(isConvex(parseCurve("x=(cos(2*t)+5)*cos(t); y=(cos(2*t)+5)*sin(t)")) ==
          Convexity::Convex);
    CHECK(isConvex(parseCurve("x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)")) ==
          Convexity::NonConvex);
    CHECK(isConvex(parseCurve("X=cos(t); Y=sin(t); Z=0")) == Convexity::NotInAffinePlane);
}

TEST_CASE("flower curves split by petal amplitude") {
    auto flower = [](int k, double eps) {
        std::ostringstream s;
        s << "x=(1+" << eps << "*cos(" << k << "*t))*cos(t);"
          << "y=(1+" << eps << "*cos(" << k << "*t))*sin(t)";
        return parseCurve(s.str());
    };
    CHECK(isConvex(flower(3, 0.05)) == Convexity::StrictlyConvex);
    CHECK(isConvex(flower(2, 0.1)) == Convexity::StrictlyConvex);
    CHECK(isConvex(flower(4, 0.2)) == Convexity::NonConvex);
    CHECK(isConvex(flower(3, 0.2)) == Convexity::NonConvex);
}
