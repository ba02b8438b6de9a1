#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "osculant/special_points.hpp"

using namespace osc;

TEST_CASE("a conic is all-sextactic") {
    ClosedCurve c = parseCurve("x=2*cos(t); y=sin(t)");
    SextacticScan scan = findSextactic(c);
    CHECK(scan.allSextactic);
    CHECK(scan.points.empty());
}

TEST_CASE("osculating conic of an ellipse is the ellipse itself") {
    ClosedCurve c = parseCurve("x=2*cos(t); y=sin(t)");
    Eigen::Matrix<double, 6, 1> coef;
    coef << 1, 0, 4, 0, 0, -4;  // x^2 + 4y^2 - 4z^2
    Conic ellipse = Conic::fromCoefficients(coef);
    for (double t : {0.3, 1.9, 4.4}) CHECK(osculatingConic(c, t).approxEquals(ellipse, 1e-8));
}

TEST_CASE("osculating conic refuses inflection parameters") {
    ClosedCurve c = parseCurve("x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)");
    auto infl = findInflections(c);
    REQUIRE(infl.size() == 2);
    for (const auto& p : infl)
        CHECK_THROWS_AS(osculatingConic(c, p.t), InflectionParameterError);
}

TEST_CASE("generic osculating conic has contact exactly 5 and crosses") {
    ClosedCurve c = parseCurve("x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)");
    SextacticScan scan = findSextactic(c);
    double tGeneric = 0.7;
    for (const auto& p : scan.points) REQUIRE(cyclicDistance(tGeneric, p.t, c.period()) > 0.05);
    Conic q = osculatingConic(c, tGeneric);
    Multiplicity m = intersectionMultiplicity(q, c, tGeneric);
    CHECK_FALSE(m.infinite);
    CHECK(m.value == 5);
    CHECK(crossingTest(q, c, tGeneric) == CrossingResult::Crosses);
}

TEST_CASE("r=cos(2t)+5 has exactly two sextactic points") {
    ClosedCurve c = parseCurve("x=(cos(2*t)+5)*cos(t); y=(cos(2*t)+5)*sin(t)");
    SextacticScan scan = findSextactic(c);
    CHECK_FALSE(scan.allSextactic);
    REQUIRE(scan.points.size() == 2);
    for (const auto& p : scan.points) {
        CHECK(p.multiplicity.atLeast(6));
        REQUIRE(p.witness.has_value());
        SpecialPoint tagged = classifySextactic(c, p);
        bool localTag = tagged.has(PointTag::Minimal) || tagged.has(PointTag::Maximal);
        CHECK(localTag);
    }
}

TEST_CASE("r=2+cos(t) has exactly three sextactic points") {
    ClosedCurve c = parseCurve("x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)");
    SextacticScan scan = findSextactic(c);
    REQUIRE(scan.points.size() == 3);
}

TEST_CASE("r=3+2cos(t) has four sextactic points in a symmetric pattern") {
    // the curve is symmetric about the x axis, so the sextactic set is
    // {0, pi, pi -+ s} for some offset s
    ClosedCurve c = parseCurve("x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)");
    SextacticScan scan = findSextactic(c);
    REQUIRE(scan.points.size() == 4);
    auto hasNear = [&](double t) {
        for (const auto& p : scan.points)
            if (cyclicDistance(p.t, t, c.period()) < 1e-6) return true;
        return false;
    };
    CHECK(hasNear(0.0));
    CHECK(hasNear(M_PI));
    CHECK(scan.points[1].t + scan.points[3].t == Catch::Approx(2 * M_PI).margin(1e-6));
    for (const auto& p : scan.points) {
        CHECK_FALSE(p.multiplicity.infinite);
        CHECK(p.multiplicity.value == 6);
    }
}

TEST_CASE("inverted-cusp curve has exactly three sextactic points") {
    ClosedCurve c = parseCurve(
        "x = sin(t)*cos(t)/(sin(t)^2+9*cos(t)^6)\n"
        "y = -3*cos(t)^4/(sin(t)^2+9*cos(t)^6)\n"
        "period = pi\n");
    SextacticScan scan = findSextactic(c);
    CHECK(scan.points.size() == 3);
}

TEST_CASE("both detectors see every sextactic point") {
    for (const char* src : {
             "x=(cos(2*t)+5)*cos(t); y=(cos(2*t)+5)*sin(t)",
             "x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)",
             "x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)",
             "x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)",
         }) {
        SextacticScan scan = findSextactic(parseCurve(src));
        INFO(src);
        for (const auto& d : scan.diagnostics) {
            INFO(d);
            CHECK(d.find("-only detection") == std::string::npos);
        }
    }
}

TEST_CASE("strictly convex flower: three globally maximal, three globally minimal") {
    ClosedCurve c = parseCurve("x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)");
    SextacticScan scan = findSextactic(c);
    REQUIRE(scan.points.size() >= 6);
    int gmax = 0, gmin = 0;
    for (const auto& p : scan.points) {
        SpecialPoint tagged = classifySextactic(c, p);
        if (tagged.has(PointTag::GloballyMaximal)) {
            CHECK(tagged.has(PointTag::Maximal));
            ++gmax;
        }
        if (tagged.has(PointTag::GloballyMinimal)) {
            CHECK(tagged.has(PointTag::Minimal));
            ++gmin;
        }
    }
    CHECK(gmax >= 3);
    CHECK(gmin >= 3);
}

TEST_CASE("sextactic detection is equivariant under unimodular affine maps") {
    ClosedCurve orig = parseCurve("x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)");
    ClosedCurve mapped = parseCurve(
        "x=1.3*((2+cos(t))*cos(t))+0.4*((2+cos(t))*sin(t))+0.7\n"
        "y=0.5*((2+cos(t))*cos(t))+(1.2/1.3)*((2+cos(t))*sin(t))-1.1\n");
    SextacticScan a = findSextactic(orig);
    SextacticScan b = findSextactic(mapped);
    REQUIRE(a.points.size() == b.points.size());
    for (const auto& pa : a.points) {
        double best = orig.period();
        for (const auto& pb : b.points)
            best = std::min(best, cyclicDistance(pa.t, pb.t, orig.period()));
        CHECK(best < 1e-6);
    }
}
