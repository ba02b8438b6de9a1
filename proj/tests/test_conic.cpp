#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "osculant/conic_fit.hpp"
#include "osculant/contact.hpp"

using namespace osc;

namespace {
Conic unitCircle() {
    Mat3 m = Mat3::Zero();
    m(0, 0) = -1;
    m(1, 1) = -1;
    m(2, 2) = 1;  // z^2 - x^2 - y^2: interior positive
    return Conic(m);
}
}  // namespace

TEST_CASE("conic_through five circle points recovers the circle") {
    std::array<ProjectivePoint, 5> pts;
    for (int i = 0; i < 5; ++i) {
        double t = 0.3 + i * 1.1;
        pts[i] = ProjectivePoint::affine(std::cos(t), std::sin(t));
    }
    Conic q = conicThrough(pts);
    CHECK_FALSE(q.degenerate());
    CHECK(q.approxEquals(unitCircle(), 1e-9));
}

TEST_CASE("conic equality is invariant under point permutation") {
    std::array<ProjectivePoint, 5> pts = {
        ProjectivePoint::affine(0.0, 1.0), ProjectivePoint::affine(2.0, 0.3),
        ProjectivePoint::affine(-1.0, -1.2), ProjectivePoint::affine(0.7, -0.4),
        ProjectivePoint::affine(-2.1, 0.9)};
    Conic q1 = conicThrough(pts);
    std::array<ProjectivePoint, 5> perm = {pts[3], pts[0], pts[4], pts[2], pts[1]};
    Conic q2 = conicThrough(perm);
    CHECK(q1.approxEquals(q2, 1e-9));
}

TEST_CASE("collinear triple forces a degenerate conic") {
    std::array<ProjectivePoint, 5> pts = {
        ProjectivePoint::affine(0.0, 0.0), ProjectivePoint::affine(1.0, 1.0),
        ProjectivePoint::affine(2.0, 2.0), ProjectivePoint::affine(1.0, -1.0),
        ProjectivePoint::affine(-2.0, 0.5)};
    Conic q = conicThrough(pts);
    CHECK(q.degenerate());
}

TEST_CASE("residuals on random generic points stay below 1e-10") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<ProjectivePoint, 5> pts;
        for (auto& p : pts) p = ProjectivePoint::affine(u(rng), u(rng));
        Conic q;
        try {
            q = conicThrough(pts);
        } catch (const AmbiguousConicError&) {
            continue;  // astronomically unlikely degenerate draw
        }
        for (const auto& p : pts) CHECK(std::abs(q.evaluate(p)) < 1e-10);
    }
}

TEST_CASE("interior orientation: disk side is positive") {
    Conic q = unitCircle();
    CHECK(q.evaluate(ProjectivePoint::affine(0.0, 0.0)) > 0);
    CHECK(q.evaluate(ProjectivePoint::affine(2.0, 0.0)) < 0);
    // same conic entered with flipped sign normalizes identically
    Mat3 m = Mat3::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 2) = -1;
    Conic q2{m};
    CHECK(q2.evaluate(ProjectivePoint::affine(0.0, 0.0)) > 0);
    CHECK(q.approxEquals(q2));
}

TEST_CASE("compose_jet basics") {
    Conic circle = unitCircle();
    ClosedCurve c = parseCurve("x=cos(t); y=sin(t)");

    SECTION("curve on conic: all derivatives vanish") {
        auto d = composeJet(circle, c, 1.234, 8);
        for (double v : d) CHECK(std::abs(v) < 1e-12);
    }
    SECTION("line curve against circle at origin") {
        ClosedCurve line = ClosedCurve::fromAffine(ExprParser::parse("t"),
                                                   ExprParser::parse("0"), 2 * M_PI, false);
        auto d = composeJet(circle, line, 0.0, 0);
        // unit-Frobenius normalization scales z^2-x^2-y^2 by 1/sqrt(3);
        // interior orientation makes the origin side positive
        CHECK(d[0] == Catch::Approx(1.0 / std::sqrt(3.0)));
        CHECK(circle.evaluate(ProjectivePoint::affine(0.0, 0.0)) ==
              Catch::Approx(1.0 / std::sqrt(3.0)));
    }
    SECTION("scale invariance up to global positive factor") {
        ClosedCurve a = parseCurve("X=cos(t); Y=sin(t)+0.5; Z=2");
        ClosedCurve b = parseCurve("X=3*cos(t); Y=3*(sin(t)+0.5); Z=6");
        auto da = composeJet(circle, a, 0.77, 6);
        auto db = composeJet(circle, b, 0.77, 6);
        for (int i = 0; i <= 6; ++i) CHECK(da[i] == Catch::Approx(db[i]).margin(1e-12));
    }
}

TEST_CASE("intersection multiplicity oracle cases") {
    Conic circle = unitCircle();
    ClosedCurve c = parseCurve("x=cos(t); y=sin(t)");

    SECTION("self intersection is infinite") {
        Multiplicity m = intersectionMultiplicity(circle, c, 0.9);
        CHECK(m.infinite);
    }
    SECTION("tangent ellipse x^2+4y^2=4 at (0,1) has multiplicity 2") {
        // independent series oracle: Q(cos t, sin t) = cos^2 t + 4 sin^2 t - 4
        // = -3 cos^2 t, a double zero at t = pi/2
        Eigen::Matrix<double, 6, 1> coef;
        coef << 1, 0, 4, 0, 0, -4;
        Conic ellipse = Conic::fromCoefficients(coef);
        Multiplicity m = intersectionMultiplicity(ellipse, c, M_PI / 2);
        CHECK_FALSE(m.infinite);
        CHECK(m.value == 2);
        CHECK(crossingTest(ellipse, c, M_PI / 2) == CrossingResult::OneSide);
    }
    SECTION("transversal crossing has multiplicity 1") {
        Eigen::Matrix<double, 6, 1> coef;
        coef << 1, 0, 1, -1, 0, -1;  // x^2+y^2-xz-z^2 crosses the unit circle
        Conic q = Conic::fromCoefficients(coef);
        // common point: x^2+y^2=1 and 1-x-1=0 -> x=0, y=+-1 -> t=pi/2
        Multiplicity m = intersectionMultiplicity(q, c, M_PI / 2);
        CHECK_FALSE(m.infinite);
        CHECK(m.value == 1);
        CHECK(crossingTest(q, c, M_PI / 2) == CrossingResult::Crosses);
    }
    SECTION("point not on conic is rejected") {
        Eigen::Matrix<double, 6, 1> coef;
        coef << 1, 0, 4, 0, 0, -4;
        Conic ellipse = Conic::fromCoefficients(coef);
        CHECK_THROWS_AS(intersectionMultiplicity(ellipse, c, 0.3), PointNotOnConicError);
    }
}
