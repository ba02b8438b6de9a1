#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "osculant/pencil.hpp"

using namespace osc;

TEST_CASE("antipodal bitangent pencil of the circle recovers the circle") {
    ClosedCurve c = parseCurve("x=cos(t); y=sin(t)");
    Eigen::Matrix<double, 6, 1> coef;
    coef << 1, 0, 1, 0, 0, -1;
    Conic circle = Conic::fromCoefficients(coef);

    PencilExtremal in = maximalInscribed(c, 0.0, M_PI);
    PencilExtremal out = minimalCircumscribed(c, 0.0, M_PI);
    CHECK(in.conic.approxEquals(circle, 1e-6));
    CHECK(out.conic.approxEquals(circle, 1e-6));
    CHECK(in.lambda == Catch::Approx(out.lambda).margin(1e-6));

    ContactDivisor div = contactDivisor(c, in.conic);
    CHECK(div.wholeCurve);
    CHECK(div.totalInfinite);
    CHECK(div.valueAt(1.234, c.period()) == -1);
}

TEST_CASE("every tangent system of an ellipse degenerates to the ellipse") {
    ClosedCurve c = parseCurve("x=2*cos(t); y=sin(t)");
    Eigen::Matrix<double, 6, 1> coef;
    coef << 1, 0, 4, 0, 0, -4;
    Conic ellipse = Conic::fromCoefficients(coef);

    SECTION("bitangent pairs") {
        for (auto [p, q] : {std::pair{0.3, 2.1}, {1.0, 4.0}, {5.5, 2.8}}) {
            CHECK(maximalInscribed(c, p, q).conic.approxEquals(ellipse, 1e-6));
            CHECK(minimalCircumscribed(c, p, q).conic.approxEquals(ellipse, 1e-6));
        }
    }
    SECTION("four-contact systems") {
        for (double p : {0.4, 1.7, 3.9}) {
            CHECK(maximalInscribed(c, p, p).conic.approxEquals(ellipse, 1e-6));
            CHECK(minimalCircumscribed(c, p, p).conic.approxEquals(ellipse, 1e-6));
        }
    }
    SECTION("the divisor of the recovered conic is the whole curve") {
        CHECK(systemDivisor(c, 0.3, 2.1, ConicSide::Inscribed).wholeCurve);
    }
}

TEST_CASE("pencil members keep their designed contact") {
    ClosedCurve c = parseCurve("x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)");
    SECTION("bitangent") {
        ConicPencil pencil = tangentPencil(c, 0.4, 2.6);
        for (double lam : {-2.0, 0.5, 3.0}) {
            Conic m = pencil.member(lam);
            CHECK(intersectionMultiplicity(m, c, 0.4).atLeast(2));
            CHECK(intersectionMultiplicity(m, c, 2.6).atLeast(2));
        }
    }
    SECTION("four-contact") {
        ConicPencil pencil = tangentPencil(c, 1.1, 1.1);
        for (double lam : {-1.0, 0.7}) {
            Multiplicity m = intersectionMultiplicity(pencil.member(lam), c, 1.1);
            CHECK(m.atLeast(4));
            CHECK_FALSE(m.odd());
        }
    }
}

TEST_CASE("large lambda collapses a bitangent pencil onto the double chord") {
    ClosedCurve c = parseCurve("x=2*cos(t); y=sin(t)");
    double p = 0.3, q = 2.1;
    ConicPencil pencil = tangentPencil(c, p, q);
    Vec3 chord = lineThrough(c.point(p).homogeneous(), c.point(q).homogeneous());
    CHECK(pencil.member(1e12).approxEquals(Conic::doubleLine(chord), 1e-6));
}

TEST_CASE("extremal lambda is tight on both sides") {
    ClosedCurve c = parseCurve("x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)");
    double p = 0.4, q = 2.6;
    auto worst = [&](const ConicPencil& pencil, double lam, bool wantMax) {
        double w = wantMax ? -1e300 : 1e300;
        for (int i = 0; i < 4096; ++i) {
            double v =
                pencil.rawMember(lam).dot(veroneseRow(c.point(c.period() * i / 4096).homogeneous()));
            w = wantMax ? std::max(w, v) : std::min(w, v);
        }
        return w;
    };
    PencilExtremal in = maximalInscribed(c, p, q);
    CHECK(worst(in.pencil, in.lambda + 1e-3, true) < 1e-9);   // still inside-feasible
    CHECK(worst(in.pencil, in.lambda - 1e-3, true) > 1e-9);   // smaller lambda violates
    PencilExtremal out = minimalCircumscribed(c, p, q);
    CHECK(worst(out.pencil, out.lambda - 1e-3, false) > -1e-9);
    CHECK(worst(out.pencil, out.lambda + 1e-3, false) < -1e-9);
}

TEST_CASE("extremal members have a third contact or a deepened endpoint") {
    // characterization of extremal system members: beyond the two designed
    // tangencies there is either another support point or contact >= 4 at
    // an endpoint; all multiplicities even (noncrossing)
    ClosedCurve c = parseCurve("x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)");
    for (auto side : {ConicSide::Inscribed, ConicSide::Circumscribed}) {
        for (auto [p, q] : {std::pair{0.4, 2.6}, {1.3, 4.9}}) {
            ContactDivisor div = systemDivisor(c, p, q, side);
            INFO(toString(side) << " p=" << p << " q=" << q);
            for (const auto& d : div.diagnostics) {
                INFO(d);
                CHECK(d.find("containment violation") == std::string::npos);
            }
            REQUIRE(div.valueAt(p, c.period()) >= 2);
            REQUIRE(div.valueAt(q, c.period()) >= 2);
            bool deepened = div.valueAt(p, c.period()) >= 4 || div.valueAt(q, c.period()) >= 4;
            CHECK((div.components() >= 3 || deepened));
        }
    }
}

TEST_CASE("four-contact divisor carries multiplicity >= 4 at its base point") {
    ClosedCurve c = parseCurve("x=(1+0.05*cos(3*t))*cos(t); y=(1+0.05*cos(3*t))*sin(t)");
    for (auto side : {ConicSide::Inscribed, ConicSide::Circumscribed}) {
        ContactDivisor div = systemDivisor(c, 1.1, 1.1, side);
        CHECK(div.valueAt(1.1, c.period()) >= 4);
    }
}

TEST_CASE("contact divisor of hand-built conics against the unit circle") {
    ClosedCurve c = parseCurve("x=cos(t); y=sin(t)");
    SECTION("disjoint conic has empty divisor") {
        Eigen::Matrix<double, 6, 1> coef;
        coef << 1, 0, 1, 0, 0, -4;  // radius-2 circle
        ContactDivisor div = contactDivisor(c, Conic::fromCoefficients(coef));
        CHECK(div.entries.empty());
        CHECK(div.total == 0);
        CHECK_FALSE(div.wholeCurve);
    }
    SECTION("internally tangent ellipse touches at t=0 and t=pi") {
        Eigen::Matrix<double, 6, 1> coef;
        coef << 4, 0, 1, 0, 0, -4;  // x^2 + y^2/4 = 1, tangent at (+-1, 0)
        ContactDivisor div = contactDivisor(c, Conic::fromCoefficients(coef));
        REQUIRE(div.entries.size() == 2);
        CHECK(div.valueAt(0.0, c.period()) == 2);
        CHECK(div.valueAt(M_PI, c.period()) == 2);
        CHECK(div.valueAt(1.0, c.period()) == 0);
        CHECK(div.total == 4);
        CHECK(div.diagnostics.empty());
    }
    SECTION("transversal conic is flagged for odd contact") {
        Eigen::Matrix<double, 6, 1> coef;
        coef << 1, 0, 1, 1, 0, -1.5;  // shifted circle crossing the unit circle
        ContactDivisor div = contactDivisor(c, Conic::fromCoefficients(coef));
        REQUIRE_FALSE(div.diagnostics.empty());
        CHECK(div.diagnostics[0].find("containment violation") != std::string::npos);
    }
}

TEST_CASE("four-contact pencils refuse inflection parameters") {
    ClosedCurve c = parseCurve("x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)");
    double tInfl = M_PI - std::acos(17.0 / 18.0);
    CHECK_THROWS_AS(tangentPencil(c, tInfl, tInfl), PencilError);
    // near the even-order inflection of r=cos(2t)+5 the curvature exceeds
    // the refusal bound long before the exact parameter
    ClosedCurve c2 = parseCurve("x=(cos(2*t)+5)*cos(t); y=(cos(2*t)+5)*sin(t)");
    CHECK_THROWS_AS(tangentPencil(c2, M_PI / 2 + 1e-5, M_PI / 2 + 1e-5), PencilError);
}
