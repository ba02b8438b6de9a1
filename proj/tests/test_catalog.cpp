#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "osculant/catalog.hpp"
#include "osculant/verify.hpp"

using namespace osc;

TEST_CASE("catalog entries parse, validate, and have unique ids") {
    std::set<std::string> ids;
    for (const auto& e : catalog()) {
        CHECK(ids.insert(e.id).second);
        CHECK_NOTHROW(e.curve());
        CHECK(e.golden.inflections >= -1);
        CHECK(e.golden.sextactic >= -1);
    }
    CHECK(catalog().size() >= 17);
}

TEST_CASE("curve arguments resolve through ids, files, and inline text") {
    CHECK_NOTHROW(resolveCurve("b2"));
    CHECK_NOTHROW(resolveCurve("x=cos(t); y=sin(t)"));
    CHECK_THROWS_AS(resolveCurve("no-such-curve"), CurveError);
}

TEST_CASE("golden counts and convexity classes hold at the default grid") {
    for (const auto& e : catalog()) {
        INFO("catalog entry " << e.id);
        CurveAnalysis a = analyzeCurve(e.curve());
        if (e.convexity) CHECK(a.convexity == *e.convexity);
        CHECK(a.sextactic.allSextactic == e.golden.allSextactic);
        if (e.golden.inflections >= 0) CHECK(a.inflectionCount() == e.golden.inflections);
        if (e.golden.trueInflections >= 0)
            CHECK(a.trueInflectionCount() == e.golden.trueInflections);
        if (e.golden.sextactic >= 0 && !e.golden.allSextactic)
            CHECK(a.sextacticCount() == e.golden.sextactic);
    }
}

TEST_CASE("special points of the wide limacon r = 3 + 2 cos t") {
    CurveAnalysis a = analyzeCurve(findCatalogEntry("b3")->curve());

    // Euclidean curvature of r = 3 + 2 cos t is proportional to
    // 17 + 18 cos t, so the inflections sit exactly at pi -+ acos(17/18)
    std::vector<double> trueInfl;
    for (const auto& p : a.inflections)
        if (p.has(PointTag::TrueInflection)) trueInfl.push_back(p.t);
    REQUIRE(trueInfl.size() == 2);
    const double offset = std::acos(17.0 / 18.0);
    for (double expect : {M_PI - offset, M_PI + offset}) {
        double nearest = 1e300;
        for (double t : trueInfl) nearest = std::min(nearest, std::abs(t - expect));
        CHECK(nearest < 1e-6);
    }

    // mirror symmetry t -> -t forces sextactic points onto the axis at
    // t = 0 and t = pi, and pairs up the remaining two
    REQUIRE(a.sextacticCount() == 4);
    std::vector<double> ts;
    for (const auto& p : a.sextactic.points) ts.push_back(p.t);
    std::sort(ts.begin(), ts.end());
    CHECK(std::abs(ts[0]) < 1e-6);
    CHECK(std::abs(ts[2] - M_PI) < 1e-6);
    CHECK(std::abs(ts[1] + ts[3] - 2 * M_PI) < 1e-6);
    // the off-axis pair lies strictly between the inflections and t = 0,
    // on the outer arc
    CHECK(ts[1] < M_PI - offset);
    CHECK(ts[3] > M_PI + offset);
}

TEST_CASE("doubling the grid never changes counts and barely moves points") {
    for (const auto& e : catalog()) {
        INFO("catalog entry " << e.id);
        ClosedCurve c = e.curve();
        const double period = c.period();
        CurveAnalysis coarse = analyzeCurve(c, kDefaultGrid);
        CurveAnalysis fine = analyzeCurve(c, 2 * kDefaultGrid);
        REQUIRE(coarse.inflectionCount() == fine.inflectionCount());
        REQUIRE(coarse.sextacticCount() == fine.sextacticCount());

        auto matchWithin = [&](const std::vector<SpecialPoint>& xs,
                               const std::vector<SpecialPoint>& ys) {
            for (const auto& p : xs) {
                double nearest = 1e300;
                for (const auto& q : ys)
                    nearest = std::min(nearest, cyclicDistance(p.t, q.t, period));
                CHECK(nearest < 1e-8);
            }
        };
        matchWithin(coarse.inflections, fine.inflections);
        matchWithin(coarse.sextactic.points, fine.sextactic.points);
    }
}
