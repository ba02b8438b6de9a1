#include <catch2/catch_amalgamated.hpp>

#include "osculant/report.hpp"
#include "osculant/svg.hpp"

using namespace osc;

namespace {

size_t countOccurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("run manifests parse into configs") {
    RunConfig cfg = parseConfigText(
        "# a comment\n"
        "grid = 1024\n"
        "zero_tolerance = 1e-9\n"
        "[curves]\n"
        "b2\n"
        "b3  # trailing comment\n"
        "[theorems]\n"
        "1.3\n"
        "[audits]\n"
        "circle inscribed 6\n"
        "[cubics]\n"
        "0 1\n"
        "-1 0\n");
    CHECK(cfg.grid == 1024);
    CHECK(cfg.zeroTol == 1e-9);
    REQUIRE(cfg.curves.size() == 2);
    CHECK(cfg.curves[1] == "b3");
    REQUIRE(cfg.theorems.size() == 1);
    REQUIRE(cfg.audits.size() == 1);
    CHECK(cfg.audits[0].side == ConicSide::Inscribed);
    CHECK(cfg.audits[0].grid == 6);
    REQUIRE(cfg.cubics.size() == 2);
    CHECK(cfg.cubics[1].a == "-1");

    CHECK_THROWS_AS(parseConfigText("[nonsense]\n"), ConfigError);
    CHECK_THROWS_AS(parseConfigText("grid = banana\n"), ConfigError);
    CHECK_THROWS_AS(parseConfigText("grid = 4\n"), ConfigError);
    CHECK_THROWS_AS(parseConfigText("[audits]\ncircle sideways\n"), ConfigError);
}

TEST_CASE("a report aggregates curves, theorems, audits, and cubics") {
    RunConfig cfg = parseConfigText(
        "grid = 1024\n"
        "[curves]\nb2\n"
        "[theorems]\n1.3\n5.5\n"
        "[audits]\ncircle inscribed 5\n"
        "[cubics]\n-1 0\n-3 2\n");
    ReportResult r = runReport(cfg);
    const Json& j = r.json;

    CHECK(j["meta"]["grid"] == 1024);
    REQUIRE(j["curves"].size() == 1);
    CHECK(j["curves"][0]["golden_match"] == true);
    CHECK(j["curves"][0]["counts"]["sextactic"] == 2);

    REQUIRE(j["theorems"].size() == 2);
    CHECK(j["theorems"][0]["theorem"] == "1.3");
    CHECK(j["theorems"][0]["pass"] == true);
    CHECK(j["theorems"][0]["tight"] == true);
    CHECK(j["theorems"][1]["applicable"] == false);  // 5.5 needs non-convex

    REQUIRE(j["axiom_audits"].size() == 1);
    CHECK(j["axiom_audits"][0]["passed"] == true);

    REQUIRE(j["cubics"].size() == 2);
    CHECK(j["cubics"][0]["counts"]["sextactic"] == 9);
    CHECK(j["cubics"][1].contains("error"));  // y^2 = x^3 - 3x + 2 is singular

    // the singular cubic is the only failure in this run
    CHECK(r.anyFailure);
}

TEST_CASE("an empty manifest yields an empty passing report") {
    ReportResult r = runReport(parseConfigText(""));
    CHECK_FALSE(r.anyFailure);
    CHECK(r.json["curves"].empty());
    CHECK(r.json["theorems"].empty());
    CHECK(r.json["axiom_audits"].empty());
    CHECK(r.json["cubics"].empty());
}

TEST_CASE("identical configs give byte-identical reports") {
    RunConfig cfg = parseConfigText("grid = 1024\n[curves]\nb4\n[theorems]\n5.4\n");
    std::string first = runReport(cfg).json.dump(2);
    std::string second = runReport(cfg).json.dump(2);
    CHECK(first == second);
    CHECK(first.find("runtime") == std::string::npos);  // timing must not leak in
}

TEST_CASE("coarse grids carry a resolution warning") {
    RunConfig cfg = parseConfigText("grid = 64\n[curves]\ncircle\n");
    ReportResult r = runReport(cfg);
    CHECK(r.json["curves"][0].contains("resolution_warning"));
}

TEST_CASE("SVG rendering is deterministic and marks I/S points") {
    ClosedCurve b3 = findCatalogEntry("b3")->curve();
    CurveAnalysis a = analyzeCurve(b3, 1024);
    std::vector<SpecialPoint> markers = a.inflections;
    markers.insert(markers.end(), a.sextactic.points.begin(), a.sextactic.points.end());

    std::string svg = renderSvg(b3, markers);
    CHECK(svg == renderSvg(b3, markers));
    CHECK(countOccurrences(svg, "glyph-I") == 2);
    CHECK(countOccurrences(svg, "glyph-S") == 4);
    CHECK(countOccurrences(svg, "<polyline") == 1);

    ClosedCurve circle = findCatalogEntry("circle")->curve();
    std::string plain = renderSvg(circle, {}, "every point of this conic is sextactic");
    CHECK(countOccurrences(plain, "glyph-") == 0);
    CHECK(plain.find("every point of this conic is sextactic") != std::string::npos);

    writeSvg("report_test_figure.svg", plain);
    std::ifstream in("report_test_figure.svg", std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    CHECK(body.str() == plain);
    std::remove("report_test_figure.svg");
}
