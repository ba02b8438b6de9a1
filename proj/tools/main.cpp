// Command-line surface: analyze curves, verify theorems, audit the conic
// system axioms, classify cubics exactly, plot figures, and run report
// manifests. Exit codes: 0 success, 1 check failure, 2 usage/input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "osculant/report.hpp"
#include "osculant/svg.hpp"

using namespace osc;

namespace {

void printSpecialPoints(const CurveAnalysis& a) {
    for (const auto& p : a.inflections) {
        std::printf("  inflection  t=%.9f%s%s\n", p.t,
                    p.has(PointTag::TrueInflection) ? "  true" : "",
                    p.interval ? "  (interval)" : "");
    }
    for (const auto& p : a.sextactic.points) {
        std::string tags;
        if (p.has(PointTag::Minimal)) tags += "  minimal";
        if (p.has(PointTag::Maximal)) tags += "  maximal";
        if (p.has(PointTag::GloballyMinimal)) tags += "  globally-minimal";
        if (p.has(PointTag::GloballyMaximal)) tags += "  globally-maximal";
        if (p.has(PointTag::Clean)) tags += "  clean";
        std::printf("  sextactic   t=%.9f  mult=%d%s\n", p.t, p.multiplicity.value,
                    tags.c_str());
    }
}

int cmdAnalyze(const std::string& curveSpec, int grid, double tol,
               const std::string& jsonPath) {
    ClosedCurve curve = resolveCurve(curveSpec);
    CurveAnalysis a = analyzeCurve(curve, grid);
    std::printf("curve: %s\n", curveSpec.c_str());
    std::printf("convexity: %s\n", toString(a.convexity));
    std::printf("homotopy: %s\n", a.chart.noncontractible ? "noncontractible" : "nullhomotopic");
    if (a.sextactic.allSextactic)
        std::printf("every point is sextactic (the curve is a conic)\n");
    std::printf("counts: %d inflections (%d true), %d sextactic\n", a.inflectionCount(),
                a.trueInflectionCount(), a.sextacticCount());
    printSpecialPoints(a);

    if (!jsonPath.empty()) {
        RunConfig cfg;
        cfg.grid = grid;
        cfg.zeroTol = tol;
        cfg.curves = {curveSpec};
        std::ofstream out(jsonPath);
        if (!out) throw std::runtime_error("cannot write '" + jsonPath + "'");
        out << runReport(cfg).json.dump(2) << "\n";
    }
    return 0;
}

int cmdVerify(const std::string& theorem, const std::string& curveSpec, int grid) {
    ClosedCurve curve = resolveCurve(curveSpec);
    VerificationReport r = verifyTheorem(theorem, curve, curveSpec, grid);
    if (!r.applicable) {
        std::printf("theorem %s on %s: not applicable\n", theorem.c_str(), curveSpec.c_str());
        for (const auto& n : r.notes) std::printf("  %s\n", n.c_str());
        return 0;
    }
    std::printf("theorem %s on %s: %s (measured %lld, bound %lld%s)\n", theorem.c_str(),
                curveSpec.c_str(), r.pass ? "pass" : "FAIL", r.measured, r.bound,
                r.tight ? ", tight" : "");
    for (const auto& [k, v] : r.values) std::printf("  %s = %.9g\n", k.c_str(), v);
    for (const auto& n : r.notes) std::printf("  %s\n", n.c_str());
    return r.pass ? 0 : 1;
}

int cmdAudit(const std::string& curveSpec, const std::string& side, int grid) {
    ClosedCurve curve = resolveCurve(curveSpec);
    ConicSide s = side == "inscribed" ? ConicSide::Inscribed : ConicSide::Circumscribed;
    AxiomReport r = auditConicAxioms(curve, CyclicInterval::full(curve.period()), s, grid);
    std::printf("axiom audit of the %s system on %s at grid %d: %s\n", side.c_str(),
                curveSpec.c_str(), grid, r.passed() ? "pass" : "FAIL");
    for (const auto& v : r.violations)
        std::printf("  violation %s: %s\n", v.axiom.c_str(), v.witness.c_str());
    if (!r.notes.empty()) std::printf("  (%zu ambiguous configurations noted)\n", r.notes.size());
    return r.passed() ? 0 : 1;
}

int cmdCubic(const std::string& aText, const std::string& bText) {
    WeierstrassCubic cubic(parseRational(aText), parseRational(bText));
    CubicClassification cl = classifyCubicPoints(cubic);
    std::ostringstream disc;
    disc << cubic.discriminant();
    std::printf("cubic y^2 = x^3 + (%s) x + (%s)\n", aText.c_str(), bText.c_str());
    std::printf("discriminant: %s, %d real branch(es)\n", disc.str().c_str(), cubic.branches());
    auto show = [](const char* label, const std::vector<CubicPoint>& pts) {
        std::printf("%s (%zu):\n", label, pts.size());
        for (const auto& p : pts) {
            if (p.infinity) {
                std::printf("  point at infinity\n");
            } else if (p.exact) {
                std::ostringstream sx, sy;
                sx << p.x;
                sy << p.y;
                std::printf("  (%s, %s)  exact\n", sx.str().c_str(), sy.str().c_str());
            } else {
                std::printf("  (%.12g, %.12g)\n", p.xd, p.yd);
            }
        }
    };
    show("inflections", cl.inflections);
    show("sextactic points", cl.sextactic);
    if (cubic.branches() == 2)
        std::printf("branch split: oval %d+%d, identity component %d+%d\n", cl.ovalInflections,
                    cl.ovalSextactic, cl.identityInflections, cl.identitySextactic);
    return 0;
}

int cmdPlot(const std::string& curveSpec, const std::string& svgPath, int grid) {
    ClosedCurve curve = resolveCurve(curveSpec);
    CurveAnalysis a = analyzeCurve(curve, grid);
    std::vector<SpecialPoint> markers = a.inflections;
    markers.insert(markers.end(), a.sextactic.points.begin(), a.sextactic.points.end());
    std::string caption;
    if (a.sextactic.allSextactic) caption = "every point of this conic is sextactic";
    writeSvg(svgPath, renderSvg(curve, markers, caption));
    std::printf("wrote %s (%zu inflection markers, %zu sextactic markers)\n", svgPath.c_str(),
                a.inflections.size(), a.sextactic.points.size());
    return 0;
}

int cmdReport(const std::string& configPath, const std::string& jsonPath) {
    std::ifstream in(configPath);
    if (!in) throw ConfigError("cannot read config '" + configPath + "'");
    RunConfig cfg = parseConfig(in);
    ReportResult r = runReport(cfg);
    std::string text = r.json.dump(2) + "\n";
    if (jsonPath.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream out(jsonPath);
        if (!out) throw std::runtime_error("cannot write '" + jsonPath + "'");
        out << text;
        std::printf("wrote %s\n", jsonPath.c_str());
    }
    return r.anyFailure ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inflection and sextactic point analysis of closed plane curves"};
    app.require_subcommand(1);

    std::string curveSpec, theorem, side = "inscribed", jsonPath, svgPath, configPath;
    std::string cubicA, cubicB;
    int grid = kDefaultGrid;
    double tol = 1e-10;

    CLI::App* analyze = app.add_subcommand("analyze", "detect and classify special points");
    analyze->add_option("--curve", curveSpec, "catalog id, DSL file, or inline DSL")->required();
    analyze->add_option("--grid", grid, "detection grid size");
    analyze->add_option("--tol", tol, "zero tolerance");
    analyze->add_option("--json", jsonPath, "write a JSON report here");

    CLI::App* verify = app.add_subcommand("verify", "check a theorem's bound on a curve");
    verify->add_option("--theorem", theorem, "theorem id (e.g. 1.2ii, 4.1, 4.2, 5.5)")
        ->required();
    verify->add_option("--curve", curveSpec, "catalog id, DSL file, or inline DSL")->required();
    verify->add_option("--grid", grid, "detection grid size");

    CLI::App* audit = app.add_subcommand("audit-axioms", "audit the conic system axioms");
    audit->add_option("--curve", curveSpec, "catalog id, DSL file, or inline DSL")->required();
    audit->add_option("--side", side, "inscribed or circumscribed")
        ->check(CLI::IsMember({"inscribed", "circumscribed"}));
    int auditGrid = 12;
    audit->add_option("--grid", auditGrid, "audit sample grid");

    CLI::App* cubic = app.add_subcommand("cubic", "exact classification of y^2=x^3+ax+b");
    cubic->add_option("--a", cubicA, "rational coefficient a")->required();
    cubic->add_option("--b", cubicB, "rational coefficient b")->required();

    CLI::App* plot = app.add_subcommand("plot", "render the curve and its special points");
    plot->add_option("--curve", curveSpec, "catalog id, DSL file, or inline DSL")->required();
    plot->add_option("--svg", svgPath, "output SVG path")->required();
    plot->add_option("--grid", grid, "detection grid size");

    CLI::App* report = app.add_subcommand("report", "run a config manifest");
    report->add_option("--config", configPath, "run manifest path")->required();
    report->add_option("--json", jsonPath, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmdAnalyze(curveSpec, grid, tol, jsonPath);
        if (verify->parsed()) return cmdVerify(theorem, curveSpec, grid);
        if (audit->parsed()) return cmdAudit(curveSpec, side, auditGrid);
        if (cubic->parsed()) return cmdCubic(cubicA, cubicB);
        if (plot->parsed()) return cmdPlot(curveSpec, svgPath, grid);
        if (report->parsed()) return cmdReport(configPath, jsonPath);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
