#pragma once

// Run manifests and machine-readable reports: a plain-text key=value config
// selects curves, theorems, axiom audits, and cubics; the runner aggregates
// everything into one deterministic JSON document.

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "osculant/axioms.hpp"
#include "osculant/catalog.hpp"
#include "osculant/cubic.hpp"
#include "osculant/verify.hpp"

namespace osc {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuditSpec {
    std::string curve;
    ConicSide side = ConicSide::Inscribed;
    int grid = 12;
};

struct CubicSpec {
    std::string a = "0";
    std::string b = "0";
};

struct RunConfig {
    int grid = kDefaultGrid;
    double zeroTol = 1e-10;
    double bisectTol = 1e-12;
    std::vector<std::string> curves;  // catalog ids, file paths, or inline DSL
    std::vector<std::string> theorems;
    std::vector<AuditSpec> audits;
    std::vector<CubicSpec> cubics;
};

namespace detail {

inline std::string trimmed(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

}  // namespace detail

/// Config format: '#' comments; section headers [run], [curves],
/// [theorems], [audits], [cubics]. [run] holds key=value settings
/// (grid, zero_tolerance, bisection_tolerance). [curves] and [theorems]
/// hold one entry per line. [audits] lines are
/// "<curve> <inscribed|circumscribed> [grid]". [cubics] lines are
/// "<a> <b>" with exact rational coefficients.
inline RunConfig parseConfig(std::istream& in) {
    RunConfig cfg;
    std::string section = "run";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trimmed(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = detail::trimmed(line.substr(1, line.size() - 2));
            if (section != "run" && section != "curves" && section != "theorems" &&
                section != "audits" && section != "cubics")
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        try {
            if (section == "run") {
                auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("expected key = value in [run]");
                std::string key = detail::trimmed(line.substr(0, eq));
                std::string val = detail::trimmed(line.substr(eq + 1));
                if (key == "grid") cfg.grid = std::stoi(val);
                else if (key == "zero_tolerance") cfg.zeroTol = std::stod(val);
                else if (key == "bisection_tolerance") cfg.bisectTol = std::stod(val);
                else throw ConfigError("unknown [run] key '" + key + "'");
            } else if (section == "curves") {
                cfg.curves.push_back(line);
            } else if (section == "theorems") {
                cfg.theorems.push_back(line);
            } else if (section == "audits") {
                std::istringstream ls(line);
                AuditSpec spec;
                std::string side;
                ls >> spec.curve >> side;
                if (!ls) throw ConfigError("audit line needs '<curve> <side> [grid]'");
                if (side == "inscribed") spec.side = ConicSide::Inscribed;
                else if (side == "circumscribed") spec.side = ConicSide::Circumscribed;
                else throw ConfigError("audit side must be inscribed or circumscribed");
                if (int g; ls >> g) spec.grid = g;
                cfg.audits.push_back(spec);
            } else {  // cubics
                std::istringstream ls(line);
                CubicSpec spec;
                ls >> spec.a >> spec.b;
                if (!ls) throw ConfigError("cubic line needs '<a> <b>'");
                cfg.cubics.push_back(spec);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (cfg.grid < 16) throw ConfigError("grid too small (minimum 16)");
    return cfg;
}

inline RunConfig parseConfigText(const std::string& text) {
    std::istringstream in(text);
    return parseConfig(in);
}

namespace detail {

inline Json specialPointJson(const SpecialPoint& p) {
    Json j;
    j["t"] = p.t;
    j["kind"] = p.kind == PointKind::Inflection ? "inflection" : "sextactic";
    if (p.multiplicity.infinite) j["multiplicity"] = "infinite";
    else j["multiplicity"] = p.multiplicity.value;
    Json tags = Json::array();
    for (PointTag tag : {PointTag::TrueInflection, PointTag::Minimal, PointTag::Maximal,
                         PointTag::GloballyMinimal, PointTag::GloballyMaximal, PointTag::Clean})
        if (p.has(tag)) {
            static const char* names[] = {"true_inflection",   "minimal",
                                          "maximal",           "globally_minimal",
                                          "globally_maximal",  "clean"};
            tags.push_back(names[static_cast<int>(tag)]);
        }
    j["tags"] = tags;
    if (p.interval) j["interval_end"] = p.intervalEnd;
    return j;
}

inline Json cubicPointJson(const CubicPoint& p) {
    Json j;
    if (p.infinity) {
        j["infinity"] = true;
        return j;
    }
    j["x"] = p.xd;
    j["y"] = p.yd;
    j["exact"] = p.exact;
    if (p.exact) {
        std::ostringstream sx, sy;
        sx << p.x;
        sy << p.y;
        j["x_exact"] = sx.str();
        j["y_exact"] = sy.str();
    }
    return j;
}

}  // namespace detail

struct ReportResult {
    Json json;
    bool anyFailure = false;
};

/// Run everything a config asks for. Golden-count mismatches, applicable
/// theorem failures, and axiom violations set anyFailure.
inline ReportResult runReport(const RunConfig& cfg) {
    ReportResult out;
    Json& j = out.json;
    j["meta"] = {{"schema", 1},
                 {"grid", cfg.grid},
                 {"zero_tolerance", cfg.zeroTol},
                 {"bisection_tolerance", cfg.bisectTol}};

    j["curves"] = Json::array();
    for (const std::string& spec : cfg.curves) {
        const CatalogEntry* entry = findCatalogEntry(spec);
        ClosedCurve curve = resolveCurve(spec);
        CurveAnalysis a = analyzeCurve(curve, cfg.grid);
        Json cj;
        cj["id"] = spec;
        cj["convexity"] = toString(a.convexity);
        cj["noncontractible"] = a.chart.noncontractible;
        cj["all_sextactic"] = a.sextactic.allSextactic;
        cj["counts"] = {{"inflections", a.inflectionCount()},
                        {"true_inflections", a.trueInflectionCount()},
                        {"sextactic", a.sextacticCount()}};
        Json infl = Json::array(), sext = Json::array();
        for (const auto& p : a.inflections) infl.push_back(detail::specialPointJson(p));
        for (const auto& p : a.sextactic.points) sext.push_back(detail::specialPointJson(p));
        cj["inflections"] = infl;
        cj["sextactic"] = sext;
        if (entry) {
            bool match = true;
            const GoldenCounts& g = entry->golden;
            if (g.inflections >= 0 && a.inflectionCount() != g.inflections) match = false;
            if (g.trueInflections >= 0 && a.trueInflectionCount() != g.trueInflections)
                match = false;
            if (g.sextactic >= 0 && !g.allSextactic && a.sextacticCount() != g.sextactic)
                match = false;
            if (g.allSextactic != a.sextactic.allSextactic) match = false;
            if (entry->convexity && a.convexity != *entry->convexity) match = false;
            cj["golden_match"] = match;
            if (!match) out.anyFailure = true;
        }
        // too coarse a grid can merge near-coincident points; say so
        if (cfg.grid < 256)
            cj["resolution_warning"] =
                "grid below 256 may merge near-coincident special points";
        j["curves"].push_back(cj);
    }

    j["theorems"] = Json::array();
    for (const std::string& spec : cfg.curves) {
        ClosedCurve curve = resolveCurve(spec);
        for (const std::string& id : cfg.theorems) {
            VerificationReport r = verifyTheorem(id, curve, spec, cfg.grid);
            Json tj;
            tj["theorem"] = r.theorem;
            tj["curve"] = r.curve;
            tj["applicable"] = r.applicable;
            tj["pass"] = r.pass;
            tj["tight"] = r.tight;
            tj["measured"] = r.measured;
            tj["bound"] = r.bound;
            tj["values"] = r.values;
            tj["witnesses"] = r.witnesses;
            tj["notes"] = r.notes;
            j["theorems"].push_back(tj);
            if (r.applicable && !r.pass) out.anyFailure = true;
        }
    }

    j["axiom_audits"] = Json::array();
    for (const AuditSpec& spec : cfg.audits) {
        ClosedCurve curve = resolveCurve(spec.curve);
        AxiomReport r = auditConicAxioms(curve, CyclicInterval::full(curve.period()), spec.side,
                                         spec.grid);
        Json aj;
        aj["curve"] = spec.curve;
        aj["side"] = toString(spec.side);
        aj["grid"] = spec.grid;
        aj["passed"] = r.passed();
        Json viols = Json::array();
        for (const auto& v : r.violations) viols.push_back({{"axiom", v.axiom},
                                                            {"witness", v.witness}});
        aj["violations"] = viols;
        aj["notes"] = r.notes;
        j["axiom_audits"].push_back(aj);
        if (!r.passed()) out.anyFailure = true;
    }

    j["cubics"] = Json::array();
    for (const CubicSpec& spec : cfg.cubics) {
        Json cj;
        cj["a"] = spec.a;
        cj["b"] = spec.b;
        try {
            WeierstrassCubic cubic(parseRational(spec.a), parseRational(spec.b));
            CubicClassification cl = classifyCubicPoints(cubic);
            cj["discriminant"] = toDouble(cubic.discriminant());
            cj["branches"] = cubic.branches();
            cj["counts"] = {{"inflections", cl.inflections.size()},
                            {"sextactic", cl.sextactic.size()},
                            {"oval_inflections", cl.ovalInflections},
                            {"oval_sextactic", cl.ovalSextactic},
                            {"identity_inflections", cl.identityInflections},
                            {"identity_sextactic", cl.identitySextactic}};
            Json infl = Json::array(), sext = Json::array();
            for (const auto& p : cl.inflections) infl.push_back(detail::cubicPointJson(p));
            for (const auto& p : cl.sextactic) sext.push_back(detail::cubicPointJson(p));
            cj["inflections"] = infl;
            cj["sextactic"] = sext;
        } catch (const SingularCubicError& e) {
            cj["error"] = e.what();
            out.anyFailure = true;
        }
        j["cubics"].push_back(cj);
    }

    return out;
}

}  // namespace osc
