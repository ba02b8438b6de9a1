#pragma once

// Built-in curve catalog: named example curves with frozen expected counts
// (where established) and expected convexity classes. Entries provide the
// DSL source so every consumer goes through the same parser.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "osculant/convexity.hpp"
#include "osculant/curve.hpp"

namespace osc {

/// Expected detection results; -1 means "not asserted".
struct GoldenCounts {
    int inflections = -1;
    int trueInflections = -1;
    int sextactic = -1;
    bool allSextactic = false;  // conics: the detector reports a flag, not a list
};

struct CatalogEntry {
    std::string id;
    std::string source;  // curve DSL
    std::string description;
    GoldenCounts golden;
    std::optional<Convexity> convexity;

    ClosedCurve curve() const { return parseCurve(source); }
};

inline std::string flowerSource(int k, double eps) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "x=(1+%.6g*cos(%d*t))*cos(t); y=(1+%.6g*cos(%d*t))*sin(t)", eps, k, eps, k);
    return buf;
}

inline std::string ellipseSource(double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "x=%.6g*cos(t); y=%.6g*sin(t)", a, b);
    return buf;
}

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;

        v.push_back({"b1",
                     "x = sin(t)*cos(t)/(sin(t)^2+9*cos(t)^6)\n"
                     "y = -3*cos(t)^4/(sin(t)^2+9*cos(t)^6)\n"
                     "period = pi",
                     "inverse of t + 3i/(1+t^2) in the complex plane, compactified by t = tan",
                     {3, 2, 3, false},
                     Convexity::NonConvex});
        v.push_back({"b2", "x=(cos(2*t)+5)*cos(t); y=(cos(2*t)+5)*sin(t)",
                     "convex quartic-like oval with two non-true inflections",
                     {2, 0, 2, false},
                     Convexity::Convex});
        v.push_back({"b3", "x=(3+2*cos(t))*cos(t); y=(3+2*cos(t))*sin(t)",
                     "non-convex limacon r = 3 + 2 cos t",
                     {2, 2, 4, false},
                     Convexity::NonConvex});
        v.push_back({"b4", "x=(2+cos(t))*cos(t); y=(2+cos(t))*sin(t)",
                     "convex limacon r = 2 + cos t with a single inflection",
                     {1, -1, 3, false},
                     Convexity::Convex});

        v.push_back({"circle", "x=cos(t); y=sin(t)", "unit circle: every point is sextactic",
                     {0, 0, 0, true},
                     Convexity::StrictlyConvex});
        v.push_back({"ellipse-2-1", ellipseSource(2, 1),
                     "ellipse with semi-axes 2 and 1: every point is sextactic",
                     {0, 0, 0, true},
                     Convexity::StrictlyConvex});
        v.push_back({"ellipse-3-2", ellipseSource(3, 2),
                     "ellipse with semi-axes 3 and 2: every point is sextactic",
                     {0, 0, 0, true},
                     Convexity::StrictlyConvex});

        // flowers r = 1 + eps cos(k t); strictly convex iff eps (k^2+1) < 1,
        // with zero-curvature boundary cases left unasserted
        // Euclidean curvature at a valley is proportional to
        // (1 - eps)(1 - (k^2+1) eps): strictly convex below eps = 1/(k^2+1),
        // k double-zero inflections at the boundary, 2k true inflections above
        struct F {
            int k;
            double eps;
            const char* eps_s;
            int infl, trueInfl;
            int sext;  // -1 when not frozen
            std::optional<Convexity> conv;
        };
        const F flowers[] = {
            {2, 0.05, "0.05", 0, 0, 8, Convexity::StrictlyConvex},
            {2, 0.1, "0.1", 0, 0, -1, Convexity::StrictlyConvex},
            {2, 0.2, "0.2", 2, 0, -1, std::nullopt},  // boundary: valleys flatten
            {3, 0.05, "0.05", 0, 0, 12, Convexity::StrictlyConvex},
            {3, 0.1, "0.1", 3, 0, -1, std::nullopt},  // boundary: valleys flatten
            {3, 0.2, "0.2", 6, 6, -1, Convexity::NonConvex},
            {4, 0.05, "0.05", 0, 0, 16, Convexity::StrictlyConvex},
            {4, 0.1, "0.1", 8, 8, -1, Convexity::NonConvex},
            {4, 0.2, "0.2", 8, 8, -1, Convexity::NonConvex},
        };
        for (const F& f : flowers) {
            char id[48];
            std::snprintf(id, sizeof id, "flower-%d-%s", f.k, f.eps_s);
            char desc[64];
            std::snprintf(desc, sizeof desc, "flower r = 1 + %s cos(%d t)", f.eps_s, f.k);
            v.push_back({id, flowerSource(f.k, f.eps), desc,
                         {f.infl, f.trueInfl, f.sext, false}, f.conv});
        }

        v.push_back({"cubic-oval",
                     "x=-0.5+0.5*cos(t); y=0.5*sin(t)*sqrt(1.5-0.5*cos(t))",
                     "traced oval of the cubic y^2 = x^3 - x",
                     {0, 0, 6, false},
                     Convexity::StrictlyConvex});
        return v;
    }();
    return entries;
}

inline const CatalogEntry* findCatalogEntry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return &e;
    return nullptr;
}

/// Resolve a curve argument: a catalog id, a path to a DSL file, or
/// inline DSL text.
inline ClosedCurve resolveCurve(const std::string& spec) {
    if (const CatalogEntry* e = findCatalogEntry(spec)) return e->curve();
    if (std::ifstream in(spec); in) {
        std::ostringstream body;
        body << in.rdbuf();
        return parseCurve(body.str());
    }
    if (spec.find('=') != std::string::npos) return parseCurve(spec);
    throw CurveError("unknown curve '" + spec + "': not a catalog id, file, or DSL text");
}

}  // namespace osc
