#pragma once

// Inflection and sextactic point detection and classification.
//
// Inflections are the zeros of D(t) = det(g, g', g'') of the unit-norm
// lift: sign changes give odd-order zeros, local minima of |D| under
// refinement give even-order zeros, and runs of vanishing D with infinite
// tangent contact give intervals of inflections.
//
// Sextactic points are found twice over, by independent detectors that
// must agree: zeros of the 6x6 Wronskian of the Veronese lift, and
// critical points of the affine curvature on each inflection-free arc.
// Every hit is verified to have contact >= 6 with its osculating conic.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osculant/conic_fit.hpp"
#include "osculant/contact.hpp"
#include "osculant/curvature.hpp"
#include "osculant/roots.hpp"

namespace osc {

inline constexpr int kDefaultGrid = 4096;

enum class PointKind { Inflection, Sextactic };

enum class PointTag {
    TrueInflection,
    Minimal,
    Maximal,
    GloballyMinimal,
    GloballyMaximal,
    Clean,
};

struct SpecialPoint {
    double t = 0.0;
    PointKind kind = PointKind::Inflection;
    Multiplicity multiplicity;
    std::set<PointTag> tags;
    std::optional<Conic> witness;
    bool interval = false;
    double intervalEnd = 0.0;  // used when interval: support is [t, intervalEnd] cyclically
    std::vector<std::string> diagnostics;

    bool has(PointTag tag) const { return tags.count(tag) > 0; }
};

namespace detail {

inline void sortByParameter(std::vector<SpecialPoint>& pts) {
    std::sort(pts.begin(), pts.end(),
              [](const SpecialPoint& a, const SpecialPoint& b) { return a.t < b.t; });
}

}  // namespace detail

/// All inflection points of the curve: odd-order zeros of D(t) by sign
/// change, even-order zeros by refined |D| minima, and intervals where D
/// vanishes identically reported as single points with interval extent.
inline std::vector<SpecialPoint> findInflections(const ClosedCurve& curve,
                                                 int grid = kDefaultGrid) {
    const double period = curve.period();
    auto D = [&](double t) { return inflectionDeterminant(curve, t); };
    auto dD = [&](double t) { return inflectionDeterminantDerivative(curve, t); };

    GridScan scan = scanPeriodic(D, period, grid);
    std::vector<SpecialPoint> out;
    if (scan.maxAbs == 0.0) {
        // D vanishes identically: the whole curve is an inflection interval
        SpecialPoint p;
        p.kind = PointKind::Inflection;
        p.interval = true;
        p.t = 0.0;
        p.intervalEnd = period;
        p.multiplicity = {0, true};
        p.tags.insert(PointTag::TrueInflection);
        return {p};
    }

    // runs of grid samples inside the zero band, candidates for intervals
    const double band = 1e-9 * scan.maxAbs;
    std::vector<bool> consumed(grid, false);
    std::vector<bool> inBand(grid);
    for (int i = 0; i < grid; ++i) inBand[i] = std::abs(scan.f[i]) < band;
    int start = 0;
    while (start < grid && inBand[(start + grid - 1) % grid]) ++start;  // run boundary
    if (start < grid) {
        int i = start;
        do {
            if (inBand[i]) {
                int len = 0, j = i;
                while (inBand[j] && len < grid) {
                    ++len;
                    j = (j + 1) % grid;
                }
                if (len >= 4) {
                    double mid = wrapParam(scan.t[i] + 0.5 * (len - 1) * period / grid, period);
                    Vec3 tangent = curve.tangentLine(mid);
                    if (lineContactMultiplicity(tangent, curve, mid).infinite) {
                        SpecialPoint p;
                        p.kind = PointKind::Inflection;
                        p.interval = true;
                        p.t = scan.t[i];
                        p.intervalEnd = wrapParam(scan.t[i] + (len - 1) * period / grid, period);
                        p.multiplicity = {0, true};
                        p.tags.insert(PointTag::TrueInflection);
                        out.push_back(p);
                        for (int k = 0, m = i; k < len; ++k, m = (m + 1) % grid)
                            consumed[m] = true;
                    }
                }
                i = j;
            } else {
                i = (i + 1) % grid;
            }
        } while (i != start);
    }

    auto nearConsumed = [&](double t) {
        int idx = static_cast<int>(std::floor(wrapParam(t, period) / period * grid)) % grid;
        return consumed[idx] || consumed[(idx + 1) % grid];
    };

    std::vector<double> odd, even;
    for (double r : periodicSignChangeRoots(D, period, grid, dD))
        if (!nearConsumed(r)) odd.push_back(r);
    for (double r : periodicEvenOrderZeros(D, period, grid))
        if (!nearConsumed(r)) even.push_back(r);
    odd = dedupCyclic(odd, period, 1e-8 * period);
    for (double r : even) {
        bool nearOdd = false;
        for (double o : odd)
            if (cyclicDistance(r, o, period) < 2.0 * period / grid) nearOdd = true;
        if (nearOdd) continue;
        odd.push_back(r);  // reuse the container for the merged list
    }

    for (double r : dedupCyclic(odd, period, 1e-8 * period)) {
        SpecialPoint p;
        p.kind = PointKind::Inflection;
        p.t = r;
        Vec3 tangent = curve.tangentLine(r);
        Multiplicity contact = lineContactMultiplicity(tangent, curve, r);
        if (contact.infinite) {
            p.multiplicity = {0, true};
        } else if (contact.value < 3) {
            continue;  // not actually an inflection; grid artifact
        } else {
            p.multiplicity = {contact.value - 2, false};
        }
        // true iff D changes sign, cross-checked against contact parity
        double h = 0.5 * period / grid;
        bool signChange = (D(r - h) > 0) != (D(r + h) > 0);
        if (signChange) p.tags.insert(PointTag::TrueInflection);
        if (!contact.infinite && (contact.value % 2 == 1) != signChange)
            p.diagnostics.push_back("inflection parity mismatch at t=" + std::to_string(r));
        out.push_back(p);
    }
    detail::sortByParameter(out);
    return out;
}

/// 6x6 Wronskian of the Veronese lift, Hadamard-normalized (each row of
/// derivative order 0..5 scaled to unit norm) so that "W vanishes" is a
/// scale-free statement.
inline double sextacticWronskian(const ClosedCurve& curve, double t) {
    std::array<Jet, 6> v = veroneseJets(curve, t, 5);
    Eigen::Matrix<double, 6, 6> m;
    for (int i = 0; i < 6; ++i)
        for (int c = 0; c < 6; ++c) m(i, c) = v[c].derivative(i);
    for (int i = 0; i < 6; ++i) {
        double n = m.row(i).norm();
        if (n > 0) m.row(i) /= n;
    }
    return m.determinant();
}

struct SextacticScan {
    bool allSextactic = false;  // W identically zero: the curve is a conic
    std::vector<SpecialPoint> points;
    std::vector<std::string> diagnostics;
};

namespace detail {

/// Critical points of affine curvature on an open arc (a, b), found by
/// sign changes of a central-difference derivative of kappa.
inline std::vector<double> curvatureCriticalPoints(const ClosedCurve& curve, double a, double len,
                                                   int grid) {
    const double period = curve.period();
    const double h = 1e-5 * period;
    auto dkappa = [&](double t) {
        return (affineCurvature(curve, t + h) - affineCurvature(curve, t - h)) / (2 * h);
    };
    int n = std::max(16, static_cast<int>(std::ceil(grid * len / period)));
    std::vector<double> roots;
    double prevT = 0.0, prevF = 0.0;
    bool havePrev = false;
    for (int i = 0; i <= n; ++i) {
        double t = a + len * i / n;
        double f;
        try {
            f = dkappa(t);
        } catch (const InflectionCurvatureError&) {
            havePrev = false;
            continue;
        }
        if (f == 0.0) {
            roots.push_back(wrapParam(t, period));
        } else if (havePrev && (f > 0) != (prevF > 0) && prevF != 0.0) {
            double r = bisectRoot([&](double s) { return dkappa(s); }, prevT, t, prevF);
            roots.push_back(wrapParam(r, period));
        }
        prevT = t;
        prevF = f;
        havePrev = true;
    }
    return roots;
}

}  // namespace detail

/// Sextactic points by dual detection: Wronskian zeros and affine
/// curvature critical points, merged, with contact >= 6 verified against
/// the osculating conic at every accepted parameter.
inline SextacticScan findSextactic(const ClosedCurve& curve, int grid = kDefaultGrid) {
    const double period = curve.period();
    SextacticScan result;

    auto W = [&](double t) { return sextacticWronskian(curve, t); };
    GridScan scan = scanPeriodic(W, period, grid);
    if (scan.maxAbs < 1e-8) {
        result.allSextactic = true;
        return result;
    }

    std::vector<SpecialPoint> inflections = findInflections(curve, grid);
    const double buffer = 3.0 * period / grid;
    auto nearInflection = [&](double t) {
        for (const auto& p : inflections) {
            if (p.interval) {
                CyclicInterval iv{p.t, p.intervalEnd, period};
                if (iv.contains(t) || cyclicDistance(t, p.t, period) < buffer ||
                    cyclicDistance(t, p.intervalEnd, period) < buffer)
                    return true;
            } else if (cyclicDistance(t, p.t, period) < buffer) {
                return true;
            }
        }
        return false;
    };

    // detector (a): zeros of the Wronskian
    const double hW = 1e-6 * period;
    auto dW = [&](double t) { return (W(t + hW) - W(t - hW)) / (2 * hW); };
    std::vector<double> wroots;
    for (double r : periodicSignChangeRoots(W, period, grid, dW))
        if (!nearInflection(r)) wroots.push_back(r);
    for (double r : periodicEvenOrderZeros(W, period, grid))
        if (!nearInflection(r)) wroots.push_back(r);
    wroots = dedupCyclic(wroots, period, 2.0 * period / grid);

    // detector (b): critical points of affine curvature per arc
    std::vector<double> kroots;
    std::vector<double> cuts;
    for (const auto& p : inflections) {
        cuts.push_back(p.t);
        if (p.interval) cuts.push_back(p.intervalEnd);
    }
    if (cuts.empty()) {
        // no inflections: one full-circle sweep, endpoints inclusive, so
        // the wrap-around cell is covered
        kroots = detail::curvatureCriticalPoints(curve, 0.0, period, grid);
    } else {
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i < cuts.size(); ++i) {
            double a = cuts[i];
            double b = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + period;
            double len = b - a;
            if (len <= 2 * buffer) continue;
            auto found =
                detail::curvatureCriticalPoints(curve, a + buffer, len - 2 * buffer, grid);
            kroots.insert(kroots.end(), found.begin(), found.end());
        }
    }
    kroots = dedupCyclic(kroots, period, 2.0 * period / grid);

    // merge: every accepted point should be seen by both detectors
    const double agreeTol = 1e-6;
    std::vector<double> merged;
    std::vector<bool> kMatched(kroots.size(), false);
    for (double w : wroots) {
        bool matched = false;
        for (size_t i = 0; i < kroots.size(); ++i) {
            if (cyclicDistance(w, kroots[i], period) < agreeTol) {
                kMatched[i] = true;
                matched = true;
            }
        }
        if (!matched)
            result.diagnostics.push_back("Wronskian-only detection at t=" + std::to_string(w));
        merged.push_back(w);  // keep the polished Wronskian root as the location
    }
    for (size_t i = 0; i < kroots.size(); ++i) {
        if (kMatched[i]) continue;
        result.diagnostics.push_back("curvature-only detection at t=" + std::to_string(kroots[i]));
        merged.push_back(kroots[i]);
    }
    merged = dedupCyclic(merged, period, agreeTol);

    for (double t : merged) {
        SpecialPoint p;
        p.kind = PointKind::Sextactic;
        p.t = t;
        try {
            Conic witness = osculatingConic(curve, t);
            Multiplicity m = intersectionMultiplicity(witness, curve, t);
            if (!m.atLeast(6)) {
                result.diagnostics.push_back("contact below 6 at candidate t=" +
                                             std::to_string(t) + ", dropped");
                continue;
            }
            p.multiplicity = m;
            p.witness = witness;
        } catch (const std::runtime_error& e) {
            result.diagnostics.push_back(std::string("candidate t=") + std::to_string(t) +
                                         " rejected: " + e.what());
            continue;
        }
        result.points.push_back(p);
    }
    detail::sortByParameter(result.points);
    return result;
}

/// Fill the classification tags of a sextactic point from the sign of
/// Q(gamma(t)) near the point and over the whole curve, plus the
/// connectivity of the near-zero set (clean).
inline SpecialPoint classifySextactic(const ClosedCurve& curve, SpecialPoint s,
                                      int grid = kDefaultGrid) {
    if (s.kind != PointKind::Sextactic || !s.witness)
        throw std::invalid_argument("classify_sextactic needs a sextactic point with witness");
    const double period = curve.period();
    const Conic& q = *s.witness;
    auto qa = [&](double t) { return q.evaluate(curve.point(t).homogeneous()); };

    // full refined sample at 4x the detection grid
    const int n = 4 * grid;
    std::vector<double> val(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        val[i] = qa(period * i / n);
        scale = std::max(scale, std::abs(val[i]));
    }
    if (scale == 0.0) {
        s.diagnostics.push_back("witness conic contains the whole curve");
        return s;
    }

    // local tag: first definite sign on each side of the contact point
    const double step = period / n;
    const double noise = std::max(1e-14, 1e-9 * scale);
    auto sideSign = [&](double dir) -> int {
        double first = 0.0;
        int sign = 0;
        for (int i = 1; i <= n / 10; ++i) {
            double v = qa(s.t + dir * i * step);
            if (std::abs(v) > noise) {
                sign = v > 0 ? 1 : -1;
                first = i * step;
                break;
            }
        }
        if (sign == 0) return 0;
        for (double d = first; d <= 3 * first; d += step) {
            double v = qa(s.t + dir * d);
            if (std::abs(v) > noise && (v > 0 ? 1 : -1) != sign) return 0;
        }
        return sign;
    };
    int sl = sideSign(-1.0), sr = sideSign(+1.0);
    if (sl == 0 || sr == 0) {
        s.diagnostics.push_back("local sign indeterminate at tolerance; local tag withheld");
    } else if (sl != sr) {
        s.diagnostics.push_back("curve crosses witness conic; neither minimal nor maximal");
    } else if (sl > 0) {
        s.tags.insert(PointTag::Maximal);  // arc inside the conic (positive side)
    } else {
        s.tags.insert(PointTag::Minimal);  // arc outside the conic
    }

    // global tags
    double lo = *std::min_element(val.begin(), val.end());
    double hi = *std::max_element(val.begin(), val.end());
    if (lo >= -1e-9 * scale) s.tags.insert(PointTag::GloballyMaximal);
    if (hi <= 1e-9 * scale) s.tags.insert(PointTag::GloballyMinimal);
    if (s.has(PointTag::GloballyMaximal) && !s.has(PointTag::Maximal))
        s.diagnostics.push_back("invariant strain: globally maximal without local maximal tag");
    if (s.has(PointTag::GloballyMinimal) && !s.has(PointTag::Minimal))
        s.diagnostics.push_back("invariant strain: globally minimal without local minimal tag");

    // clean: the near-zero set of Q along the curve is connected
    std::vector<bool> nearZero(n);
    for (int i = 0; i < n; ++i) nearZero[i] = std::abs(val[i]) < 1e-8 * scale;
    int components = 0;
    for (int i = 0; i < n; ++i)
        if (nearZero[i] && !nearZero[(i + n - 1) % n]) ++components;
    if (components <= 1) s.tags.insert(PointTag::Clean);
    return s;
}

struct CurvatureProfile {
    struct Sample {
        double t;
        double kappa;
    };
    struct Extremum {
        double t;
        double kappa;
        bool isMax;
    };
    std::vector<std::vector<Sample>> arcs;  // one sampled run per inflection-free arc
    std::vector<Extremum> extrema;
    double kappaMax = 0.0;
    double kappaMin = 0.0;
    bool hasValues = false;
};

/// Sampled affine curvature with gaps at inflection parameters and
/// refined local extrema per arc.
inline CurvatureProfile curvatureProfile(const ClosedCurve& curve, int grid = kDefaultGrid) {
    const double period = curve.period();
    std::vector<SpecialPoint> inflections = findInflections(curve, grid);
    CurvatureProfile prof;

    std::vector<double> cuts;
    for (const auto& p : inflections) {
        cuts.push_back(p.t);
        if (p.interval) cuts.push_back(p.intervalEnd);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<std::pair<double, double>> spans;  // (start, length)
    const double buffer = 2.0 * period / grid;
    if (cuts.empty()) {
        spans.push_back({0.0, period});
    } else {
        for (size_t i = 0; i < cuts.size(); ++i) {
            double a = cuts[i];
            double b = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + period;
            if (b - a > 2 * buffer) spans.push_back({a + buffer, b - a - 2 * buffer});
        }
    }

    for (auto [a, len] : spans) {
        int n = std::max(8, static_cast<int>(std::ceil(grid * len / period)));
        std::vector<CurvatureProfile::Sample> arc;
        for (int i = 0; i <= n; ++i) {
            double t = a + len * i / n;
            try {
                double k = affineCurvature(curve, t);
                arc.push_back({wrapParam(t, period), k});
                if (!prof.hasValues || k > prof.kappaMax) prof.kappaMax = k;
                if (!prof.hasValues || k < prof.kappaMin) prof.kappaMin = k;
                prof.hasValues = true;
            } catch (const InflectionCurvatureError&) {
            }
        }
        // refine interior local extrema of the sampled run
        for (size_t i = 1; i + 1 < arc.size(); ++i) {
            bool isMax = arc[i].kappa > arc[i - 1].kappa && arc[i].kappa > arc[i + 1].kappa;
            bool isMin = arc[i].kappa < arc[i - 1].kappa && arc[i].kappa < arc[i + 1].kappa;
            if (!isMax && !isMin) continue;
            double lo = a + len * (double(i) - 1) / n, hi = a + len * (double(i) + 1) / n;
            auto negk = [&](double t) { return -affineCurvature(curve, t); };
            auto posk = [&](double t) { return affineCurvature(curve, t); };
            double r = isMax ? goldenMinimize(negk, lo, hi, 1e-10)
                             : goldenMinimize(posk, lo, hi, 1e-10);
            double k = affineCurvature(curve, r);
            prof.extrema.push_back({wrapParam(r, period), k, isMax});
            if (k > prof.kappaMax) prof.kappaMax = k;
            if (k < prof.kappaMin) prof.kappaMin = k;
        }
        prof.arcs.push_back(std::move(arc));
    }
    return prof;
}

}  // namespace osc
