#pragma once

// Shrinking-interval search for sextactic points, driven by the diagonal
// members of an intrinsic conic system.  For each parameter c the side's
// extremal conic through (c, c) osculates the curve at c (contact 4) and
// binds somewhere else; the signed offset from c to the nearest other
// binding tangency changes sign exactly when that tangency collides with
// c, and at the collision the support collapses to a single cluster of
// contact >= 6: a sextactic point whose osculating conic lies globally on
// the requested side of the curve.

#include <optional>

#include "osculant/axioms.hpp"
#include "osculant/special_points.hpp"

namespace osc {

/// The bracket hypotheses do not hold at tolerance.
class KneserPreconditionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The sweep found no parameter with connected six-contact support.
class KneserSearchError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KneserResult {
    double c = 0.0;
    ContactDivisor divisor;  // divisor of the witness conic: connected, contact >= 6 at c
    std::vector<std::string> diagnostics;
};

namespace detail {

/// One evaluation of the collision functional: the diagonal divisor at c
/// plus the signed offset to its nearest support point other than c.
struct DiagonalProbe {
    ContactDivisor divisor;
    bool collapsed = false;  // support is a single cluster at c, contact >= 6
    double psi = 0.0;        // signed offset to the nearest other tangency
};

inline DiagonalProbe probeDiagonal(const ClosedCurve& curve, double c, ConicSide side, int grid) {
    const double period = curve.period();
    DiagonalProbe pr;
    pr.divisor = systemDivisor(curve, c, c, side, grid);
    const ContactDivisor& d = pr.divisor;
    if (d.wholeCurve) {
        pr.collapsed = true;
        return pr;
    }
    int atC = d.valueAt(c, period);
    double bestAbs = std::numeric_limits<double>::infinity();
    for (const auto& e : d.entries) {
        double reps[2] = {e.t, e.isInterval ? e.tEnd : e.t};
        for (double r : reps) {
            if (cyclicDistance(r, c, period) < 1e-9) continue;  // c's own anchor
            double off = cyclicOffset(c, r, period);
            if (std::abs(off) < bestAbs) {
                bestAbs = std::abs(off);
                pr.psi = off;
            }
        }
    }
    if (!std::isfinite(bestAbs)) {
        pr.collapsed = true;  // support is exactly {c}
        return pr;
    }
    // contact >= 6 concentrated at c (infinite reads as -1)
    if (atC < 0 || atC >= 6) pr.collapsed = true;
    return pr;
}

/// A verified one-sided sextactic point near a collision hint.  The
/// extremal solver works at tolerance, so near a sextactic point its
/// member grazes the curve and the divisor smears the six-fold contact
/// over satellite near-tangencies; the collision location is therefore
/// only coarse.  Polish it to the local zero of the order-five Wronskian
/// and verify the osculating conic there directly: contact >= 6 and the
/// whole curve on the requested side.
struct OneSidedSextactic {
    double c = 0.0;
    Conic witness;
    Multiplicity mult;
    ContactDivisor divisor;  // divisor of the witness conic
};

inline std::optional<OneSidedSextactic> polishCollision(const ClosedCurve& curve, double hint,
                                                        ConicSide side, int grid,
                                                        std::vector<std::string>& diags) {
    const double period = curve.period();
    const double pad = 0.02 * period;
    auto W = [&](double t) { return sextacticWronskian(curve, t); };

    // nearest Wronskian sign change inside the hint window
    const int n = 64;
    double best = std::numeric_limits<double>::quiet_NaN();
    double bestDist = std::numeric_limits<double>::infinity();
    double prevT = hint - pad, prevW = W(prevT);
    for (int i = 1; i <= n; ++i) {
        double t = hint - pad + 2 * pad * i / n;
        double w = W(t);
        if (prevW != 0.0 && w != 0.0 && (w > 0) != (prevW > 0)) {
            double r = bisectRoot(W, prevT, t, prevW);
            if (std::abs(r - hint) < bestDist) {
                bestDist = std::abs(r - hint);
                best = r;
            }
        }
        prevT = t;
        prevW = w;
    }
    if (!std::isfinite(best)) {
        diags.push_back(fmt("collision hint t=%.6f: no Wronskian zero within %.4f", hint, pad));
        return std::nullopt;
    }

    OneSidedSextactic out;
    out.c = wrapParam(best, period);
    out.witness = osculatingConic(curve, out.c);
    out.mult = intersectionMultiplicity(out.witness, curve, out.c);
    if (!out.mult.atLeast(6)) {
        diags.push_back(fmt("collision hint t=%.6f: contact only %d at the polished point", hint,
                            out.mult.value));
        return std::nullopt;
    }

    // the osculating conic must sit globally on the requested side
    const int ns = 4 * grid;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < ns; ++i) {
        double v = out.witness.evaluate(curve.point(period * i / ns).homogeneous());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double scale = std::max(std::abs(lo), std::abs(hi));
    bool oneSided = side == ConicSide::Inscribed ? hi <= 1e-8 * scale : lo >= -1e-8 * scale;
    if (!oneSided) {
        diags.push_back(fmt("collision hint t=%.6f: witness at t=%.9f is not globally %s "
                            "(Q range [%.3e, %.3e])",
                            hint, out.c, toString(side), lo, hi));
        return std::nullopt;
    }

    out.divisor = contactDivisor(curve, out.witness, grid, {out.c});
    out.divisor.p = out.divisor.q = out.c;
    return out;
}


}  // namespace detail

/// Search the open interval (a, b) for a parameter whose diagonal extremal
/// conic has connected support with contact >= 6 — a sextactic point with a
/// one-sided osculating conic.  Preconditions (checked at tolerance): the
/// divisor of the pair (a, b) equals a diagonal divisor at one endpoint,
/// and its support avoids the open interval.
inline KneserResult kneserSearch(const ClosedCurve& curve, ConicSide side, double a, double b,
                                 int grid = 1024) {
    const double period = curve.period();
    a = wrapParam(a, period);
    b = wrapParam(b, period);
    const double len = forwardDistance(a, b, period);
    const double tolP = 1e-3 * period;
    if (len <= 4 * tolP || cyclicDistance(a, b, period) < tolP)
        throw KneserPreconditionError("bracket (a, b) is degenerate at tolerance");

    KneserResult res;

    ContactDivisor dab =
        detail::absorbGrazeSatellites(curve, systemDivisor(curve, a, b, side, grid));
    if (dab.wholeCurve) {
        // the curve is a conic: every parameter qualifies trivially
        res.c = wrapParam(a + 0.5 * len, period);
        res.divisor = systemDivisor(curve, res.c, res.c, side, grid);
        res.diagnostics.push_back("bracket divisor covers the whole curve; every point qualifies");
        return res;
    }

    // hypothesis: f_{a,b} equals the diagonal divisor at a or at b
    ContactDivisor daa =
        detail::absorbGrazeSatellites(curve, systemDivisor(curve, a, a, side, grid));
    bool eqA = divisorEquals(dab, daa, period, tolP);
    bool eqB = false;
    if (!eqA) {
        ContactDivisor dbb =
            detail::absorbGrazeSatellites(curve, systemDivisor(curve, b, b, side, grid));
        eqB = divisorEquals(dab, dbb, period, tolP);
    }
    if (!eqA && !eqB)
        throw KneserPreconditionError(
            "bracket divisor differs from the diagonal divisors at both endpoints");

    // hypothesis: the support of f_{a,b} avoids the open interval (a, b)
    CyclicInterval inner{wrapParam(a + tolP, period), wrapParam(b - tolP, period), period};
    for (const auto& e : dab.entries) {
        bool inside;
        if (e.isInterval) {
            CyclicInterval cover{e.t, e.tEnd, period};
            inside = inner.contains(e.t) || inner.contains(e.tEnd) || cover.contains(inner.a);
        } else {
            inside = inner.contains(e.t);
        }
        if (inside)
            throw KneserPreconditionError("bracket divisor has support at t=" +
                                          std::to_string(e.t) + " inside (a, b)");
    }

    // sweep the collision functional over the open interval; the sweep
    // works in unwrapped coordinates [a, a + len] so bisection brackets
    // stay ordered across the period seam
    const int m = 24;
    auto sample = [&](int i) { return a + len * (i + 1) / (m + 1); };

    auto verify = [&](double hint) -> std::optional<KneserResult> {
        auto hit = detail::polishCollision(curve, hint, side, grid, res.diagnostics);
        if (!hit) return std::nullopt;
        bool connected = hit->divisor.wholeCurve || hit->divisor.components() == 1;
        bool insideAB = CyclicInterval{a, b, period}.strictlyContains(hit->c);
        if (!connected || !insideAB) {
            res.diagnostics.push_back(detail::fmt(
                "candidate t=%.9f rejected: %d support components%s", hit->c,
                hit->divisor.components(), insideAB ? "" : ", outside the bracket"));
            return std::nullopt;
        }
        KneserResult r;
        r.c = hit->c;
        r.divisor = std::move(hit->divisor);
        r.diagnostics = res.diagnostics;
        return r;
    };

    double prevT = 0.0, prevPsi = 0.0;
    bool havePrev = false;
    for (int i = 0; i < m; ++i) {
        double t = sample(i);
        detail::DiagonalProbe pr = detail::probeDiagonal(curve, wrapParam(t, period), side, grid);
        if (pr.collapsed) {
            if (auto r = verify(wrapParam(t, period))) return *r;
            havePrev = false;
            continue;
        }
        if (havePrev && (pr.psi > 0) != (prevPsi > 0)) {
            // bisect the sign change of the collision offset
            double lo = prevT, hi = t, flo = prevPsi;
            double hit = std::numeric_limits<double>::quiet_NaN();
            for (int it = 0; it < 32 && hi - lo > 1e-4 * period; ++it) {
                double mid = 0.5 * (lo + hi);
                detail::DiagonalProbe pm =
                    detail::probeDiagonal(curve, wrapParam(mid, period), side, grid);
                if (pm.collapsed) {
                    hit = mid;
                    break;
                }
                ((pm.psi > 0) == (flo > 0) ? lo : hi) = mid;
            }
            if (!std::isfinite(hit)) hit = 0.5 * (lo + hi);
            if (auto r = verify(wrapParam(hit, period))) return *r;
        }
        prevT = t;
        prevPsi = pr.psi;
        havePrev = true;
    }
    std::string extra = res.diagnostics.empty() ? "" : ("; " + res.diagnostics.back());
    throw KneserSearchError(
        "no parameter with connected six-contact support found in the bracket" + extra);
}

struct GlobalSextacticScan {
    bool allSextactic = false;  // the curve is a conic
    std::vector<SpecialPoint> points;
    std::vector<std::string> diagnostics;
};

/// Sextactic points whose osculating conic lies globally on one side of
/// the curve: at least three with a globally inscribed witness and three
/// with a globally circumscribed one, or a hard failure.  Locations come
/// from a full-circle sweep of the diagonal collision functional and are
/// cross-checked against the Wronskian/curvature detector within 1e-6.
inline GlobalSextacticScan findGlobalSextactic(const ClosedCurve& curve, int grid = kDefaultGrid) {
    const double period = curve.period();
    GlobalSextacticScan out;

    SextacticScan base = findSextactic(curve, grid);
    if (base.allSextactic) {
        out.allSextactic = true;
        return out;
    }

    const int divisorGrid = 1024;
    const int m = 96;
    for (ConicSide side : {ConicSide::Inscribed, ConicSide::Circumscribed}) {
        const PointTag globalTag =
            side == ConicSide::Inscribed ? PointTag::GloballyMinimal : PointTag::GloballyMaximal;
        std::vector<double> hints;
        auto push = [&](double c) {
            c = wrapParam(c, period);
            for (double r : hints)
                if (cyclicDistance(r, c, period) < 1e-3 * period) return;
            hints.push_back(c);
        };

        std::vector<double> ts(m), psi(m);
        std::vector<bool> collapsed(m);
        for (int i = 0; i < m; ++i) {
            ts[i] = period * i / m;
            detail::DiagonalProbe pr = detail::probeDiagonal(curve, ts[i], side, divisorGrid);
            collapsed[i] = pr.collapsed;
            psi[i] = pr.psi;
            if (pr.collapsed) push(ts[i]);
        }
        for (int i = 0; i < m; ++i) {
            int j = (i + 1) % m;
            if (collapsed[i] || collapsed[j]) continue;
            if ((psi[i] > 0) == (psi[j] > 0)) continue;
            double lo = ts[i];
            double hi = (j == 0) ? ts[i] + period / m : ts[j];
            double flo = psi[i];
            double hit = std::numeric_limits<double>::quiet_NaN();
            for (int it = 0; it < 32 && hi - lo > 1e-4 * period; ++it) {
                double mid = 0.5 * (lo + hi);
                detail::DiagonalProbe pm =
                    detail::probeDiagonal(curve, wrapParam(mid, period), side, divisorGrid);
                if (pm.collapsed) {
                    hit = mid;
                    break;
                }
                ((pm.psi > 0) == (flo > 0) ? lo : hi) = mid;
            }
            if (!std::isfinite(hit)) hit = 0.5 * (lo + hi);
            push(hit);
        }

        int kept = 0;
        std::vector<double> accepted;
        for (double hint : hints) {
            auto hit = detail::polishCollision(curve, hint, side, divisorGrid, out.diagnostics);
            if (!hit) continue;
            bool dup = false;
            for (double r : accepted) dup = dup || cyclicDistance(r, hit->c, period) < 1e-6;
            if (dup) continue;

            // cross-check against the independent detector
            double match = std::numeric_limits<double>::infinity();
            for (const SpecialPoint& s : base.points)
                match = std::min(match, cyclicDistance(s.t, hit->c, period));
            if (match > 1e-6) {
                out.diagnostics.push_back(detail::fmt(
                    "%s collision at t=%.9f has no detector partner within 1e-6 "
                    "(nearest at distance %.3e)",
                    toString(side), hit->c, match));
                continue;
            }

            SpecialPoint p;
            p.kind = PointKind::Sextactic;
            p.t = hit->c;
            p.multiplicity = hit->mult;
            p.witness = hit->witness;
            p = classifySextactic(curve, p, grid);
            if (!p.has(globalTag)) {
                out.diagnostics.push_back(detail::fmt(
                    "%s collision at t=%.9f lost its global one-sidedness under reclassification",
                    toString(side), hit->c));
                continue;
            }
            accepted.push_back(hit->c);
            out.points.push_back(std::move(p));
            ++kept;
        }
        if (kept < 3)
            throw KneserSearchError(detail::fmt(
                "only %d %s globally one-sided sextactic points found (need 3)", kept,
                toString(side)));
    }
    detail::sortByParameter(out.points);
    return out;
}

}  // namespace osc
