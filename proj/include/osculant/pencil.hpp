#pragma once

// Tangent conic pencils and the extremal inscribed/circumscribed members.
//
// For p != q the pencil is spanned by the tangent-line product L_p L_q
// and the squared chord M^2; for p = q by the osculating conic and the
// squared tangent L_p^2. The raw combination Q_lambda = Q0 - lambda Q1
// evaluated along the curve is pointwise nonincreasing in lambda (Q1 is
// a square), so containment is a monotone predicate and bisection on
// lambda is valid toward either end. Sign conventions live in the
// quadratics, never in the lines: homogeneous lift signs are not
// consistent along the curve, so a linear form has no well-defined
// curve side, but the line product does and is canonicalized positive
// along the curve. Which lambda end is the inscribed member still
// depends on the base conic's sign structure (the osculating conic of
// the four-contact pencil crosses the curve), so the solved member is
// verified against the requested geometric side via the normalized
// conic, whose positive side is always the disk, and the opposite end
// is used if it faces the other way.
//
// The contact divisor of a noncrossing conic records the support of
// Q(gamma) with intersection multiplicities: these are the multiplicity
// functions f of the intrinsic conic systems.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "osculant/special_points.hpp"

namespace osc {

using Vec6 = Eigen::Matrix<double, 6, 1>;

struct PencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContainmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ConicSide { Inscribed, Circumscribed };

inline const char* toString(ConicSide s) {
    return s == ConicSide::Inscribed ? "inscribed" : "circumscribed";
}

namespace detail {

inline Vec6 lineSquaredCoefficients(const Vec3& l) {
    Vec6 c;
    c << l[0] * l[0], 2 * l[0] * l[1], l[1] * l[1], 2 * l[0] * l[2], 2 * l[1] * l[2], l[2] * l[2];
    return c;
}

inline Vec6 linePairCoefficients(const Vec3& a, const Vec3& b) {
    Vec6 c;
    c << a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1], a[0] * b[2] + a[2] * b[0],
        a[1] * b[2] + a[2] * b[1], a[2] * b[2];
    return c;
}

}  // namespace detail

class ConicPencil {
  public:
    enum class Kind { Bitangent, FourContact };

    Kind kind = Kind::Bitangent;
    double p = 0.0, q = 0.0;
    Vec6 q0 = Vec6::Zero();  // base member
    Vec6 q1 = Vec6::Zero();  // squared line, nonnegative along any curve

    Vec6 rawMember(double lambda) const { return q0 - lambda * q1; }
    Conic member(double lambda) const { return Conic::fromCoefficients(rawMember(lambda)); }
};

/// Build the pencil of conics tangent to the curve at p and q (contact
/// >= 2 at each), or with contact >= 4 at p when p = q.
inline ConicPencil tangentPencil(const ClosedCurve& curve, double p, double q) {
    const double period = curve.period();
    ConicPencil pencil;
    pencil.p = p;
    pencil.q = q;

    if (cyclicDistance(p, q, period) < 1e-12) {
        double mu;
        try {
            mu = affineCurvature(curve, p);
        } catch (const InflectionCurvatureError&) {
            throw PencilError("four-contact pencil undefined at inflection parameter");
        }
        if (std::abs(mu) > 1e6)
            throw PencilError("osculating conic blows up near inflection (|curvature| > 1e6)");
        pencil.kind = ConicPencil::Kind::FourContact;
        pencil.q0 = osculatingConic(curve, p).coefficients();
        Vec3 lp = curve.tangentLine(p);
        pencil.q1 = detail::lineSquaredCoefficients(lp / lp.norm());
    } else {
        pencil.kind = ConicPencil::Kind::Bitangent;
        Vec3 lp = curve.tangentLine(p).normalized();
        Vec3 lq = curve.tangentLine(q).normalized();
        if (lp.cross(lq).norm() < 1e-9)
            throw PencilError("degenerate pencil: coincident tangent lines");
        pencil.q0 = detail::linePairCoefficients(lp, lq);
        // the tangent-line product has one sign along the curve (zeros
        // only at p and q); canonicalize it positive so the upper lambda
        // end is the curve-outside end of the pencil
        double ref = 0.0;
        for (int i = 0; i < 64; ++i) {
            double v = pencil.q0.dot(veroneseRow(curve.point(period * i / 64).homogeneous()));
            if (std::abs(v) > std::abs(ref)) ref = v;
        }
        if (ref < 0.0) pencil.q0 = -pencil.q0;
        Vec3 chord = lineThrough(curve.point(p).homogeneous(), curve.point(q).homogeneous());
        double n = chord.norm();
        if (n < 1e-12) throw PencilError("degenerate pencil: coincident contact points");
        pencil.q1 = detail::lineSquaredCoefficients(chord / n);
    }

    // contact invariant at a few members
    const int need = pencil.kind == ConicPencil::Kind::FourContact ? 4 : 2;
    const std::vector<double> contacts = pencil.kind == ConicPencil::Kind::FourContact
                                             ? std::vector<double>{p}
                                             : std::vector<double>{p, q};
    for (double lambda : {0.25, 1.0, 4.0}) {
        Conic m = pencil.member(lambda);
        for (double t : contacts) {
            Multiplicity c = intersectionMultiplicity(m, curve, t);
            if (!c.atLeast(need))
                throw PencilError("pencil member lost contact at t=" + std::to_string(t));
        }
    }
    return pencil;
}

struct PencilExtremal {
    ConicPencil pencil;
    double lambda = 0.0;
    Conic conic;
};

namespace detail {

struct PencilTrace {
    std::vector<double> a, b;  // Q0 and Q1 along the curve (unit-norm lifts)
    double scaleA = 0.0, scaleB = 0.0;
};

inline PencilTrace tracePencil(const ClosedCurve& curve, const ConicPencil& pencil, int n) {
    PencilTrace tr;
    tr.a.resize(n);
    tr.b.resize(n);
    const double period = curve.period();
    for (int i = 0; i < n; ++i) {
        Vec3 pt = curve.point(period * i / n).homogeneous();
        Vec6 v = veroneseRow(pt);
        tr.a[i] = pencil.q0.dot(v);
        tr.b[i] = pencil.q1.dot(v);
        tr.scaleA = std::max(tr.scaleA, std::abs(tr.a[i]));
        tr.scaleB = std::max(tr.scaleB, std::abs(tr.b[i]));
    }
    return tr;
}

inline PencilExtremal pencilExtremal(const ClosedCurve& curve, double p, double q, ConicSide side,
                                     int grid) {
    ConicPencil pencil = tangentPencil(curve, p, q);
    PencilTrace tr = tracePencil(curve, pencil, grid);
    const int n = grid;
    const double period = curve.period();
    const double tol = 1e-10 * std::max(tr.scaleA, tr.scaleB);

    // bracket from the ratio field a/b; samples where the square b
    // vanishes but a is definitely signed pin the predicate on one side
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -std::numeric_limits<double>::infinity();
    bool pinnedPos = false, pinnedNeg = false;
    for (int i = 0; i < n; ++i) {
        if (tr.b[i] > 1e-13 * std::max(1.0, tr.scaleB)) {
            double r = tr.a[i] / tr.b[i];
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        } else if (tr.a[i] > tol) {
            pinnedPos = true;
        } else if (tr.a[i] < -tol) {
            pinnedNeg = true;
        }
    }
    if (!std::isfinite(rmin))
        throw ContainmentError("pencil trace degenerate: squared line vanishes along the curve");

    // The ratio a/b extends continuously to the designed tangency points:
    // both quadrics vanish there to the pencil's contact order (2 for a
    // bitangent pencil, 4 for a four-contact one). When the extremal
    // ratio is attained in that limit, the extremal member deepens its
    // contact at the base point; grid bisection stops short of that
    // lambda by the feasibility tolerance, so the limits are computed
    // exactly from jets and join the polish candidates.
    std::vector<double> baseLimits;
    {
        auto symMat = [](const Vec6& c) {
            Mat3 m;
            m << c[0], c[1] / 2, c[3] / 2,
                 c[1] / 2, c[2], c[4] / 2,
                 c[3] / 2, c[4] / 2, c[5];
            return m;
        };
        const Mat3 M0 = symMat(pencil.q0), M1 = symMat(pencil.q1);
        const int m = pencil.kind == ConicPencil::Kind::FourContact ? 4 : 2;
        std::vector<double> bases = {pencil.p};
        if (pencil.kind == ConicPencil::Kind::Bitangent) bases.push_back(pencil.q);
        static const double binom4[5] = {1, 4, 6, 4, 1};
        static const double binom2[3] = {1, 2, 1};
        const double* binom = m == 4 ? binom4 : binom2;
        for (double t0 : bases) {
            CurveJet j = curve.jet(t0, m);
            auto deriv = [&](const Mat3& M) {
                double s = 0.0;
                for (int k = 0; k <= m; ++k) s += binom[k] * j.d[k].dot(M * j.d[m - k]);
                return s;
            };
            double bm = deriv(M1);
            if (std::abs(bm) < 1e-14) continue;
            double lim = deriv(M0) / bm;
            if (std::isfinite(lim)) baseLimits.push_back(lim);
        }
    }

    // solve for one end of the pencil: upper = the least lambda with
    // raw <= 0 along the curve, lower = the greatest with raw >= 0
    auto solveEnd = [&](bool upper, double& lambdaOut) -> bool {
        auto feasible = [&](double lam) {
            if (upper) {
                for (int i = 0; i < n; ++i)
                    if (tr.a[i] - lam * tr.b[i] > tol) return false;
            } else {
                for (int i = 0; i < n; ++i)
                    if (tr.a[i] - lam * tr.b[i] < -tol) return false;
            }
            return true;
        };
        if (upper && pinnedPos) return false;
        if (!upper && pinnedNeg) return false;
        double good = upper ? rmax + 1.0 : rmin - 1.0;
        double bad = upper ? rmin - 1.0 : rmax + 1.0;
        if (!feasible(good)) return false;
        for (int it = 0; it < 200 && std::abs(good - bad) > 1e-12 * std::max(1.0, std::abs(good));
             ++it) {
            double mid = 0.5 * (good + bad);
            if (feasible(mid)) good = mid;
            else bad = mid;
        }

        // polish off-grid: the bisected lambda binds on grid samples only
        // and the inter-sample sag would leave a residual crossing at the
        // binding tangency; refine the extremal ratio around its best grid
        // cells. The ratio needs a much larger b cutoff than the trace: a
        // and b are differences of O(1) quantities, so a/b carries
        // ~1e-16/b of rounding noise near the designed tangencies
        const double bCut = 1e-6 * std::max(1.0, tr.scaleB);
        const double neutral = upper ? -std::numeric_limits<double>::infinity()
                                     : std::numeric_limits<double>::infinity();
        auto ratio = [&](double t) {
            Vec6 v = veroneseRow(curve.point(t).homogeneous());
            double bb = pencil.q1.dot(v);
            if (bb <= bCut) return neutral;
            return pencil.q0.dot(v) / bb;
        };
        std::vector<double> rg(n, neutral);
        double gridBest = neutral;
        for (int i = 0; i < n; ++i) {
            if (tr.b[i] <= bCut) continue;
            rg[i] = tr.a[i] / tr.b[i];
            if (upper) gridBest = std::max(gridBest, rg[i]);
            else gridBest = std::min(gridBest, rg[i]);
        }
        double polished = good;
        if (std::isfinite(gridBest)) {
            const double margin = 1e-3 * (1.0 + std::abs(gridBest));
            const double h = period / n;
            double refined = gridBest;
            for (int i = 0; i < n; ++i) {
                if (!std::isfinite(rg[i])) continue;
                double rm = rg[(i + n - 1) % n], rp = rg[(i + 1) % n];
                if (upper) {
                    bool localMax =
                        (!std::isfinite(rm) || rg[i] >= rm) && (!std::isfinite(rp) || rg[i] >= rp);
                    if (!localMax || rg[i] < gridBest - margin) continue;
                    auto neg = [&](double t) { return -ratio(t); };
                    refined =
                        std::max(refined, ratio(goldenMinimize(neg, h * i - h, h * i + h, 1e-10)));
                } else {
                    bool localMin =
                        (!std::isfinite(rm) || rg[i] <= rm) && (!std::isfinite(rp) || rg[i] <= rp);
                    if (!localMin || rg[i] > gridBest + margin) continue;
                    refined = std::min(refined,
                                       ratio(goldenMinimize(ratio, h * i - h, h * i + h, 1e-10)));
                }
            }
            if (std::isfinite(refined))
                polished = upper ? std::max(good, refined) : std::min(good, refined);
        }
        // a base-point limit beats the bisected lambda only by the
        // feasibility slack; anything larger signals a jet breakdown
        for (double lim : baseLimits) {
            const double window = 1e-3 * (1.0 + std::abs(polished));
            if (upper && lim > polished && lim < polished + window) polished = lim;
            if (!upper && lim < polished && lim > polished - window) polished = lim;
        }
        lambdaOut = polished;
        return true;
    };

    // the requested side is a geometric predicate on the normalized
    // member, whose positive side is always its disk
    auto onRequestedSide = [&](const Conic& m) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < n; ++i) {
            double v = m.evaluate(curve.point(period * i / n).homogeneous());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return side == ConicSide::Inscribed ? hi <= 1e-7 : lo >= -1e-7;
    };

    PencilExtremal out;
    out.pencil = pencil;
    const bool upperFirst = side == ConicSide::Inscribed;
    for (bool upper : {upperFirst, !upperFirst}) {
        double lambda;
        if (!solveEnd(upper, lambda)) continue;
        Conic m = pencil.member(lambda);
        if (!onRequestedSide(m)) continue;
        out.lambda = lambda;
        out.conic = m;
        return out;
    }
    throw ContainmentError(std::string("no ") + toString(side) + " member in the pencil");
}

}  // namespace detail

/// Maximal inscribed member of the pencil tangent at p and q: the curve
/// lies on or outside the returned conic, with lambda minimal for that.
inline PencilExtremal maximalInscribed(const ClosedCurve& curve, double p, double q,
                                       int grid = kDefaultGrid) {
    return detail::pencilExtremal(curve, p, q, ConicSide::Inscribed, grid);
}

/// Minimal circumscribed member of the pencil tangent at p and q: the
/// curve lies on or inside the returned conic, with lambda maximal.
inline PencilExtremal minimalCircumscribed(const ClosedCurve& curve, double p, double q,
                                           int grid = kDefaultGrid) {
    return detail::pencilExtremal(curve, p, q, ConicSide::Circumscribed, grid);
}

/// Support of Q(gamma) with intersection multiplicities: the multiplicity
/// function f of a noncrossing conic along the curve.
struct ContactDivisor {
    double p = 0.0, q = 0.0;  // source pair, filled by systemDivisor
    Conic conic;
    struct Entry {
        double t = 0.0;
        Multiplicity mult;
        bool isInterval = false;
        double tEnd = 0.0;  // used when isInterval: support covers [t, tEnd]
    };
    std::vector<Entry> entries;  // sorted by t
    bool wholeCurve = false;     // conic contains the whole curve
    bool totalInfinite = false;
    int total = 0;
    std::vector<std::string> diagnostics;

    int components() const { return wholeCurve ? 1 : static_cast<int>(entries.size()); }

    const Entry* find(double t, double period, double tol = 1e-6) const {
        for (const auto& e : entries) {
            if (e.isInterval) {
                if (CyclicInterval{wrapParam(e.t - tol, period), wrapParam(e.tEnd + tol, period),
                                   period}
                        .contains(wrapParam(t, period)))
                    return &e;
            } else if (cyclicDistance(e.t, t, period) <= tol) {
                return &e;
            }
        }
        return nullptr;
    }

    /// f(t): multiplicity at t, 0 off the support, -1 for infinity.
    int valueAt(double t, double period, double tol = 1e-6) const {
        if (wholeCurve) return -1;
        const Entry* e = find(t, period, tol);
        if (!e) return 0;
        return e->mult.infinite ? -1 : e->mult.value;
    }
};

/// Anchors are parameters known exactly to lie on the conic (the designed
/// tangency points of a pencil); a cluster containing one snaps to it, so
/// the entry's jets are taken at the exact parameter instead of a
/// representative recovered from the |Q| dip.
inline ContactDivisor contactDivisor(const ClosedCurve& curve, const Conic& conic,
                                     int grid = kDefaultGrid,
                                     const std::vector<double>& anchors = {}) {
    const double period = curve.period();
    const int n = 4 * grid;  // support sweeps run at 4x detection density
    ContactDivisor div;
    div.conic = conic;

    auto qa = [&](double t) { return conic.evaluate(curve.point(t).homogeneous()); };
    GridScan scan = scanPeriodic(qa, period, n);
    // the conic has unit Frobenius norm and the lifts are unit vectors, so
    // Q values live on an O(1) scale; a uniformly tiny trace is containment
    if (scan.maxAbs < 1e-8) {
        div.wholeCurve = true;
        div.totalInfinite = true;
        return div;
    }

    // intervals first: cyclic runs of near-zero samples with infinite
    // contact at the midpoint
    const double band = 1e-8 * scan.maxAbs;
    std::vector<bool> inBand(n);
    for (int i = 0; i < n; ++i) inBand[i] = std::abs(scan.f[i]) < band;
    std::vector<CyclicInterval> intervals;
    {
        int start = 0;
        while (start < n && inBand[(start + n - 1) % n]) ++start;
        if (start == n) {
            div.wholeCurve = true;
            div.totalInfinite = true;
            return div;
        }
        int i = start;
        do {
            if (inBand[i]) {
                int len = 0, j = i;
                while (inBand[j]) {
                    ++len;
                    j = (j + 1) % n;
                }
                if (len >= 16) {
                    double mid = wrapParam(scan.t[i] + 0.5 * (len - 1) * period / n, period);
                    Multiplicity m{0, false};
                    try {
                        m = intersectionMultiplicity(conic, curve, mid);
                    } catch (const PointNotOnConicError&) {
                    }
                    if (m.infinite) {
                        ContactDivisor::Entry e;
                        e.t = scan.t[i];
                        e.tEnd = wrapParam(scan.t[i] + (len - 1) * period / n, period);
                        e.isInterval = true;
                        e.mult = m;
                        div.entries.push_back(e);
                        intervals.push_back({e.t, e.tEnd, period});
                    }
                }
                i = j;
            } else {
                i = (i + 1) % n;
            }
        } while (i != start);
    }
    auto insideInterval = [&](double t) {
        for (const auto& iv : intervals)
            if (iv.contains(t) || cyclicDistance(t, iv.a, period) < 2 * period / n ||
                cyclicDistance(t, iv.b, period) < 2 * period / n)
                return true;
        return false;
    };

    // isolated support points: sign-change roots plus refined |Q| minima;
    // candidates closer than period/grid merge into one cluster
    std::vector<double> candidates;
    for (double r : periodicSignChangeRoots(qa, period, n))
        if (!insideInterval(r)) candidates.push_back(r);
    for (double r : periodicEvenOrderZeros(qa, period, n, 1e-7))
        if (!insideInterval(r)) candidates.push_back(r);
    for (double a : anchors)
        if (!insideInterval(wrapParam(a, period))) candidates.push_back(wrapParam(a, period));
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::pair<double, double>> clusters;  // [lo, hi] spans
    for (double t : candidates) {
        if (!clusters.empty() && t - clusters.back().second <= period / grid)
            clusters.back().second = t;
        else
            clusters.push_back({t, t});
    }
    if (clusters.size() >= 2 &&
        clusters.front().first + period - clusters.back().second <= period / grid) {
        clusters.front().first = clusters.back().first - period;
        clusters.pop_back();
    }

    // per cluster, the raw representative is the deepest |Q| dip; a zero
    // of dQ/dt inside the span wins when it reads a higher contact order
    // (|Q| is flat to rounding around high-order contacts, so the raw
    // minimizer can wander off the true parameter)
    auto d1 = [&](double t) { return composeJet(conic, curve, t, 1)[1]; };
    auto absQ = [&](double t) { return std::abs(qa(t)); };
    auto crossesAt = [&](double t) {
        // dominant sign of Q on each side of the point
        double h0 = 1e-3 * period;
        double ref = 0.0;
        for (int i = 1; i <= 5; ++i) {
            ref = std::max(ref, std::abs(qa(t + i * h0)));
            ref = std::max(ref, std::abs(qa(t - i * h0)));
        }
        auto sideSign = [&](double sgn) {
            int pos = 0, neg = 0;
            for (int i = 1; i <= 5; ++i) {
                double v = qa(t + sgn * i * h0);
                if (v > 1e-6 * ref) ++pos;
                else if (v < -1e-6 * ref) ++neg;
            }
            return pos > neg ? +1 : neg > pos ? -1 : 0;
        };
        return sideSign(-1.0) * sideSign(+1.0) == -1;
    };
    for (auto [lo, hi] : clusters) {
        const double pad = period / n;
        lo -= pad;
        hi += pad;
        double t = 0.0;
        Multiplicity best;
        bool haveBest = false;
        for (double a : anchors) {
            double aw = lo + cyclicOffset(wrapParam(lo, period), wrapParam(a, period), period);
            if (aw < lo || aw > hi) continue;
            try {
                best = intersectionMultiplicity(conic, curve, a);
                haveBest = true;
                t = a;
            } catch (const PointNotOnConicError&) {
            }
        }
        auto offer = [&](double r) {
            try {
                Multiplicity m = intersectionMultiplicity(conic, curve, r);
                if (!haveBest || (m.infinite && !best.infinite) ||
                    (!m.infinite && !best.infinite && m.value > best.value)) {
                    best = m;
                    haveBest = true;
                    t = r;
                }
            } catch (const PointNotOnConicError&) {
            }
        };
        offer(goldenMinimize(absQ, lo, hi));
        double prev = lo, fprev = d1(lo);
        for (int i = 1; i <= 32; ++i) {
            double s = lo + (hi - lo) * i / 32;
            double fs = d1(s);
            if (fprev != 0.0 && (fs > 0) != (fprev > 0))
                offer(bisectRoot(d1, prev, s, fprev));
            prev = s;
            fprev = fs;
        }
        if (!haveBest) continue;  // shallow dip, not a contact point
        ContactDivisor::Entry e;
        e.t = wrapParam(t, period);
        e.mult = best;
        if (e.mult.odd()) {
            if (!crossesAt(t) && e.mult.value >= 3) {
                // the jet zero test swallowed a small nonzero derivative;
                // no sign change means the true order is the even one below
                e.mult.value -= 1;
                div.diagnostics.push_back("shallow tangency at t=" + std::to_string(e.t) +
                                          ": odd jet reading demoted to even order " +
                                          std::to_string(e.mult.value));
            } else {
                div.diagnostics.push_back("containment violation: odd multiplicity " +
                                          std::to_string(e.mult.value) +
                                          " at t=" + std::to_string(e.t));
            }
        }
        div.entries.push_back(e);
    }
    std::sort(div.entries.begin(), div.entries.end(),
              [](const auto& a, const auto& b) { return a.t < b.t; });
    for (const auto& e : div.entries) {
        if (e.mult.infinite) div.totalInfinite = true;
        else div.total += e.mult.value;
    }
    return div;
}

/// Divisor of the side's extremal conic in the pencil through (p, q):
/// the per-pair multiplicity functions of the intrinsic conic systems.
inline ContactDivisor systemDivisor(const ClosedCurve& curve, double p, double q, ConicSide side,
                                    int grid = kDefaultGrid) {
    PencilExtremal ex = detail::pencilExtremal(curve, p, q, side, grid);
    std::vector<double> anchors{p};
    if (cyclicDistance(p, q, curve.period()) >= 1e-12) anchors.push_back(q);
    ContactDivisor div = contactDivisor(curve, ex.conic, grid, anchors);
    div.p = p;
    div.q = q;
    return div;
}

}  // namespace osc
