#pragma once

// Numerical audits of the intrinsic circle and conic system axioms.
//
// A sampled conic system holds the contact divisors f_{p,q} of the
// extremal inscribed or circumscribed members over a parameter grid; the
// audits instantiate the axioms (A1)-(A8) exhaustively on that grid, with
// the limit axiom (A6) exercised on halving refinement sequences. The
// starred supports F* derived from a conic system, or any externally
// supplied family of supports, are audited against the circle system
// axioms (I0)-(I3).
//
// Violations are data, not exceptions: a report carries one entry per
// failed instance with the witnessing tuple.

#include <atomic>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>

#include "osculant/pencil.hpp"

namespace osc {

struct AxiomViolation {
    std::string axiom;    // "I0".."I3", "A1".."A8"
    std::string witness;  // human-readable tuple and measured values
};

struct AxiomReport {
    int grid = 0;
    std::vector<AxiomViolation> violations;
    std::vector<std::string> notes;  // ambiguous or skipped configurations

    bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}


/// Canonical support view for tolerance comparisons.  The extremal lambda
/// is resolved to finite precision, so the solved member can graze the
/// curve around a deepened contact point and the divisor then reads
/// satellite near-crossings next to the anchor.  An entry connected to a
/// deeper one through a valley where |Q| never clears the tangency
/// detection band is such a satellite and is absorbed.
inline ContactDivisor absorbGrazeSatellites(const ClosedCurve& curve, ContactDivisor d) {
    if (d.wholeCurve || d.entries.size() < 2) return d;
    const double period = curve.period();
    auto qa = [&](double t) { return d.conic.evaluate(curve.point(t).homogeneous()); };
    const int n = 1024;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(qa(period * i / n)));
    const double band = 1e-7 * scale;

    auto valleyBelow = [&](double from, double to) {
        double len = wrapParam(to - from, period);
        if (len > 0.25 * period) return false;  // satellites are local
        int steps = std::max(4, static_cast<int>(len * n / period) * 4);
        for (int k = 1; k < steps; ++k)
            if (std::abs(qa(from + len * k / steps)) > band) return false;
        return true;
    };
    auto deeper = [](const ContactDivisor::Entry& x, const ContactDivisor::Entry& y) {
        if (x.mult.infinite != y.mult.infinite) return x.mult.infinite;
        return x.mult.value >= y.mult.value;
    };

    bool changed = true;
    while (changed && d.entries.size() >= 2) {
        changed = false;
        for (size_t i = 0; i < d.entries.size(); ++i) {
            size_t j = (i + 1) % d.entries.size();
            ContactDivisor::Entry& x = d.entries[i];
            ContactDivisor::Entry& y = d.entries[j];
            if (x.isInterval || y.isInterval) continue;
            if (x.mult.value == y.mult.value && !x.mult.infinite) continue;  // peers, not noise
            if (!valleyBelow(x.t, y.t)) continue;
            size_t drop = deeper(x, y) ? j : i;
            d.diagnostics.push_back("graze satellite at t=" + std::to_string(d.entries[drop].t) +
                                    " absorbed into the adjacent contact cluster");
            d.entries.erase(d.entries.begin() + static_cast<long>(drop));
            changed = true;
            break;
        }
    }
    d.total = 0;
    d.totalInfinite = false;
    for (const auto& e : d.entries) {
        if (e.mult.infinite) d.totalInfinite = true;
        else d.total += e.mult.value;
    }
    return d;
}

}  // namespace detail

/// Set-with-multiplicity equality of two divisors: same support points
/// within tol and the same multiplicity at each.
inline bool divisorEquals(const ContactDivisor& x, const ContactDivisor& y, double period,
                          double tol) {
    if (x.wholeCurve || y.wholeCurve) return x.wholeCurve == y.wholeCurve;
    if (x.entries.size() != y.entries.size()) return false;
    auto covered = [&](const ContactDivisor& a, const ContactDivisor& b) {
        for (const auto& e : a.entries) {
            const ContactDivisor::Entry* m = b.find(e.t, period, tol);
            if (!m) return false;
            if (e.isInterval != m->isInterval) return false;
            if (e.mult.infinite != m->mult.infinite) return false;
            if (!e.mult.infinite && e.mult.value != m->mult.value) return false;
        }
        return true;
    };
    return covered(x, y) && covered(y, x);
}

/// Lazily computed, cached family of extremal-member contact divisors
/// f_{p,q} for one side (the sampled intrinsic conic system).
class ConicSystem {
  public:
    ConicSystem(const ClosedCurve& curve, ConicSide side, int divisorGrid = 1024)
        : curve_(&curve), side_(side), grid_(divisorGrid) {}

    const ClosedCurve& curve() const { return *curve_; }
    ConicSide side() const { return side_; }
    double period() const { return curve_->period(); }

    const ContactDivisor& at(double p, double q) {
        Key key = makeKey(p, q);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        ContactDivisor d = systemDivisor(*curve_, p, q, side_, grid_);
        return cache_.emplace(key, std::move(d)).first->second;
    }

    /// Extremal conic of the ordered pair, uncached (used by the symmetry
    /// audit, which must compute both orders independently).
    Conic orderedConic(double p, double q) const {
        return detail::pencilExtremal(*curve_, p, q, side_, grid_).conic;
    }

    /// Preload (or overwrite) the cached divisor of a pair. Lets tests
    /// audit systems with hand-mutated members.
    void inject(double p, double q, ContactDivisor d) { cache_[makeKey(p, q)] = std::move(d); }

    /// Fill the cache for all unordered grid pairs in parallel.
    void precompute(const std::vector<double>& params) {
        std::vector<std::pair<double, double>> pairs;
        for (size_t i = 0; i < params.size(); ++i)
            for (size_t j = i; j < params.size(); ++j) pairs.push_back({params[i], params[j]});
        std::vector<std::pair<Key, ContactDivisor>> results(pairs.size());
        std::atomic<size_t> next{0};
        unsigned nt = std::max(1u, std::thread::hardware_concurrency());
        auto worker = [&] {
            for (size_t k = next++; k < pairs.size(); k = next++) {
                auto [p, q] = pairs[k];
                results[k] = {makeKey(p, q), systemDivisor(*curve_, p, q, side_, grid_)};
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i + 1 < nt; ++i) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        for (auto& [key, d] : results) cache_.emplace(key, std::move(d));
    }

  private:
    using Key = std::pair<long long, long long>;
    Key makeKey(double p, double q) const {
        double period = curve_->period();
        long long a = llround(wrapParam(p, period) / period * 1e12);
        long long b = llround(wrapParam(q, period) / period * 1e12);
        return {std::min(a, b), std::max(a, b)};
    }

    const ClosedCurve* curve_;
    ConicSide side_;
    int grid_;
    std::map<Key, ContactDivisor> cache_;
};

namespace detail {

/// Multiplicity as an integer for comparisons: infinity as a big number.
inline int multValue(const Multiplicity& m) { return m.infinite ? 1 << 20 : m.value; }

/// Lower bound on the number of intersections (with multiplicity) that
/// two extremal members of the same side are forced to have, read off
/// their contact divisors: a common tangency point contributes the
/// shared even contact order, and each change of tangency ownership
/// along the curve forces a crossing between the two conics in that
/// sector. A count of five or more forces the conics to coincide.
inline long long forcedConicIntersections(const ContactDivisor& d1, const ContactDivisor& d2,
                                          double period, double sep, bool* sawShared = nullptr) {
    constexpr long long kInf = 1 << 20;
    struct Node {
        double t;
        int label;  // 1, 2, or 0 for a shared tangency
        long long mult;
    };
    std::vector<Node> nodes;
    auto multOf = [&](const ContactDivisor::Entry& e) -> long long {
        return (e.mult.infinite || e.isInterval) ? kInf : e.mult.value;
    };
    for (const auto& e : d1.entries) nodes.push_back({wrapParam(e.t, period), 1, multOf(e)});
    for (const auto& e : d2.entries) nodes.push_back({wrapParam(e.t, period), 2, multOf(e)});
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });

    // merge cross-label coincidences into shared nodes
    std::vector<Node> merged;
    std::vector<bool> used(nodes.size(), false);
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (used[i]) continue;
        Node n = nodes[i];
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            if (used[j] || nodes[j].label == n.label || n.label == 0) continue;
            if (cyclicDistance(nodes[j].t, n.t, period) > sep) continue;
            long long m = std::min(n.mult, nodes[j].mult);
            if (m < kInf && m % 2) m -= 1;  // tangential contact is even
            n = {n.t, 0, m};
            used[j] = true;
        }
        merged.push_back(n);
    }

    long long forced = 0;
    bool shared = false;
    for (const auto& n : merged)
        if (n.label == 0) {
            forced += n.mult;
            shared = true;
        }
    // ownership alternations between consecutive pure tangencies with no
    // shared point in the gap (a shared point is already counted above)
    std::vector<size_t> pure;
    for (size_t i = 0; i < merged.size(); ++i)
        if (merged[i].label != 0) pure.push_back(i);
    for (size_t k = 0; k < pure.size(); ++k) {
        size_t u = pure[k], v = pure[(k + 1) % pure.size()];
        if (merged[u].label == merged[v].label) continue;
        bool sharedBetween = false;
        for (size_t w = (u + 1) % merged.size(); w != v; w = (w + 1) % merged.size())
            if (merged[w].label == 0) sharedBetween = true;
        if (!sharedBetween) forced += 1;
    }
    if (sawShared) *sawShared = shared;
    return forced;
}

/// All representative parameters of a divisor's support (interval entries
/// contribute their endpoints and midpoint).
inline std::vector<double> supportReps(const ContactDivisor& d, double period) {
    std::vector<double> out;
    for (const auto& e : d.entries) {
        out.push_back(e.t);
        if (e.isInterval) {
            out.push_back(e.tEnd);
            out.push_back(wrapParam(e.t + 0.5 * forwardDistance(e.t, e.tEnd, period), period));
        }
    }
    return out;
}

/// True when two support entries of multiplicity >= 4 are linked through
/// a valley where |Q| stays below the tangency detection band: the member
/// is flattened against the curve across a near-sextactic parameter, and
/// how the contact order splits between the two readings is
/// tolerance-dependent.
inline bool flattenedDeepCluster(const ClosedCurve& curve, const ContactDivisor& d) {
    if (d.wholeCurve) return false;
    const double period = curve.period();
    auto qa = [&](double t) { return d.conic.evaluate(curve.point(t).homogeneous()); };
    const int n = 1024;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(qa(period * i / n)));
    const double band = 1e-7 * scale;
    std::vector<double> deep;
    for (const auto& e : d.entries)
        if (!e.isInterval && multValue(e.mult) >= 4) deep.push_back(e.t);
    for (size_t i = 0; i < deep.size(); ++i) {
        for (size_t j = i + 1; j < deep.size(); ++j) {
            for (int dir = 0; dir < 2; ++dir) {
                double from = dir ? deep[j] : deep[i];
                double len = wrapParam((dir ? deep[i] : deep[j]) - from, period);
                if (len > 0.25 * period) continue;  // clusters are local
                int steps = std::max(4, static_cast<int>(len * n / period) * 4);
                bool below = true;
                for (int k = 1; k < steps && below; ++k)
                    below = std::abs(qa(from + len * k / steps)) <= band;
                if (below) return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Exhaustive audit of the conic system axioms on a (p,q) grid over the
/// interval; (A6) runs on halving refinement sequences of depth 6. This
/// overload audits a prebuilt (possibly preloaded) system.
inline AxiomReport auditConicAxioms(ConicSystem& sys, CyclicInterval interval, int grid) {
    const ClosedCurve& curve = sys.curve();
    const double period = curve.period();
    AxiomReport report;
    report.grid = grid;

    std::vector<double> params;
    const bool full = interval.isFull();
    if (full) {
        for (int i = 0; i < grid; ++i) params.push_back(wrapParam(period * i / grid, period));
    } else {
        double len = interval.length();
        for (int i = 0; i < grid; ++i)
            params.push_back(wrapParam(interval.a + len * i / (grid - 1), period));
    }
    const int g = static_cast<int>(params.size());
    sys.precompute(params);

    const double tolMatch = 1e-3 * period;  // support representative fuzz
    const double sep = 2 * tolMatch;        // strictness margin for cyclic chains

    auto violation = [&](const char* axiom, std::string witness) {
        report.violations.push_back({axiom, std::move(witness)});
    };

    // (A1) p and q in the support; (A7) total multiplicity >= 6;
    // (A8) multiplicity 2 at a base point implies it is isolated
    for (int i = 0; i < g; ++i) {
        for (int j = i; j < g; ++j) {
            const ContactDivisor& d = sys.at(params[i], params[j]);
            for (double z : {params[i], params[j]}) {
                int v = d.valueAt(z, period, tolMatch);
                if (v == 0)
                    violation("A1", detail::fmt("p=%.6f q=%.6f: base point %.6f not in support",
                                                params[i], params[j], z));
                if (v == 2) {
                    const ContactDivisor::Entry* e = d.find(z, period, tolMatch);
                    if (d.wholeCurve || (e && e->isInterval))
                        violation("A8", detail::fmt("p=%.6f q=%.6f: f(%.6f)=2 but not isolated",
                                                    params[i], params[j], z));
                }
            }
            if (!d.totalInfinite && !d.wholeCurve && d.total < 6)
                violation("A7", detail::fmt("p=%.6f q=%.6f: total multiplicity %d < 6", params[i],
                                            params[j], d.total));
        }
    }

    // (A2) symmetry: both orders of a pair give the same extremal conic,
    // hence identical divisors
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            Conic a = sys.orderedConic(params[i], params[j]);
            Conic b = sys.orderedConic(params[j], params[i]);
            if (!a.approxEquals(b, 1e-7))
                violation("A2", detail::fmt("p=%.6f q=%.6f: swapped-order conics differ",
                                            params[i], params[j]));
        }
    }

    // Canonical (graze-absorbed) divisor of each unordered grid pair, for
    // the cross-divisor comparisons of A3-A5.
    struct PairIdx {
        int i, j;
    };
    std::vector<PairIdx> pairs;
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) pairs.push_back({i, j});
    std::vector<ContactDivisor> canon(pairs.size());
    for (size_t a = 0; a < pairs.size(); ++a)
        canon[a] = detail::absorbGrazeSatellites(curve,
                                                 sys.at(params[pairs[a].i], params[pairs[a].j]));
    auto canonAt = [&](int i, int j) -> const ContactDivisor& {
        int a = std::min(i, j), b = std::max(i, j);
        return canon[static_cast<size_t>(a) * g - static_cast<size_t>(a) * (a - 1) / 2 + (b - a)];
    };

    // (A3) two divisors through p sharing a support point other than p
    // are equal. Support representatives are polished, so a genuinely
    // shared tangency matches far tighter than the comparison fuzz; pairs
    // whose supports merely pass within the fuzz of each other are
    // distinct configurations and are noted, not failed.
    const double tolShare = 1e-4 * period;
    int nearShareA3 = 0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            for (int k = j + 1; k < g; ++k) {
                const ContactDivisor& d1 = canonAt(i, j);
                const ContactDivisor& d2 = canonAt(i, k);
                if (d1.wholeCurve && d2.wholeCurve) continue;
                bool shared = false, nearShared = false;
                double sharedAt = 0.0;
                for (double s : detail::supportReps(d1, period)) {
                    if (cyclicDistance(s, params[i], period) <= sep) continue;
                    if (d2.valueAt(s, period, tolShare) != 0) {
                        shared = true;
                        sharedAt = s;
                        break;
                    }
                    if (d2.valueAt(s, period, tolMatch) != 0) nearShared = true;
                }
                if (!shared) {
                    nearShareA3 += nearShared;
                    continue;
                }
                if (!divisorEquals(d1, d2, period, tolMatch))
                    violation("A3",
                              detail::fmt("p=%.6f q=%.6f r=%.6f share s=%.6f, divisors differ",
                                          params[i], params[j], params[k], sharedAt));
            }
        }
    }
    if (nearShareA3 > 0)
        report.notes.push_back(detail::fmt(
            "A3: %d pairs with supports inside the comparison fuzz but not coincident; "
            "skipped as distinct configurations", nearShareA3));

    // (A4) interleaving condition, audited through the bound it encodes:
    // two distinct conics meet in at most four points, so whenever the
    // contact divisors of two members force five or more intersections
    // (shared tangencies count their common even contact order, each
    // ownership alternation forces a crossing) the divisors must agree.
    // Weak-coincidence chains that force only four intersections are the
    // configurations where the literal readings of the axiom differ;
    // they are logged, not failed. Tangencies are merged as shared only at
    // the tight tolerance: polished representatives of a genuinely common
    // tangency coincide to far better than the grid fuzz, while distinct
    // tangencies passing within the fuzz are honest alternations.
    int ambiguousA4 = 0;
    for (size_t a = 0; a < pairs.size(); ++a) {
        for (size_t b = a + 1; b < pairs.size(); ++b) {
            const ContactDivisor& d1 = canon[a];
            const ContactDivisor& d2 = canon[b];
            bool equal = divisorEquals(d1, d2, period, tolMatch);
            if (d1.wholeCurve || d2.wholeCurve) {
                // a whole-curve member shares every tangency of the other
                if (!equal)
                    violation("A4", detail::fmt("pairs (%.4f,%.4f) and (%.4f,%.4f): one member "
                                                "contains the curve, the other differs",
                                                params[pairs[a].i], params[pairs[a].j],
                                                params[pairs[b].i], params[pairs[b].j]));
                continue;
            }
            bool shared = false;
            long long forced = detail::forcedConicIntersections(d1, d2, period, tolShare, &shared);
            if (forced >= 5 && !equal)
                violation("A4", detail::fmt("pairs (%.4f,%.4f) and (%.4f,%.4f): tangencies force "
                                            "%lld conic intersections but divisors differ",
                                            params[pairs[a].i], params[pairs[a].j],
                                            params[pairs[b].i], params[pairs[b].j], forced));
            if (forced == 4 && shared && !equal) ++ambiguousA4;
        }
    }
    if (ambiguousA4 > 0)
        report.notes.push_back(detail::fmt(
            "A4: %d configurations satisfy the weak-coincidence chain reading but force only "
            "four intersections; skipped (distinct conics may meet four times)",
            ambiguousA4));

    // (A5) a support point of multiplicity >= 4 inside I has the same
    // divisor as its own diagonal system. Near a sextactic parameter the
    // extremal member is flattened against the curve and the contact order
    // splits into two >= 4 readings whose positions depend on the solve
    // tolerance; those configurations are noted, not failed.
    int flattenedA5 = 0;
    for (size_t a = 0; a < pairs.size(); ++a) {
        const PairIdx& pr = pairs[a];
        const ContactDivisor& d = canon[a];
        if (d.wholeCurve) {
            const ContactDivisor& dd = sys.at(params[pr.i], params[pr.i]);
            if (!divisorEquals(d, dd, period, tolMatch))
                violation("A5", detail::fmt("p=%.6f q=%.6f: whole-curve divisor differs from "
                                            "diagonal at p",
                                            params[pr.i], params[pr.j]));
            continue;
        }
        for (const auto& e : d.entries) {
            int v = detail::multValue(e.mult);
            if (v < 4) continue;
            double r = e.t;
            if (!full && !interval.contains(wrapParam(r, period))) continue;
            ContactDivisor dd = detail::absorbGrazeSatellites(curve, sys.at(r, r));
            if (divisorEquals(d, dd, period, tolMatch)) continue;
            if (detail::flattenedDeepCluster(curve, d) ||
                detail::flattenedDeepCluster(curve, dd)) {
                ++flattenedA5;
                continue;
            }
            violation("A5", detail::fmt("p=%.6f q=%.6f: f(%.6f)=%d but f_{r,r} differs",
                                        params[pr.i], params[pr.j], r,
                                        e.mult.infinite ? -1 : e.mult.value));
        }
    }
    if (flattenedA5 > 0)
        report.notes.push_back(detail::fmt(
            "A5: %d deep-contact readings inside a flattened near-sextactic cluster; the "
            "multiplicity split between the linked readings is tolerance-dependent; skipped",
            flattenedA5));

    // (A6) limit behavior on halving refinement sequences, depth 6; the
    // strictness instance is Lemma 3.4: the diagonal multiplicity at the
    // base point is at least 4
    for (int i = 0; i < g; ++i) {
        const ContactDivisor& dd = sys.at(params[i], params[i]);
        int v = dd.valueAt(params[i], period, tolMatch);
        if (v != -1 && v < 4)
            violation("A6",
                      detail::fmt("diagonal p=%.6f: f_{p,p}(p)=%d < 4 (Kneser strictness)",
                                  params[i], v));
    }
    const int targets = std::min(6, g);
    for (int ti = 0; ti < targets; ++ti) {
        int i = ti * g / targets;
        int j = (i + g / 3) % g;
        if (j == i) continue;
        double p = params[i], q = params[j];
        const ContactDivisor& limit = sys.at(p, q);
        if (limit.wholeCurve) continue;
        double delta0 = 0.25 * cyclicDistance(p, q, period);
        for (const auto& e : limit.entries) {
            double r = e.t;
            std::vector<int> ks;
            for (int depth = 1; depth <= 6; ++depth) {
                double delta = delta0 / (1 << depth);
                const ContactDivisor& dn = sys.at(p + delta, q - delta);
                if (dn.wholeCurve) {
                    ks.push_back(1 << 20);
                    continue;
                }
                double bestDist = period;
                int bestMult = 0;
                for (const auto& en : dn.entries) {
                    double dist = cyclicDistance(en.t, r, period);
                    if (dist < bestDist) {
                        bestDist = dist;
                        bestMult = detail::multValue(en.mult);
                    }
                }
                ks.push_back(bestDist < 8 * delta + tolMatch ? bestMult : 0);
            }
            int kTail = std::min(ks[4], ks[5]);
            if (kTail > 0 && detail::multValue(e.mult) < kTail)
                violation("A6", detail::fmt("p=%.6f q=%.6f r=%.6f: limit multiplicity %d below "
                                            "refined bound %d",
                                            p, q, r, detail::multValue(e.mult), kTail));
            bool monotone = true;
            for (size_t n = 1; n < ks.size(); ++n)
                if (ks[n] < ks[n - 1]) monotone = false;
            if (!monotone)
                report.notes.push_back(detail::fmt(
                    "A6 refinement at p=%.4f q=%.4f r=%.4f not monotone (converging fine)", p, q,
                    r));
        }
    }

    return report;
}

inline AxiomReport auditConicAxioms(const ClosedCurve& curve, CyclicInterval interval,
                                    ConicSide side, int grid, int divisorGrid = 1024) {
    ConicSystem sys(curve, side, divisorGrid);
    return auditConicAxioms(sys, interval, grid);
}

/// One member of a circle system family: the support F_p as points plus
/// optional interval components.
struct CircleSupport {
    std::vector<double> pts;
    std::vector<CyclicInterval> intervals;
    bool whole = false;

    bool contains(double t, double period, double tol) const {
        if (whole) return true;
        for (double s : pts)
            if (cyclicDistance(s, t, period) <= tol) return true;
        for (const auto& iv : intervals)
            if (iv.contains(wrapParam(t, period)) ||
                cyclicDistance(t, iv.a, period) <= tol ||
                cyclicDistance(t, iv.b, period) <= tol)
                return true;
        return false;
    }

    std::vector<double> reps(double period) const {
        std::vector<double> out = pts;
        for (const auto& iv : intervals) {
            out.push_back(iv.a);
            out.push_back(iv.b);
            out.push_back(wrapParam(iv.a + 0.5 * iv.length(), period));
        }
        return out;
    }

    bool equals(const CircleSupport& o, double period, double tol) const {
        if (whole || o.whole) return whole == o.whole;
        for (double s : reps(period))
            if (!o.contains(s, period, tol)) return false;
        for (double s : o.reps(period))
            if (!contains(s, period, tol)) return false;
        return true;
    }
};

struct CircleFamily {
    double period = 2 * M_PI;
    std::vector<double> params;
    std::vector<CircleSupport> supports;  // F_{params[k]}
};

/// Audit (I0)-(I2) exhaustively on a sampled family; when a member
/// generator is supplied, (I3) is exercised on halving refinement
/// sequences toward a few targets.
inline AxiomReport auditCircleAxioms(
    const CircleFamily& fam, double tol = 1e-3,
    const std::function<CircleSupport(double)>& member = nullptr) {
    AxiomReport report;
    report.grid = static_cast<int>(fam.params.size());
    const double period = fam.period;
    const double sep = 2 * tol;
    auto violation = [&](const char* axiom, std::string witness) {
        report.violations.push_back({axiom, std::move(witness)});
    };

    const size_t g = fam.params.size();
    for (size_t i = 0; i < g; ++i)
        if (!fam.supports[i].contains(fam.params[i], period, tol))
            violation("I0", detail::fmt("p=%.6f not in F_p", fam.params[i]));

    for (size_t i = 0; i < g; ++i) {
        for (size_t j = i + 1; j < g; ++j) {
            const CircleSupport& a = fam.supports[i];
            const CircleSupport& b = fam.supports[j];
            bool overlap = a.whole || b.whole;
            for (double s : a.reps(period))
                if (b.contains(s, period, tol)) overlap = true;
            if (overlap && !a.equals(b, period, tol))
                violation("I1", detail::fmt("F_%.6f and F_%.6f overlap but differ", fam.params[i],
                                            fam.params[j]));
        }
    }

    for (size_t i = 0; i < g; ++i) {
        for (size_t j = 0; j < g; ++j) {
            if (i == j) continue;
            double p = fam.params[i], q = fam.params[j];
            const CircleSupport& a = fam.supports[i];
            const CircleSupport& b = fam.supports[j];
            if (a.whole || b.whole) continue;  // covered by I1
            double dq = forwardDistance(p, q, period);
            if (dq < sep) continue;
            for (double pp : a.reps(period)) {
                double dpp = forwardDistance(p, pp, period);
                if (!(dpp > dq + sep)) continue;
                for (double qp : b.reps(period)) {
                    double dqp = forwardDistance(p, qp, period);
                    if (!(dqp > dpp + sep && dqp < period - sep)) continue;
                    if (!a.equals(b, period, tol))
                        violation("I2", detail::fmt("p=%.4f q=%.4f p'=%.4f q'=%.4f interleave "
                                                    "but supports differ",
                                                    p, q, pp, qp));
                }
            }
        }
    }

    if (member) {
        const size_t targets = std::min<size_t>(4, g);
        for (size_t ti = 0; ti < targets; ++ti) {
            size_t i = ti * g / targets;
            double p = fam.params[i];
            std::vector<double> qs = fam.supports[i].reps(period);
            if (qs.empty()) continue;
            double q = qs.front();
            double delta0 = 0.125 * period;
            bool tracked = true;
            for (int depth = 1; depth <= 6 && tracked; ++depth) {
                CircleSupport fn = member(p + delta0 / (1 << depth));
                double best = period;
                for (double s : fn.reps(period)) best = std::min(best, cyclicDistance(s, q, period));
                if (fn.whole) best = 0.0;
                if (best > 8 * delta0 / (1 << depth) + tol) tracked = false;
            }
            if (tracked && !fam.supports[i].contains(q, period, tol))
                violation("I3", detail::fmt("p=%.6f: refined supports track q=%.6f but q not in "
                                            "F_p",
                                            p, q));
        }
    }

    return report;
}

/// The starred circle family F*_{p,.} of a conic system for a fixed p:
/// the support of f_{p,q}, minus p itself when f_{p,q}(p) = 2.
inline CircleSupport starredSupport(const ContactDivisor& d, double p, double period,
                                    double tol = 1e-3) {
    CircleSupport s;
    if (d.wholeCurve) {
        s.whole = true;
        return s;
    }
    bool dropP = d.valueAt(p, period, tol) == 2;
    for (const auto& e : d.entries) {
        if (e.isInterval) {
            s.intervals.push_back({e.t, e.tEnd, period});
        } else if (!dropP || cyclicDistance(e.t, p, period) > tol) {
            s.pts.push_back(e.t);
        }
    }
    return s;
}

/// The circle family derived from a conic system by freezing the first
/// parameter: the member at q is F*_{p,q}. This is the construction that
/// turns an intrinsic conic system into an intrinsic circle system.
inline CircleFamily starredFamily(ConicSystem& sys, double p, int grid) {
    CircleFamily fam;
    fam.period = sys.period();
    for (int i = 0; i < grid; ++i) {
        double q = wrapParam(fam.period * i / grid, fam.period);
        fam.params.push_back(q);
        fam.supports.push_back(starredSupport(sys.at(p, q), p, fam.period));
    }
    return fam;
}

}  // namespace osc
