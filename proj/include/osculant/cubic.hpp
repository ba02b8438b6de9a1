#pragma once

// Exact arithmetic on real Weierstrass cubics y^2 = x^3 + ax + b: branch
// structure, chord-tangent group law, torsion classification of the
// inflection and sextactic points (3-torsion and 6-torsion), and the
// classical counting formulas for regular degree-d algebraic curves.
//
// All structural computation (division polynomials, real-root counts via
// Sturm chains, the group law on exact points) runs over the rationals;
// floating point appears only in coordinate approximations of algebraic
// points and in the torsion-closure residual checks.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace osc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline double toDouble(const Rational& r) {
    return static_cast<double>(boost::multiprecision::cpp_bin_float_50(r.numerator()) /
                               boost::multiprecision::cpp_bin_float_50(r.denominator()));
}

/// Dense univariate polynomial with exact rational coefficients.
struct RatPoly {
    std::vector<Rational> c;  // c[i] multiplies x^i

    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == Rational(0)) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& lead() const { return c.back(); }

    Rational operator()(const Rational& x) const {
        Rational v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }
    double operator()(double x) const {
        double v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + toDouble(*it);
        return v;
    }

    RatPoly derivative() const {
        if (c.size() <= 1) return RatPoly{};
        std::vector<Rational> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Rational(BigInt(i));
        return RatPoly(std::move(d));
    }

    friend RatPoly operator+(const RatPoly& p, const RatPoly& q) {
        std::vector<Rational> r(std::max(p.c.size(), q.c.size()), Rational(0));
        for (size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
        for (size_t i = 0; i < q.c.size(); ++i) r[i] += q.c[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator-(const RatPoly& p, const RatPoly& q) {
        std::vector<Rational> r(std::max(p.c.size(), q.c.size()), Rational(0));
        for (size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
        for (size_t i = 0; i < q.c.size(); ++i) r[i] -= q.c[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& p, const RatPoly& q) {
        if (p.zero() || q.zero()) return RatPoly{};
        std::vector<Rational> r(p.c.size() + q.c.size() - 1, Rational(0));
        for (size_t i = 0; i < p.c.size(); ++i)
            for (size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const Rational& s, const RatPoly& p) {
        std::vector<Rational> r = p.c;
        for (auto& v : r) v *= s;
        return RatPoly(std::move(r));
    }

    /// Remainder of this divided by q (exact polynomial division).
    RatPoly rem(const RatPoly& q) const {
        RatPoly r = *this;
        while (!r.zero() && r.degree() >= q.degree()) {
            Rational f = r.lead() / q.lead();
            int shift = r.degree() - q.degree();
            for (size_t i = 0; i < q.c.size(); ++i)
                r.c[i + shift] -= f * q.c[i];
            r.trim();
        }
        return r;
    }
};

namespace detail {

inline int sgn(const Rational& v) { return v > Rational(0) ? 1 : v < Rational(0) ? -1 : 0; }

inline std::vector<RatPoly> sturmChain(const RatPoly& p) {
    std::vector<RatPoly> chain{p, p.derivative()};
    while (!chain.back().zero() && chain.back().degree() > 0) {
        RatPoly r = chain[chain.size() - 2].rem(chain.back());
        if (r.zero()) break;
        chain.push_back(Rational(-1) * r);
    }
    return chain;
}

inline int sturmSignChanges(const std::vector<RatPoly>& chain, const Rational& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sgn(p(x));
        if (s != 0 && prev != 0 && s != prev) ++changes;
        if (s != 0) prev = s;
    }
    return changes;
}

/// Number of distinct real roots of p in (a, b].
inline int sturmCount(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
    return sturmSignChanges(chain, a) - sturmSignChanges(chain, b);
}

}  // namespace detail

/// A real root of an exact polynomial: a rational enclosure plus a double
/// approximation, and the exact value when the root happens to be rational.
struct IsolatedRoot {
    Rational lo, hi;      // enclosure, lo < root <= hi
    double approx = 0.0;  // refined midpoint
    bool exact = false;
    Rational value;  // meaningful when exact
};

/// All distinct real roots of p, isolated by a Sturm chain and refined by
/// exact bisection; rational roots are recognized exactly via continued
/// fraction reconstruction of the refined approximation.
inline std::vector<IsolatedRoot> realRoots(const RatPoly& p, int bisections = 80) {
    std::vector<IsolatedRoot> out;
    if (p.degree() < 1) return out;
    auto chain = detail::sturmChain(p);

    // Cauchy bound on root magnitude
    Rational bound(1);
    for (const auto& ci : p.c) {
        Rational m = (ci < Rational(0) ? -ci : ci) / (p.lead() < Rational(0) ? -p.lead()
                                                                             : p.lead());
        bound = std::max(bound, Rational(1) + m);
    }

    struct Span {
        Rational a, b;
        int roots;
    };
    std::vector<Span> stack{{-bound, bound, detail::sturmCount(chain, -bound, bound)}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        if (s.roots == 0) continue;
        if (s.roots == 1) {
            isolated.push_back({s.a, s.b});
            continue;
        }
        Rational mid = (s.a + s.b) / Rational(2);
        // a root exactly at the midpoint stays in the left half (a, mid]
        int left = detail::sturmCount(chain, s.a, mid);
        stack.push_back({s.a, mid, left});
        stack.push_back({mid, s.b, s.roots - left});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    for (auto [lo, hi] : isolated) {
        // the enclosure is (lo, hi] with exactly one simple root inside;
        // lo itself may be a root of p (the previous enclosure's), so the
        // sign on the inside of lo is read off the opposite endpoint
        int shi = detail::sgn(p(hi));
        if (shi == 0) lo = hi;
        int slo = -shi;
        for (int it = 0; it < bisections; ++it) {
            if (lo == hi) break;
            Rational mid = (lo + hi) / Rational(2);
            int sm = detail::sgn(p(mid));
            if (sm == 0) {
                lo = hi = mid;
                break;
            }
            (sm == slo ? lo : hi) = mid;
        }
        IsolatedRoot r;
        r.lo = lo;
        r.hi = hi;
        r.approx = 0.5 * (toDouble(lo) + toDouble(hi));
        if (lo == hi) {
            r.exact = true;
            r.value = lo;
        } else {
            // small-denominator rational reconstruction, verified exactly
            double v = r.approx;
            long long bestP = 0, bestQ = 1;
            double bestErr = 1e300;
            for (long long q = 1; q <= 1000; ++q) {
                long long pp = std::llround(v * static_cast<double>(q));
                double err = std::abs(v - static_cast<double>(pp) / static_cast<double>(q));
                if (err < bestErr) {
                    bestErr = err;
                    bestP = pp;
                    bestQ = q;
                }
            }
            Rational cand{BigInt(bestP), BigInt(bestQ)};
            if (p(cand) == Rational(0) && cand > r.lo && cand <= r.hi) {
                r.exact = true;
                r.value = cand;
                r.approx = toDouble(cand);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

class SingularCubicError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// y^2 = x^3 + ax + b with exact rational coefficients.
struct WeierstrassCubic {
    Rational a, b;

    WeierstrassCubic(Rational aa, Rational bb) : a(std::move(aa)), b(std::move(bb)) {
        if (discriminant() == Rational(0))
            throw SingularCubicError("singular cubic: discriminant vanishes");
    }

    Rational discriminant() const {
        return Rational(-16) * (Rational(4) * a * a * a + Rational(27) * b * b);
    }
    /// 2 if the real locus has an oval and an unbounded branch, else 1.
    int branches() const { return discriminant() > Rational(0) ? 2 : 1; }

    RatPoly rhs() const { return RatPoly({b, a, Rational(0), Rational(1)}); }
    Rational rhsAt(const Rational& x) const { return ((x * x) + a) * x + b; }
    double rhsAt(double x) const { return (x * x + toDouble(a)) * x + toDouble(b); }
};

/// A point of the cubic: exact rational coordinates when available,
/// double approximations always (for affine points).
struct CubicPoint {
    bool infinity = true;
    bool exact = false;
    Rational x, y;         // meaningful when exact
    double xd = 0, yd = 0;  // always filled for affine points

    static CubicPoint O() { return CubicPoint{}; }
    static CubicPoint exactPoint(Rational px, Rational py) {
        CubicPoint p;
        p.infinity = false;
        p.exact = true;
        p.xd = toDouble(px);
        p.yd = toDouble(py);
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    static CubicPoint approxPoint(double px, double py) {
        CubicPoint p;
        p.infinity = false;
        p.exact = false;
        p.xd = px;
        p.yd = py;
        return p;
    }
};

/// Chord-tangent group law with the point at infinity as identity.
/// Exact in, exact out; approximate points are combined in doubles.
inline CubicPoint groupAdd(const WeierstrassCubic& cubic, const CubicPoint& P,
                           const CubicPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;

    if (P.exact && Q.exact) {
        if (P.x == Q.x) {
            if (P.y + Q.y == Rational(0)) return CubicPoint::O();  // vertical chord
            // tangent line (P == Q up to the doubling case)
            Rational s = (Rational(3) * P.x * P.x + cubic.a) / (Rational(2) * P.y);
            Rational x3 = s * s - P.x - Q.x;
            Rational y3 = s * (P.x - x3) - P.y;
            return CubicPoint::exactPoint(x3, y3);
        }
        Rational s = (Q.y - P.y) / (Q.x - P.x);
        Rational x3 = s * s - P.x - Q.x;
        Rational y3 = s * (P.x - x3) - P.y;
        return CubicPoint::exactPoint(x3, y3);
    }

    const double scale = 1.0 + std::abs(P.xd) + std::abs(Q.xd);
    if (std::abs(P.xd - Q.xd) < 1e-12 * scale) {
        if (std::abs(P.yd + Q.yd) < 1e-9 * (1.0 + std::abs(P.yd))) return CubicPoint::O();
        double s = (3 * P.xd * P.xd + toDouble(cubic.a)) / (2 * P.yd);
        double x3 = s * s - P.xd - Q.xd;
        return CubicPoint::approxPoint(x3, s * (P.xd - x3) - P.yd);
    }
    double s = (Q.yd - P.yd) / (Q.xd - P.xd);
    double x3 = s * s - P.xd - Q.xd;
    return CubicPoint::approxPoint(x3, s * (P.xd - x3) - P.yd);
}

inline CubicPoint groupNegate(CubicPoint p) {
    if (p.infinity) return p;
    p.y = -p.y;
    p.yd = -p.yd;
    return p;
}

/// n-fold sum by repeated addition (small n only).
inline CubicPoint groupMultiple(const WeierstrassCubic& cubic, int n, const CubicPoint& P) {
    CubicPoint acc = CubicPoint::O();
    for (int i = 0; i < n; ++i) acc = groupAdd(cubic, acc, P);
    return acc;
}

namespace detail {

/// Division polynomials in x after substituting y^2 = f(x); even-index
/// ones carry the conventional factor 2y, stripped here:
/// psi2 = 2y, psi3, psi4 = 2y*p4, psi5, psi6 = 2y*psi3*(psi5 - p4^2).
struct DivisionPolys {
    RatPoly psi3;       // vanishing <=> 3-torsion abscissa
    RatPoly p4;         // psi4 / (2y)
    RatPoly psi5;
    RatPoly order6;     // psi5 - p4^2: vanishing <=> abscissa of a point of exact order 6
};

inline DivisionPolys divisionPolys(const WeierstrassCubic& c) {
    const Rational& a = c.a;
    const Rational& b = c.b;
    DivisionPolys d;
    d.psi3 = RatPoly({-a * a, Rational(12) * b, Rational(6) * a, Rational(0), Rational(3)});
    d.p4 = Rational(2) *
           RatPoly({-(Rational(8) * b * b + a * a * a), Rational(-4) * a * b,
                    Rational(-5) * a * a, Rational(20) * b, Rational(5) * a, Rational(0),
                    Rational(1)});
    // psi5 = psi4*psi2^3 - psi3^3 with psi4*psi2^3 = p4 * (2y)^4 = 16 f^2 p4
    RatPoly f = c.rhs();
    d.psi5 = Rational(16) * (f * f * d.p4) - d.psi3 * d.psi3 * d.psi3;
    d.order6 = d.psi5 - d.p4 * d.p4;
    return d;
}

inline void sortByX(std::vector<CubicPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const CubicPoint& p, const CubicPoint& q) {
        if (p.infinity != q.infinity) return q.infinity;
        if (p.xd != q.xd) return p.xd < q.xd;
        return p.yd < q.yd;
    });
}

/// The +-y pair of affine points over an isolated abscissa with f(x) > 0.
inline std::vector<CubicPoint> pointsOver(const WeierstrassCubic& c, const IsolatedRoot& r) {
    std::vector<CubicPoint> out;
    if (r.exact) {
        Rational fx = c.rhsAt(r.value);
        if (fx < Rational(0)) return out;
        if (fx == Rational(0)) {
            out.push_back(CubicPoint::exactPoint(r.value, Rational(0)));
            return out;
        }
        // exact x, algebraic y: exact square root if fx is a perfect
        // rational square, else double approximation
        BigInt num = fx.numerator(), den = fx.denominator();
        BigInt sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
        if (sn * sn == num && sd * sd == den) {
            Rational y(sn, sd);
            out.push_back(CubicPoint::exactPoint(r.value, y));
            out.push_back(CubicPoint::exactPoint(r.value, -y));
            return out;
        }
        double y = std::sqrt(toDouble(fx));
        CubicPoint p = CubicPoint::approxPoint(r.approx, y);
        out.push_back(p);
        out.push_back(CubicPoint::approxPoint(r.approx, -y));
        return out;
    }
    double fx = c.rhsAt(r.approx);
    if (fx <= 0) {
        // the sign of f at an irrational root needs the exact enclosure:
        // f could be positive on the whole bracket while the double
        // midpoint undershoots
        if (c.rhsAt(r.lo) <= Rational(0) && c.rhsAt(r.hi) <= Rational(0)) return out;
        fx = std::max(fx, 0.0);
    }
    double y = std::sqrt(fx);
    out.push_back(CubicPoint::approxPoint(r.approx, y));
    out.push_back(CubicPoint::approxPoint(r.approx, -y));
    return out;
}

}  // namespace detail

/// All real points P with n*P = O, for n in {2, 3, 6}: the point at
/// infinity, the y = 0 points (n even), and the division-polynomial
/// abscissae that lie under the real locus.
inline std::vector<CubicPoint> realTorsion(const WeierstrassCubic& cubic, int n) {
    if (n != 2 && n != 3 && n != 6)
        throw std::invalid_argument("real_torsion supports n in {2, 3, 6}");
    std::vector<CubicPoint> out{CubicPoint::O()};

    if (n == 2 || n == 6) {
        for (const auto& r : realRoots(cubic.rhs())) {
            if (r.exact)
                out.push_back(CubicPoint::exactPoint(r.value, Rational(0)));
            else
                out.push_back(CubicPoint::approxPoint(r.approx, 0.0));
        }
    }
    if (n == 3 || n == 6) {
        detail::DivisionPolys dp = detail::divisionPolys(cubic);
        for (const auto& r : realRoots(dp.psi3))
            for (auto& p : detail::pointsOver(cubic, r)) out.push_back(p);
        if (n == 6) {
            for (const auto& r : realRoots(dp.order6))
                for (auto& p : detail::pointsOver(cubic, r)) out.push_back(p);
        }
    }
    detail::sortByX(out);
    return out;
}

/// Inflection and sextactic points of the cubic: inflections are the real
/// 3-torsion points, sextactic points the rest of the real 6-torsion.
struct CubicClassification {
    std::vector<CubicPoint> inflections;
    std::vector<CubicPoint> sextactic;
    // branch assignment: the unbounded identity component versus the oval
    int identityInflections = 0, identitySextactic = 0;
    int ovalInflections = 0, ovalSextactic = 0;
};

inline CubicClassification classifyCubicPoints(const WeierstrassCubic& cubic) {
    CubicClassification out;
    out.inflections = realTorsion(cubic, 3);
    std::vector<CubicPoint> six = realTorsion(cubic, 6);

    auto isInflection = [&](const CubicPoint& p) {
        for (const auto& q : out.inflections) {
            if (p.infinity || q.infinity) {
                if (p.infinity && q.infinity) return true;
                continue;
            }
            if (std::abs(p.xd - q.xd) < 1e-9 && std::abs(p.yd - q.yd) < 1e-9) return true;
        }
        return false;
    };
    for (const auto& p : six)
        if (!isInflection(p)) out.sextactic.push_back(p);

    // two branches iff the right-hand side has three real roots e1<e2<e3;
    // the oval lives over [e1, e2], the identity component over [e3, inf)
    double ovalLo = 0, ovalHi = 0;
    bool hasOval = cubic.branches() == 2;
    if (hasOval) {
        auto roots = realRoots(cubic.rhs());
        ovalLo = roots[0].approx;
        ovalHi = roots[1].approx;
    }
    auto onOval = [&](const CubicPoint& p) {
        return hasOval && !p.infinity && p.xd <= ovalHi + 1e-9 && p.xd >= ovalLo - 1e-9;
    };
    for (const auto& p : out.inflections) (onOval(p) ? out.ovalInflections
                                                     : out.identityInflections)++;
    for (const auto& p : out.sextactic) (onOval(p) ? out.ovalSextactic
                                                   : out.identitySextactic)++;
    return out;
}

/// Number of sextactic points of a regular complex curve of degree d with
/// inflection multiplicities nu_i: 3d(5d-11) - sum(4 nu_i - 3).
inline long long cayleyCount(int d, const std::vector<int>& inflectionMultiplicities) {
    if (d < 3) throw std::invalid_argument("cayley_count needs degree >= 3");
    long long sumNu = 0, penalty = 0;
    for (int nu : inflectionMultiplicities) {
        sumNu += nu;
        penalty += 4LL * nu - 3;
    }
    if (sumNu != 3LL * d * (d - 2))
        throw std::invalid_argument(
            "inflection multiplicities are inconsistent: they must total 3d(d-2)");
    return 3LL * d * (5 * d - 11) - penalty;
}

/// Number of inflection points (with multiplicity) of a regular complex
/// curve of degree d: 3d(d-2).
inline long long pluckerCount(int d) {
    if (d < 3) throw std::invalid_argument("plucker_count needs degree >= 3");
    return 3LL * d * (d - 2);
}

/// Parse "p", "-p", or "p/q" into an exact rational.
inline Rational parseRational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto parseInt = [](const std::string& part) {
        if (part.empty() || part == "-" || part == "+")
            throw std::invalid_argument("malformed rational part '" + part + "'");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw std::invalid_argument("malformed rational part '" + part + "'");
        return BigInt(part);
    };
    if (slash == std::string::npos) return Rational(parseInt(s), BigInt(1));
    BigInt den = parseInt(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(parseInt(s.substr(0, slash)), den);
}

}  // namespace osc
