#pragma once

// Affine chart search (hemisphere containment as linear feasibility) and
// the convexity classification built on top of it.
//
// A closed curve in P^2 avoids a line l iff a sign-continuous unit lift
// stays in the open half space <l, v> > 0 for some choice of l. Finding
// the best l is the min-norm point of the convex hull of the lifted
// samples (Gilbert's algorithm); a lift with sign monodromy is
// noncontractible and meets every line, which the algorithm sees after
// the antipodal copies are appended.

#include <algorithm>
#include <cmath>
#include <vector>

#include "osculant/special_points.hpp"

namespace osc {

struct AffineChart {
    bool feasible = false;
    Vec3 line = Vec3::Zero();  // avoided line (hemisphere pole), unit norm
    double margin = 0.0;       // min over samples of <line, lift>
    bool noncontractible = false;
};

inline AffineChart findAffineChart(const ClosedCurve& curve, int samples = 1024) {
    const double period = curve.period();
    std::vector<Vec3> v(samples);
    bool flipped = false;
    for (int i = 0; i < samples; ++i) {
        Vec3 p = curve.point(period * i / samples).homogeneous();
        if (i > 0 && p.dot(v[i - 1]) < 0) p = -p;
        v[i] = p;
        if (i == samples - 1) {
            Vec3 back = curve.point(0.0).homogeneous();
            if (back.dot(v[0]) < 0) back = -back;
            if (back.dot(v[i]) < 0) flipped = true;
        }
    }
    AffineChart chart;
    if (flipped) {
        chart.noncontractible = true;
        for (int i = 0; i < samples; ++i) v.push_back(-v[i]);
    }

    // Gilbert's algorithm for the min-norm point of conv{v_i}
    Vec3 w = v[0];
    for (int it = 0; it < 20000; ++it) {
        int best = 0;
        double bestDot = w.dot(v[0]);
        for (size_t i = 1; i < v.size(); ++i) {
            double d = w.dot(v[i]);
            if (d < bestDot) {
                bestDot = d;
                best = static_cast<int>(i);
            }
        }
        double gap = w.squaredNorm() - bestDot;
        if (gap < 1e-14) break;
        Vec3 dir = v[best] - w;
        double denom = dir.squaredNorm();
        if (denom < 1e-30) break;
        double lam = std::clamp(-w.dot(dir) / denom, 0.0, 1.0);
        w += lam * dir;
        if (w.norm() < 1e-9) break;
    }

    if (w.norm() < 1e-6) return chart;  // origin in the hull: infeasible
    Vec3 n = w.normalized();
    double margin = n.dot(v[0]);
    for (const Vec3& p : v) margin = std::min(margin, n.dot(p));
    if (margin <= 1e-9) return chart;
    chart.feasible = true;
    chart.line = n;
    chart.margin = margin;
    return chart;
}

enum class Convexity { StrictlyConvex, Convex, NonConvex, NotInAffinePlane };

inline const char* toString(Convexity c) {
    switch (c) {
        case Convexity::StrictlyConvex: return "strictly_convex";
        case Convexity::Convex: return "convex";
        case Convexity::NonConvex: return "non_convex";
        default: return "not_in_affine_plane";
    }
}

namespace detail {

struct PlanePoint {
    double x, y;
};

inline double cross(const PlanePoint& o, const PlanePoint& a, const PlanePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew monotone chain; returns hull vertices counterclockwise.
inline std::vector<PlanePoint> convexHull(std::vector<PlanePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const PlanePoint& a, const PlanePoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const PlanePoint& a, const PlanePoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<PlanePoint> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline double distanceToSegment(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = p.x - a.x, wy = p.y - a.y;
    double vv = vx * vx + vy * vy;
    double t = vv > 0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
    double dx = wx - t * vx, dy = wy - t * vy;
    return std::hypot(dx, dy);
}

inline double distanceToBoundary(const PlanePoint& p, const std::vector<PlanePoint>& hull) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < hull.size(); ++i)
        best = std::min(best, distanceToSegment(p, hull[i], hull[(i + 1) % hull.size()]));
    return best;
}

}  // namespace detail

/// Convexity classification: project into a feasible affine chart, take
/// the convex hull of the samples, and ask whether every sample lies on
/// the hull boundary within tolerance.
inline Convexity isConvex(const ClosedCurve& curve, int grid = kDefaultGrid) {
    AffineChart chart = findAffineChart(curve);
    if (!chart.feasible) return Convexity::NotInAffinePlane;

    // orthonormal basis of the chart plane
    Vec3 n = chart.line;
    Vec3 e1 = n.unitOrthogonal();
    Vec3 e2 = n.cross(e1);

    const double period = curve.period();
    std::vector<detail::PlanePoint> pts(grid);
    double diameter = 0.0;
    for (int i = 0; i < grid; ++i) {
        Vec3 p = curve.point(period * i / grid).homogeneous();
        if (p.dot(n) < 0) p = -p;
        double z = p.dot(n);
        pts[i] = {p.dot(e1) / z, p.dot(e2) / z};
    }
    for (int i = 0; i < grid; i += 37)
        for (int j = i + 1; j < grid; j += 53)
            diameter = std::max(diameter, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));

    std::vector<detail::PlanePoint> hull = detail::convexHull(pts);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, detail::distanceToBoundary(p, hull));
    if (worst > 1e-7 * diameter) return Convexity::NonConvex;
    return findInflections(curve, grid).empty() ? Convexity::StrictlyConvex : Convexity::Convex;
}

}  // namespace osc
