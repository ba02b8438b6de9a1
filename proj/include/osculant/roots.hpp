#pragma once

// Root isolation on the parameter circle: uniform grid for sign changes,
// bisection, optional Newton polishing, and golden-section refinement of
// |f| minima for even-order zeros.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "osculant/cyclic.hpp"

namespace osc {

using RealFn = std::function<double(double)>;

/// Bisection to absolute width tol on a bracketing interval.
inline double bisectRoot(const RealFn& f, double lo, double hi, double flo, double tol = 1e-12) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// A few Newton steps, guarded to stay in [lo,hi]; falls back to the input.
inline double newtonPolish(const RealFn& f, const RealFn& df, double t, double lo, double hi) {
    double best = t, fbest = std::abs(f(t));
    for (int it = 0; it < 8; ++it) {
        double d = df(t);
        if (d == 0.0 || !std::isfinite(d)) break;
        double step = f(t) / d;
        t -= step;
        if (t < lo || t > hi || !std::isfinite(t)) break;
        double ft = std::abs(f(t));
        if (ft < fbest) {
            best = t;
            fbest = ft;
        }
        if (std::abs(step) < 1e-15) break;
    }
    return best;
}

/// Golden-section minimization of f on [lo,hi].
inline double goldenMinimize(const RealFn& f, double lo, double hi, double tol = 1e-12) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct GridScan {
    std::vector<double> t;
    std::vector<double> f;
    double maxAbs = 0.0;
};

inline GridScan scanPeriodic(const RealFn& f, double period, int grid) {
    GridScan s;
    s.t.resize(grid);
    s.f.resize(grid);
    for (int i = 0; i < grid; ++i) {
        s.t[i] = period * i / grid;
        s.f[i] = f(s.t[i]);
        s.maxAbs = std::max(s.maxAbs, std::abs(s.f[i]));
    }
    return s;
}

/// Sign-change roots of a periodic function, bisected then Newton polished.
inline std::vector<double> periodicSignChangeRoots(const RealFn& f, double period, int grid,
                                                   const RealFn& df = nullptr) {
    GridScan s = scanPeriodic(f, period, grid);
    std::vector<double> roots;
    for (int i = 0; i < grid; ++i) {
        int j = (i + 1) % grid;
        double a = s.t[i], b = s.t[i] + period / grid;
        double fa = s.f[i], fb = s.f[j];
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        if ((fa > 0) == (fb > 0) || fb == 0.0) continue;
        double r = bisectRoot(f, a, b, fa);
        if (df) r = newtonPolish(f, df, r, a, b);
        roots.push_back(wrapParam(r, period));
    }
    return roots;
}

/// Local minima of |f| on the periodic grid that dip below absTol,
/// refined by golden section; candidates adjacent to sign changes are
/// skipped (those belong to the odd-order path).
inline std::vector<double> periodicEvenOrderZeros(const RealFn& f, double period, int grid,
                                                  double relTol = 1e-9) {
    GridScan s = scanPeriodic(f, period, grid);
    double absTol = relTol * s.maxAbs;
    std::vector<double> zeros;
    auto absf = [&](double t) { return std::abs(f(t)); };
    for (int i = 0; i < grid; ++i) {
        int im = (i + grid - 1) % grid, ip = (i + 1) % grid;
        double fm = s.f[im], fi = s.f[i], fp = s.f[ip];
        if (!(std::abs(fi) <= std::abs(fm) && std::abs(fi) <= std::abs(fp))) continue;
        if ((fm > 0) != (fi > 0) || (fi > 0) != (fp > 0)) continue;  // sign change nearby
        double lo = s.t[i] - period / grid, hi = s.t[i] + period / grid;
        double r = goldenMinimize(absf, lo, hi);
        if (std::abs(f(r)) < absTol) zeros.push_back(wrapParam(r, period));
    }
    return zeros;
}

/// Merge parameters closer than tol on the circle (keeping the first).
inline std::vector<double> dedupCyclic(std::vector<double> ts, double period, double tol) {
    std::sort(ts.begin(), ts.end());
    std::vector<double> out;
    for (double t : ts) {
        bool dup = false;
        for (double u : out)
            if (cyclicDistance(t, u, period) < tol) dup = true;
        if (!dup) out.push_back(t);
    }
    return out;
}

}  // namespace osc
