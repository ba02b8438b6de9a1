#pragma once

// Parameter-circle helpers. All interval logic on the circle of a given
// period goes through these to keep wrap-around handling in one place.

#include <cmath>

namespace osc {

/// Reduce t into [0, period).
inline double wrapParam(double t, double period) {
    double r = std::fmod(t, period);
    if (r < 0) r += period;
    return r;
}

/// Signed offset from a to b in (-period/2, period/2].
inline double cyclicOffset(double a, double b, double period) {
    double d = wrapParam(b - a, period);
    if (d > period / 2) d -= period;
    return d;
}

/// Unsigned circle distance.
inline double cyclicDistance(double a, double b, double period) {
    return std::abs(cyclicOffset(a, b, period));
}

/// Forward (counterclockwise) distance from a to b in [0, period).
inline double forwardDistance(double a, double b, double period) {
    return wrapParam(b - a, period);
}

/// Strict cyclic betweenness: walking forward from a one meets b before c.
/// Total and transitive-cyclic on distinct triples.
inline bool cyclicOrdered(double a, double b, double c, double period) {
    return forwardDistance(a, b, period) < forwardDistance(a, c, period);
}

/// An interval on the parameter circle, walked forward from a to b.
struct CyclicInterval {
    double a = 0.0;
    double b = 0.0;
    double period = 2 * M_PI;
    bool openA = false;
    bool openB = false;

    double length() const { return forwardDistance(a, b, period); }

    bool contains(double t) const {
        double d = forwardDistance(a, t, period);
        double len = length();
        if (d == 0.0) return !openA;
        if (d == len) return !openB;
        return d < len;
    }

    /// Open-interior membership regardless of the endpoint flags.
    bool strictlyContains(double t) const {
        double d = forwardDistance(a, t, period);
        return d > 0.0 && d < length();
    }

    static CyclicInterval full(double period) {
        return CyclicInterval{0.0, period, period, false, false};
    }
    bool isFull() const { return length() == 0.0 || length() == period; }
};

}  // namespace osc
