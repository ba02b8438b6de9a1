#pragma once

// Equi-affine curvature via local graph coordinates: rotate so the
// tangent is the x-axis, reparameterize as y(x) by chain-rule jets, and
// evaluate mu = -(1/(9 y''^{8/3}))(5 y'''^2 - 3 y'''' y'').

#include <cmath>
#include <stdexcept>

#include "osculant/curve.hpp"

namespace osc {

struct InflectionCurvatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double affineCurvature(const ClosedCurve& curve, double t) {
    Jet2 g = curve.affineJet(t, 5);

    // tangent-aligned coordinates at gamma(t)
    double dx = g[0].derivative(1), dy = g[1].derivative(1);
    double speed = std::hypot(dx, dy);
    if (speed < 1e-14) throw InflectionCurvatureError("vanishing tangent");
    double ct = dx / speed, st = dy / speed;
    Jet u = ct * (g[0] - g[0].value()) + st * (g[1] - g[1].value());
    Jet v = -st * (g[0] - g[0].value()) + ct * (g[1] - g[1].value());

    // derivatives of v with respect to u: d/du = (1/u') d/dt
    Jet du = u.differentiated();
    Jet g1 = v.differentiated() / du;   // dv/du
    Jet g2 = g1.differentiated() / du;  // d2v/du2
    Jet g3 = g2.differentiated() / du;
    Jet g4 = g3.differentiated() / du;

    double y2 = g2.value(), y3 = g3.value(), y4 = g4.value();
    if (y2 < 0) {  // orient the graph so y'' > 0; the formula is invariant
        y2 = -y2;
        y3 = -y3;
        y4 = -y4;
    }
    if (y2 < 1e-12)
        throw InflectionCurvatureError("affine curvature undefined at inflection (y''=0)");
    return -(5.0 * y3 * y3 - 3.0 * y4 * y2) / (9.0 * std::pow(y2, 8.0 / 3.0));
}

}  // namespace osc
