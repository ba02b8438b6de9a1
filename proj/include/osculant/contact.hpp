#pragma once

// Intersection multiplicity of a conic and a curve at a common point, and
// the crossing / one-side classification.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osculant/conic_fit.hpp"

namespace osc {

/// Contact orders above this count as infinite.
inline constexpr int kJetCeiling = 8;

/// Relative tolerance for "this derivative order vanishes".
inline constexpr double kOrderZeroTol = 1e-7;

struct PointNotOnConicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Multiplicity {
    int value = 0;      // meaningful when !infinite
    bool infinite = false;

    bool atLeast(int k) const { return infinite || value >= k; }
    bool odd() const { return !infinite && (value % 2 == 1); }
};

/// Smallest k with nonvanishing k-th derivative of Q(gamma(t)), under the
/// scale-free zero test |d_k| < kOrderZeroTol * max(1, scale), where scale
/// is the largest derivative magnitude over orders 0..8.
inline Multiplicity intersectionMultiplicity(const Conic& conic, const ClosedCurve& curve,
                                             double t) {
    std::vector<double> d = composeJet(conic, curve, t, kJetCeiling);
    double scale = 0.0;
    for (double v : d) scale = std::max(scale, std::abs(v));
    double tol = kOrderZeroTol * std::max(1.0, scale);
    if (std::abs(d[0]) >= tol)
        throw PointNotOnConicError("point not on conic at t=" + std::to_string(t));
    for (int k = 1; k <= kJetCeiling; ++k)
        if (std::abs(d[k]) >= tol) return {k, false};
    return {0, true};
}

/// Order of vanishing of L(gamma(t)) for a line L through gamma(t), with
/// the same scale-free zero test as the conic case.
inline Multiplicity lineContactMultiplicity(const Vec3& line, const ClosedCurve& curve, double t) {
    Jet q = lineAlongCurve(line, curve, t, kJetCeiling);
    double scale = 0.0;
    for (int i = 0; i <= kJetCeiling; ++i) scale = std::max(scale, std::abs(q.derivative(i)));
    double tol = kOrderZeroTol * std::max(1.0, scale);
    for (int k = 0; k <= kJetCeiling; ++k)
        if (std::abs(q.derivative(k)) >= tol) return {k, false};
    return {0, true};
}

enum class CrossingResult { Crosses, OneSide };

/// Parity rule plus an explicit sign-change check; the two must agree for
/// finite multiplicity. Infinite multiplicity is resolved by sign sampling
/// on a punctured neighborhood.
inline CrossingResult crossingTest(const Conic& conic, const ClosedCurve& curve, double t) {
    Multiplicity m = intersectionMultiplicity(conic, curve, t);

    double h0 = 1e-3 * curve.period();
    double ref = 0.0;
    for (int i = 1; i <= 5; ++i) {
        ref = std::max(ref, std::abs(conic.evaluate(curve.point(t + i * h0).homogeneous())));
        ref = std::max(ref, std::abs(conic.evaluate(curve.point(t - i * h0).homogeneous())));
    }
    auto sideSign = [&](double sgn) {
        // dominant sign over a few offsets on one side
        int pos = 0, neg = 0;
        for (int i = 1; i <= 5; ++i) {
            double q = conic.evaluate(curve.point(t + sgn * i * h0).homogeneous());
            if (q > 1e-9 * ref) ++pos;
            else if (q < -1e-9 * ref) ++neg;
        }
        if (pos > neg) return +1;
        if (neg > pos) return -1;
        return 0;
    };
    int sl = sideSign(-1.0), sr = sideSign(+1.0);
    bool signChange = (sl * sr == -1);

    if (m.infinite) return signChange ? CrossingResult::Crosses : CrossingResult::OneSide;

    if (m.odd() != signChange)
        throw std::runtime_error("crossing test: parity and sign sampling disagree at t=" +
                                 std::to_string(t));
    return m.odd() ? CrossingResult::Crosses : CrossingResult::OneSide;
}

}  // namespace osc
