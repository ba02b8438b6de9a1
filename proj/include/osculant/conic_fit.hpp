#pragma once

// Conic construction: the five-point conic, the osculating conic from
// derivative jets of the Veronese lift, and composition Q(gamma(t)) as a
// jet (the order-of-vanishing engine behind every contact computation).

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "osculant/curve.hpp"
#include "osculant/projective.hpp"

namespace osc {

struct AmbiguousConicError : std::runtime_error {
    AmbiguousConicError(int kernelDim)
        : std::runtime_error("ambiguous conic: kernel dimension " + std::to_string(kernelDim)),
          kernelDim(kernelDim) {}
    int kernelDim;
};

struct InflectionParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Eigen::Matrix<double, 6, 1> veroneseRow(const Vec3& p) {
    Eigen::Matrix<double, 6, 1> r;
    r << p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0] * p[2], p[1] * p[2], p[2] * p[2];
    return r;
}

/// Unique conic through five points: kernel vector of the 5x6 Veronese
/// matrix. Throws AmbiguousConicError when the kernel is not a line.
inline Conic conicThrough(const std::array<ProjectivePoint, 5>& pts) {
    Eigen::Matrix<double, 5, 6> m;
    for (int i = 0; i < 5; ++i) m.row(i) = veroneseRow(pts[i].homogeneous()).transpose();
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 6>> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double scale = sv[0] > 0 ? sv[0] : 1.0;
    int kernelDim = 1;
    for (int i = 4; i >= 1; --i)
        if (sv[i] < 1e-10 * scale) kernelDim = 6 - i;
    if (kernelDim > 1) throw AmbiguousConicError(kernelDim);
    return Conic::fromCoefficients(svd.matrixV().col(5));
}

/// Jets of the six Veronese monomials along the unit-norm lift.
inline std::array<Jet, 6> veroneseJets(const ClosedCurve& curve, double t, int k) {
    Jet3 g = curve.normalizedJet(t, k);
    return {g[0] * g[0], g[0] * g[1], g[1] * g[1], g[0] * g[2], g[1] * g[2], g[2] * g[2]};
}

/// Q(gamma(t)) as a jet of order k; the lift is unit-normalized first so
/// the result is stable under rescaling the homogeneous representative.
inline Jet conicAlongCurve(const Conic& conic, const ClosedCurve& curve, double t, int k) {
    Jet3 g = curve.normalizedJet(t, k);
    const Mat3& m = conic.matrix();
    Jet q = m(0, 0) * (g[0] * g[0]) + m(1, 1) * (g[1] * g[1]) + m(2, 2) * (g[2] * g[2]) +
            2.0 * m(0, 1) * (g[0] * g[1]) + 2.0 * m(0, 2) * (g[0] * g[2]) +
            2.0 * m(1, 2) * (g[1] * g[2]);
    return q;
}

/// Value and derivatives of Q along the curve at t, orders 0..k.
inline std::vector<double> composeJet(const Conic& conic, const ClosedCurve& curve, double t,
                                      int k) {
    Jet q = conicAlongCurve(conic, curve, t, k);
    std::vector<double> d(k + 1);
    for (int i = 0; i <= k; ++i) d[i] = q.derivative(i);
    return d;
}

/// L . gamma(t) as a jet for a line L in line coordinates.
inline Jet lineAlongCurve(const Vec3& line, const ClosedCurve& curve, double t, int k) {
    Jet3 g = curve.normalizedJet(t, k);
    return line[0] * g[0] + line[1] * g[1] + line[2] * g[2];
}

/// det(gamma, gamma', gamma'') of the unit-norm lift; zero exactly at
/// inflection parameters.
inline double inflectionDeterminant(const ClosedCurve& curve, double t) {
    CurveJet j = curve.jet(t, 2);
    Mat3 m;
    m.col(0) = j.d[0];
    m.col(1) = j.d[1];
    m.col(2) = j.d[2];
    return m.determinant();
}

/// d/dt of the inflection determinant (= det(gamma, gamma', gamma''')).
inline double inflectionDeterminantDerivative(const ClosedCurve& curve, double t) {
    CurveJet j = curve.jet(t, 3);
    Mat3 m;
    m.col(0) = j.d[0];
    m.col(1) = j.d[1];
    m.col(2) = j.d[3];
    return m.determinant();
}

/// The unique conic with contact order >= 5 at a non-inflection parameter:
/// kernel of the 5x6 matrix of Veronese-lift derivatives of orders 0..4.
inline Conic osculatingConic(const ClosedCurve& curve, double t) {
    if (std::abs(inflectionDeterminant(curve, t)) < 1e-12)
        throw InflectionParameterError("no osculating conic at inflection parameter t=" +
                                       std::to_string(t));
    std::array<Jet, 6> v = veroneseJets(curve, t, 4);
    Eigen::Matrix<double, 5, 6> m;
    for (int i = 0; i < 5; ++i)
        for (int c = 0; c < 6; ++c) m(i, c) = v[c].derivative(i);
    // scale rows to comparable magnitude before the SVD
    for (int i = 0; i < 5; ++i) {
        double n = m.row(i).norm();
        if (n > 0) m.row(i) /= n;
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 6>> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[4] < 1e-10 * sv[0])
        throw AmbiguousConicError(2);
    Conic q = Conic::fromCoefficients(svd.matrixV().col(5));
    if (q.degenerate())
        throw InflectionParameterError("degenerate osculating kernel at t=" + std::to_string(t));
    // verify contact order >= 5: derivative orders 0..4 of Q(gamma) vanish
    std::vector<double> d = composeJet(q, curve, t, 8);
    double scale = 0.0;
    for (double x : d) scale = std::max(scale, std::abs(x));
    for (int i = 0; i <= 4; ++i)
        if (std::abs(d[i]) >= 1e-7 * std::max(1.0, scale))
            throw std::runtime_error("osculating conic failed contact verification at t=" +
                                     std::to_string(t));
    return q;
}

}  // namespace osc
