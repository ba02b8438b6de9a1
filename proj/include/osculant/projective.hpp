#pragma once

// Projective points, lines and conics over the reals. A Conic is a
// symmetric 3x3 form; its defining invariants (projective equality,
// degeneracy, interior orientation) live here.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace osc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Dimensionless degeneracy threshold: |det|/||Q||_F^3 below this means
/// the form has (numerical) rank < 3.
inline constexpr double kConicDegeneracyThreshold = 1e-9;

/// Homogeneous triple with scale-invariant equality. Normalization: unit
/// norm, first coordinate of magnitude > 1e-12 made positive.
class ProjectivePoint {
  public:
    ProjectivePoint() : v_(0, 0, 1) {}
    explicit ProjectivePoint(const Vec3& v) : v_(v) {
        double n = v_.norm();
        if (n == 0.0) throw std::invalid_argument("zero homogeneous triple");
        v_ /= n;
        for (int i = 0; i < 3; ++i) {
            if (std::abs(v_[i]) > 1e-12) {
                if (v_[i] < 0) v_ = -v_;
                break;
            }
        }
    }
    ProjectivePoint(double x, double y, double z) : ProjectivePoint(Vec3(x, y, z)) {}
    static ProjectivePoint affine(double x, double y) { return {x, y, 1.0}; }

    const Vec3& homogeneous() const { return v_; }
    double x() const { return v_[0]; }
    double y() const { return v_[1]; }
    double z() const { return v_[2]; }

    bool approxEquals(const ProjectivePoint& o, double tol = 1e-9) const {
        return (v_ - o.v_).norm() <= tol || (v_ + o.v_).norm() <= tol;
    }

  private:
    Vec3 v_;
};

/// A projective conic x^T M x = 0 stored as the symmetric matrix M,
/// normalized to unit Frobenius norm. When the form is nondegenerate the
/// sign is fixed so that det M > 0, which makes the disk component D_C of
/// the complement exactly {x : x^T M x > 0}. Degenerate forms fall back to
/// a first-significant-coefficient sign rule.
class Conic {
  public:
    Conic() { m_.setZero(); }

    explicit Conic(const Mat3& symmetric) : m_((symmetric + symmetric.transpose()) / 2.0) {
        normalize();
    }

    /// Coefficients (A,B,C,D,E,F) of Ax^2+Bxy+Cy^2+Dxz+Eyz+Fz^2.
    static Conic fromCoefficients(const Eigen::Matrix<double, 6, 1>& c) {
        Mat3 m;
        m << c[0], c[1] / 2, c[3] / 2,
             c[1] / 2, c[2], c[4] / 2,
             c[3] / 2, c[4] / 2, c[5];
        return Conic(m);
    }

    /// Symmetrized product of two lines; always degenerate (rank <= 2).
    static Conic linePair(const Vec3& l1, const Vec3& l2) {
        Mat3 m = (l1 * l2.transpose() + l2 * l1.transpose()) / 2.0;
        return Conic(m);
    }
    static Conic doubleLine(const Vec3& l) { return Conic(Mat3(l * l.transpose())); }

    const Mat3& matrix() const { return m_; }

    Eigen::Matrix<double, 6, 1> coefficients() const {
        Eigen::Matrix<double, 6, 1> c;
        c << m_(0, 0), 2 * m_(0, 1), m_(1, 1), 2 * m_(0, 2), 2 * m_(1, 2), m_(2, 2);
        return c;
    }

    double evaluate(const Vec3& p) const { return p.dot(m_ * p); }
    double evaluate(const ProjectivePoint& p) const { return evaluate(p.homogeneous()); }

    bool degenerate() const { return degenerate_; }

    /// Positive exactly on the disk side for nondegenerate conics.
    bool interiorOriented() const { return !degenerate_; }

    /// Flip the overall sign (used by pencil code that fixes its own
    /// orientation; equality is unaffected).
    Conic negated() const {
        Conic c = *this;
        c.m_ = -c.m_;
        return c;
    }

    bool approxEquals(const Conic& o, double tol = 1e-9) const {
        double dplus = (m_ - o.m_).norm();
        double dminus = (m_ + o.m_).norm();
        return std::min(dplus, dminus) <= tol;
    }

  private:
    void normalize() {
        double n = m_.norm();
        if (n == 0.0) throw std::invalid_argument("zero conic form");
        m_ /= n;
        double det = m_.determinant();
        degenerate_ = std::abs(det) < kConicDegeneracyThreshold;
        if (!degenerate_) {
            if (det < 0) m_ = -m_;
        } else {
            const Eigen::Matrix<double, 6, 1> c = coefficients();
            for (int i = 0; i < 6; ++i) {
                if (std::abs(c[i]) > 1e-12) {
                    if (c[i] < 0) m_ = -m_;
                    break;
                }
            }
        }
    }

    Mat3 m_;
    bool degenerate_ = false;
};

/// Line through two projective points (cross product in line coordinates).
inline Vec3 lineThrough(const Vec3& p, const Vec3& q) { return p.cross(q); }

}  // namespace osc
