#pragma once

// Smooth closed parametric curves with an exact derivative-jet oracle.
// Curves come from the text DSL (x=/y= or X=/Y=/Z= plus period=) and are
// validated for regularity and periodicity at construction.

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "osculant/cyclic.hpp"
#include "osculant/expr.hpp"
#include "osculant/jet.hpp"
#include "osculant/projective.hpp"

namespace osc {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Jet2 = std::array<Jet, 2>;
using Jet3 = std::array<Jet, 3>;

/// A k-jet of the curve: value and the first k derivative vectors.
struct CurveJet {
    int order = 0;
    std::vector<Vec3> d;  // d[i] = i-th derivative of the (lifted) curve
};

class ClosedCurve {
  public:
    /// Build from affine component expressions. Validation checks
    /// regularity and periodicity on a sample grid; tests that need open
    /// arcs can switch it off.
    static ClosedCurve fromAffine(ExprPtr x, ExprPtr y, double period, bool validate = true) {
        ClosedCurve c;
        c.x_ = std::move(x);
        c.y_ = std::move(y);
        c.period_ = period;
        if (validate) c.validate();
        return c;
    }

    static ClosedCurve fromHomogeneous(ExprPtr X, ExprPtr Y, ExprPtr Z, double period,
                                       bool validate = true) {
        ClosedCurve c;
        c.x_ = std::move(X);
        c.y_ = std::move(Y);
        c.z_ = std::move(Z);
        c.period_ = period;
        if (validate) c.validate();
        return c;
    }

    double period() const { return period_; }
    bool homogeneousForm() const { return static_cast<bool>(z_); }

    /// Raw jets of the parameterization components (no normalization).
    Jet3 rawJet(double t, int k) const {
        Jet tt = Jet::variable(t, k);
        if (z_) return {x_->eval(tt), y_->eval(tt), z_->eval(tt)};
        return {x_->eval(tt), y_->eval(tt), Jet::constant(1.0, k)};
    }

    /// Jet of the unit-norm homogeneous representative. All projective
    /// formulas downstream use this; rescaling the input expressions only
    /// changes results by a global positive factor.
    Jet3 normalizedJet(double t, int k) const {
        Jet3 g = rawJet(t, k);
        Jet n2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        if (n2.value() <= 0.0)
            throw CurveError("homogeneous representative vanishes at t=" + std::to_string(t));
        Jet n = sqrt(n2);
        return {g[0] / n, g[1] / n, g[2] / n};
    }

    /// Jets of the affine chart (x,y) = (X/Z, Y/Z).
    Jet2 affineJet(double t, int k) const {
        if (!z_) {
            Jet tt = Jet::variable(t, k);
            return {x_->eval(tt), y_->eval(tt)};
        }
        Jet3 g = rawJet(t, k);
        if (std::abs(g[2].value()) < 1e-14 * std::max(std::abs(g[0].value()), std::abs(g[1].value())))
            throw CurveError("curve leaves the z=1 chart at t=" + std::to_string(t));
        return {g[0] / g[2], g[1] / g[2]};
    }

    /// Value and derivatives of the unit-norm lift, as plain vectors.
    CurveJet jet(double t, int k) const {
        Jet3 g = normalizedJet(t, k);
        CurveJet j;
        j.order = k;
        j.d.resize(k + 1);
        for (int i = 0; i <= k; ++i)
            j.d[i] = Vec3(g[0].derivative(i), g[1].derivative(i), g[2].derivative(i));
        return j;
    }

    ProjectivePoint point(double t) const {
        Jet3 g = rawJet(t, 0);
        return ProjectivePoint(Vec3(g[0].value(), g[1].value(), g[2].value()));
    }

    Eigen::Vector2d affinePoint(double t) const {
        Jet2 g = affineJet(t, 0);
        return {g[0].value(), g[1].value()};
    }

    /// Tangent line at t in line coordinates (gamma x gamma').
    Vec3 tangentLine(double t) const {
        CurveJet j = jet(t, 1);
        Vec3 l = j.d[0].cross(j.d[1]);
        double n = l.norm();
        if (n < 1e-14) throw CurveError("vanishing tangent at t=" + std::to_string(t));
        return l / n;
    }

    void validate(int samples = 512) const {
        for (int i = 0; i < samples; ++i) {
            double t = period_ * i / samples;
            Jet3 u = normalizedJet(t, 1);
            double tangent = std::hypot(u[0].derivative(1), u[1].derivative(1),
                                        u[2].derivative(1));
            if (!std::isfinite(tangent) || tangent < 1e-9)
                throw CurveError("regularity violation: vanishing tangent at t=" +
                                 std::to_string(t));
        }
        // periodicity: jets at t and t+period must agree up to one global
        // sign (a lift that returns negated is still closed in P^2)
        for (double t : {0.0, period_ * 0.37, period_ * 0.71}) {
            Jet3 a = normalizedJet(t, 2);
            Jet3 b = normalizedJet(t + period_, 2);
            double dot = 0.0;
            for (int c = 0; c < 3; ++c) dot += a[c].value() * b[c].value();
            double s = dot >= 0 ? 1.0 : -1.0;
            for (int c = 0; c < 3; ++c)
                for (int i = 0; i <= 2; ++i) {
                    double da = a[c].derivative(i), db = s * b[c].derivative(i);
                    if (std::abs(da - db) > 1e-6 * std::max(1.0, std::abs(da)))
                        throw CurveError("period mismatch: jets at t and t+period differ");
                }
        }
    }

  private:
    ExprPtr x_, y_, z_;
    double period_ = 2 * M_PI;
};

/// Parse the curve DSL. Lines of "x = <expr>" / "y = <expr>" (or X,Y,Z),
/// optional "period = <expr>", '#' comments. Unknown keys are rejected.
inline ClosedCurve parseCurve(const std::string& source, bool validate = true) {
    std::optional<ExprPtr> x, y, X, Y, Z;
    double period = 2 * M_PI;
    std::istringstream in(source);
    std::string rawline;
    int lineno = 0;
    while (std::getline(in, rawline)) {
        ++lineno;
        std::string line = rawline;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        // split on ';' so one-line sources work too
        std::vector<std::string> stmts;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t semi = line.find(';', start);
            if (semi == std::string::npos) {
                stmts.push_back(line.substr(start));
                break;
            }
            stmts.push_back(line.substr(start, semi - start));
            start = semi + 1;
        }
        for (const std::string& stmt : stmts) {
            std::size_t eq = stmt.find('=');
            if (eq == std::string::npos) {
                if (stmt.find_first_not_of(" \t\r") != std::string::npos)
                    throw CurveError("line " + std::to_string(lineno) +
                                     ": expected '<name> = <expr>'");
                continue;
            }
            std::string key = stmt.substr(0, eq);
            key.erase(0, key.find_first_not_of(" \t\r"));
            key.erase(key.find_last_not_of(" \t\r") + 1);
            std::string rhs = stmt.substr(eq + 1);
            ExprPtr e;
            try {
                e = ExprParser::parse(rhs);
            } catch (const ParseError& pe) {
                throw ParseError("line " + std::to_string(lineno) + ", '" + key + "': " +
                                     pe.what(),
                                 pe.column + eq + 1);
            }
            if (key == "x") x = e;
            else if (key == "y") y = e;
            else if (key == "X") X = e;
            else if (key == "Y") Y = e;
            else if (key == "Z") Z = e;
            else if (key == "period") {
                if (!e->isConstant())
                    throw CurveError("line " + std::to_string(lineno) + ": period must be constant");
                period = e->constantValue();
                if (!(period > 0)) throw CurveError("period must be positive");
            } else {
                throw CurveError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            }
        }
    }
    if (x && y && !X && !Y && !Z) return ClosedCurve::fromAffine(*x, *y, period, validate);
    if (X && Y && Z && !x && !y) return ClosedCurve::fromHomogeneous(*X, *Y, *Z, period, validate);
    throw CurveError("curve source must declare x=,y= or X=,Y=,Z=");
}

}  // namespace osc
