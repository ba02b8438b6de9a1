#pragma once

// Truncated Taylor arithmetic. A Jet stores the coefficients of a Taylor
// expansion about a base point; arithmetic propagates them exactly through
// +,-,*,/ and the elementary functions, so derivatives of composite
// expressions come out to machine precision without finite differencing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace osc {

/// Maximum derivative order carried by a Jet (coefficients 0..kMaxJetOrder).
inline constexpr int kMaxJetOrder = 9;

struct EvalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Taylor coefficients a[i] = f^(i)(t0)/i! truncated at a runtime order.
class Jet {
  public:
    Jet() = default;

    static Jet constant(double value, int order) {
        Jet j(order);
        j.a_[0] = value;
        return j;
    }

    /// The identity function t at base point t0.
    static Jet variable(double t0, int order) {
        Jet j(order);
        j.a_[0] = t0;
        if (order >= 1) j.a_[1] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double value() const { return a_[0]; }

    /// i-th Taylor coefficient f^(i)/i!.
    double coeff(int i) const { return a_[i]; }

    /// i-th derivative value (coefficient times i!).
    double derivative(int i) const {
        double fact = 1.0;
        for (int k = 2; k <= i; ++k) fact *= k;
        return a_[i] * fact;
    }

    /// Termwise derivative as a Jet of one lower order.
    Jet differentiated() const {
        Jet r(std::max(order_ - 1, 0));
        for (int i = 0; i < order_; ++i) r.a_[i] = (i + 1) * a_[i + 1];
        return r;
    }

    friend Jet operator+(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order_, y.order_));
        for (int i = 0; i <= r.order_; ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Jet operator-(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order_, y.order_));
        for (int i = 0; i <= r.order_; ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend Jet operator-(const Jet& x) {
        Jet r(x.order_);
        for (int i = 0; i <= r.order_; ++i) r.a_[i] = -x.a_[i];
        return r;
    }
    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order_, y.order_));
        for (int i = 0; i <= r.order_; ++i) {
            double s = 0.0;
            for (int j = 0; j <= i; ++j) s += x.a_[j] * y.a_[i - j];
            r.a_[i] = s;
        }
        return r;
    }
    friend Jet operator*(double c, const Jet& y) {
        Jet r(y.order_);
        for (int i = 0; i <= r.order_; ++i) r.a_[i] = c * y.a_[i];
        return r;
    }
    friend Jet operator*(const Jet& x, double c) { return c * x; }
    friend Jet operator+(const Jet& x, double c) {
        Jet r = x;
        r.a_[0] += c;
        return r;
    }
    friend Jet operator+(double c, const Jet& x) { return x + c; }
    friend Jet operator-(const Jet& x, double c) { return x + (-c); }
    friend Jet operator-(double c, const Jet& x) { return -x + c; }

    friend Jet operator/(const Jet& x, const Jet& y) {
        int n = std::min(x.order_, y.order_);
        if (y.a_[0] == 0.0)
            throw EvalDomainError("division by zero in jet arithmetic");
        Jet r(n);
        for (int i = 0; i <= n; ++i) {
            double s = x.a_[i];
            for (int j = 1; j <= i; ++j) s -= y.a_[j] * r.a_[i - j];
            r.a_[i] = s / y.a_[0];
        }
        return r;
    }
    friend Jet operator/(const Jet& x, double c) { return x * (1.0 / c); }
    friend Jet operator/(double c, const Jet& x) {
        return Jet::constant(c, x.order_) / x;
    }

    friend Jet sqrt(const Jet& x) {
        if (x.a_[0] <= 0.0)
            throw EvalDomainError("sqrt of non-positive value in jet arithmetic");
        Jet r(x.order_);
        r.a_[0] = std::sqrt(x.a_[0]);
        for (int i = 1; i <= x.order_; ++i) {
            double s = x.a_[i];
            for (int j = 1; j < i; ++j) s -= r.a_[j] * r.a_[i - j];
            r.a_[i] = s / (2.0 * r.a_[0]);
        }
        return r;
    }

    friend Jet exp(const Jet& x) {
        Jet r(x.order_);
        r.a_[0] = std::exp(x.a_[0]);
        for (int i = 1; i <= x.order_; ++i) {
            double s = 0.0;
            for (int j = 1; j <= i; ++j) s += j * x.a_[j] * r.a_[i - j];
            r.a_[i] = s / i;
        }
        return r;
    }

    friend Jet log(const Jet& x) {
        if (x.a_[0] <= 0.0)
            throw EvalDomainError("log of non-positive value in jet arithmetic");
        Jet r(x.order_);
        r.a_[0] = std::log(x.a_[0]);
        for (int i = 1; i <= x.order_; ++i) {
            double s = i * x.a_[i];
            for (int j = 1; j < i; ++j) s -= j * r.a_[j] * x.a_[i - j];
            r.a_[i] = s / (i * x.a_[0]);
        }
        return r;
    }

    friend void sincos(const Jet& x, Jet& s, Jet& c) {
        s = Jet(x.order_);
        c = Jet(x.order_);
        s.a_[0] = std::sin(x.a_[0]);
        c.a_[0] = std::cos(x.a_[0]);
        for (int i = 1; i <= x.order_; ++i) {
            double as = 0.0, ac = 0.0;
            for (int j = 1; j <= i; ++j) {
                as += j * x.a_[j] * c.a_[i - j];
                ac -= j * x.a_[j] * s.a_[i - j];
            }
            s.a_[i] = as / i;
            c.a_[i] = ac / i;
        }
    }

    friend Jet sin(const Jet& x) {
        Jet s, c;
        sincos(x, s, c);
        return s;
    }
    friend Jet cos(const Jet& x) {
        Jet s, c;
        sincos(x, s, c);
        return c;
    }
    friend Jet tan(const Jet& x) {
        Jet s, c;
        sincos(x, s, c);
        if (c.a_[0] == 0.0)
            throw EvalDomainError("tan at a pole in jet arithmetic");
        return s / c;
    }

    /// x^n for integer n (repeated multiplication, any sign of base).
    friend Jet powi(const Jet& x, long long n) {
        if (n < 0) return Jet::constant(1.0, x.order_) / powi(x, -n);
        Jet r = Jet::constant(1.0, x.order_);
        Jet b = x;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    /// x^e for real e; requires a positive base.
    friend Jet pow(const Jet& x, double e) {
        double ip;
        if (std::modf(e, &ip) == 0.0 && std::abs(e) < 64.0)
            return powi(x, static_cast<long long>(ip));
        return exp(e * log(x));
    }

  private:
    explicit Jet(int order) : order_(order) {
        if (order < 0 || order > kMaxJetOrder)
            throw std::invalid_argument("jet order out of range");
        a_.fill(0.0);
    }

    int order_ = 0;
    std::array<double, kMaxJetOrder + 1> a_{};
};

}  // namespace osc
