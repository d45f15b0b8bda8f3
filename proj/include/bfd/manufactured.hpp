#pragma once

// Manufactured traveling-wave solutions u = exp(cos(k*(x [+ y] - t))) and
// their exact derivatives.  d^n/dth^n exp(cos th) = exp(cos th) * P_n(sin th,
// cos th) with integer polynomials P_n, generated once by differentiating
// term by term.

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "grid.hpp"

namespace bfd {

namespace detail {

// polynomial in (s, c) = (sin, cos): map (pow_s, pow_c) -> integer coefficient
using TrigPoly = std::map<std::pair<int, int>, long long>;

inline TrigPoly trig_diff(const TrigPoly& p) {
    // d/dth [s^a c^b e^{cos th}] = (a s^{a-1} c^{b+1} - b s^{a+1} c^{b-1} - s^{a+1} c^b) e^{cos th}
    TrigPoly q;
    for (const auto& [sc, coef] : p) {
        auto [a, b] = sc;
        if (a > 0) q[{a - 1, b + 1}] += coef * a;
        if (b > 0) q[{a + 1, b - 1}] -= coef * b;
        q[{a + 1, b}] -= coef;
    }
    return q;
}

inline const std::vector<TrigPoly>& expcos_polys() {
    static const std::vector<TrigPoly> polys = [] {
        std::vector<TrigPoly> v;
        v.push_back(TrigPoly{{{0, 0}, 1}});
        for (int n = 1; n <= 10; ++n) v.push_back(trig_diff(v.back()));
        return v;
    }();
    return polys;
}

} // namespace detail

/// n-th derivative of exp(cos(theta)), exact up to rounding, n <= 10.
inline double expcos_deriv(int n, double theta) {
    const auto& poly = detail::expcos_polys().at(n);
    double s = std::sin(theta), c = std::cos(theta);
    double acc = 0;
    for (const auto& [sc, coef] : poly) acc += double(coef) * std::pow(s, sc.first) * std::pow(c, sc.second);
    return std::exp(c) * acc;
}

/// u(x,t) = exp(cos(k*(x - t))).  Space/time derivatives of any order.
struct TravelingWave1D {
    double k = 1.0;

    double theta(double x, double t) const { return k * (x - t); }

    // d^dx/dx^dx d^dt/dt^dt u
    double deriv(int dx, int dt, double x, double t) const {
        double sign = (dt % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(k, dx + dt) * expcos_deriv(dx + dt, theta(x, t));
    }

    double u(double x, double t) const { return deriv(0, 0, x, t); }
    double u_t(double x, double t) const { return deriv(0, 1, x, t); }
    double u_x(double x, double t) const { return deriv(1, 0, x, t); }
    double u_xx(double x, double t) const { return deriv(2, 0, x, t); }
    double u_xxxx(double x, double t) const { return deriv(4, 0, x, t); }

    // forcing making u exact: F = u_t - u_xx
    double forcing(double x, double t) const { return u_t(x, t) - u_xx(x, t); }
    double forcing_t(double x, double t) const { return deriv(0, 2, x, t) - deriv(2, 1, x, t); }
    double forcing_xx(double x, double t) const { return deriv(2, 1, x, t) - deriv(4, 0, x, t); }
};

/// u(x,y,t) = exp(cos(k*(x + y - t))).
struct TravelingWave2D {
    double k = 1.0;

    double theta(double x, double y, double t) const { return k * (x + y - t); }

    double deriv(int dx, int dy, int dt, double x, double y, double t) const {
        double sign = (dt % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(k, dx + dy + dt) * expcos_deriv(dx + dy + dt, theta(x, y, t));
    }

    double u(double x, double y, double t) const { return deriv(0, 0, 0, x, y, t); }
    // F = u_t - u_xx - u_yy; all are k-scaled derivatives of the same profile
    double forcing(double x, double y, double t) const {
        return deriv(0, 0, 1, x, y, t) - 2.0 * deriv(2, 0, 0, x, y, t);
    }

    // phase-only evaluators for the hot path: all nodes on an anti-diagonal
    // share theta
    double u_of_theta(double th) const { return expcos_deriv(0, th); }
    double forcing_of_theta(double th) const {
        return -k * expcos_deriv(1, th) - 2.0 * k * k * expcos_deriv(2, th);
    }
};

} // namespace bfd
