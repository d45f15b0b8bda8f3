#pragma once

// Time integrators for the semi-discrete system u' = Q u + s(t): classical
// explicit RK4 and the 3-stage Gauss-Legendre implicit Runge-Kutta method
// (order 6).  The GL6 stage system is linear; its 3n x 3n matrix is
// factored once per (Q, dt) and reused across steps.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"

namespace bfd {

enum class Method { RK4, GL6 };

struct IntegratorConfig {
    Method method = Method::RK4;
    double dt = 0.0;
    double t_final = 0.0;
};

// y = Q x
using ApplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;
// s(t) written into the output vector
using SourceFn = std::function<void(double, std::vector<double>&)>;

/// Largest |dt * lambda| on the negative real axis inside the RK4 stability
/// region.
inline constexpr double rk4_real_axis_limit = 2.785;

/// Spectral-radius estimate of the block scheme: the stiff symbol branch
/// approaches 32(c-2)/(3h^2) per space dimension.
inline double spectral_radius_estimate(double c, double h, int dims = 1) {
    return dims * 32.0 * std::abs(c - 2.0) / (3.0 * h * h);
}

inline double rk4_stable_dt(double c, double h, int dims = 1, double safety = 0.9) {
    return safety * rk4_real_axis_limit / spectral_radius_estimate(c, h, dims);
}

class Rk4Stepper {
public:
    explicit Rk4Stepper(int n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n), s_(n), comp_(n) {}

    void step(const ApplyFn& apply, const SourceFn& source, std::vector<double>& u, double t,
              double dt) {
        const int n = int(u.size());
        rhs(apply, source, u, t, k1_);
        axpy(u, 0.5 * dt, k1_, tmp_);
        rhs(apply, source, tmp_, t + 0.5 * dt, k2_);
        axpy(u, 0.5 * dt, k2_, tmp_);
        rhs(apply, source, tmp_, t + 0.5 * dt, k3_);
        axpy(u, dt, k3_, tmp_);
        rhs(apply, source, tmp_, t + dt, k4_);
        // compensated accumulation: runs reach ~1e5 steps, where plain
        // summation rounding would dominate the fine-grid solution error
        for (int i = 0; i < n; ++i) {
            double delta = dt / 6.0 * (k1_[i] + 2 * k2_[i] + 2 * k3_[i] + k4_[i]);
            double y = delta - comp_[i];
            double t2 = u[i] + y;
            comp_[i] = (t2 - u[i]) - y;
            u[i] = t2;
        }
    }

private:
    void rhs(const ApplyFn& apply, const SourceFn& source, const std::vector<double>& u, double t,
             std::vector<double>& out) {
        apply(u, out);
        if (source) {
            source(t, s_);
            for (size_t i = 0; i < out.size(); ++i) out[i] += s_[i];
        }
    }
    static void axpy(const std::vector<double>& u, double a, const std::vector<double>& k,
                     std::vector<double>& out) {
        for (size_t i = 0; i < u.size(); ++i) out[i] = u[i] + a * k[i];
    }

    std::vector<double> k1_, k2_, k3_, k4_, tmp_, s_, comp_;
};

/// Gauss-Legendre s=3 Butcher tableau.
struct Gl6Tableau {
    std::array<std::array<double, 3>, 3> a;
    std::array<double, 3> b, c;
};

inline Gl6Tableau gl6_tableau() {
    const double r = std::sqrt(15.0);
    Gl6Tableau t;
    t.a = {{{5.0 / 36, 2.0 / 9 - r / 15, 5.0 / 36 - r / 30},
            {5.0 / 36 + r / 24, 2.0 / 9, 5.0 / 36 - r / 24},
            {5.0 / 36 + r / 30, 2.0 / 9 + r / 15, 5.0 / 36}}};
    t.b = {5.0 / 18, 4.0 / 9, 5.0 / 18};
    t.c = {0.5 - r / 10, 0.5, 0.5 + r / 10};
    return t;
}

/// Implicit GL6 stepper for a fixed dense Q and fixed dt.
class Gl6Stepper {
public:
    Gl6Stepper(const MatD& q, double dt) : n_(q.rows()), dt_(dt), q_(q), tab_(gl6_tableau()) {
        MatD m(3 * n_, 3 * n_);
        for (int bi = 0; bi < 3; ++bi)
            for (int i = 0; i < n_; ++i) {
                m(bi * n_ + i, bi * n_ + i) = 1.0;
                for (int bj = 0; bj < 3; ++bj) {
                    const double w = dt * tab_.a[bi][bj];
                    if (w == 0.0) continue;
                    for (int j = 0; j < n_; ++j) m(bi * n_ + i, bj * n_ + j) -= w * q_(i, j);
                }
            }
        lu_ = lu_factor(std::move(m));
        if (lu_.singular) throw std::runtime_error("gl6: singular stage system");
        rhs_.resize(3 * n_);
        qu_.resize(n_);
        s_.resize(n_);
        comp_.assign(n_, 0.0);
    }

    void step(const SourceFn& source, std::vector<double>& u, double t) {
        for (int i = 0; i < n_; ++i) {
            double acc = 0;
            for (int j = 0; j < n_; ++j) acc += q_(i, j) * u[j];
            qu_[i] = acc;
        }
        for (int bi = 0; bi < 3; ++bi) {
            if (source) {
                source(t + tab_.c[bi] * dt_, s_);
                for (int i = 0; i < n_; ++i) rhs_[bi * n_ + i] = qu_[i] + s_[i];
            } else {
                for (int i = 0; i < n_; ++i) rhs_[bi * n_ + i] = qu_[i];
            }
        }
        lu_solve_inplace(lu_, rhs_);
        for (int i = 0; i < n_; ++i) {
            double delta =
                dt_ * (tab_.b[0] * rhs_[i] + tab_.b[1] * rhs_[n_ + i] + tab_.b[2] * rhs_[2 * n_ + i]);
            double y = delta - comp_[i];
            double t2 = u[i] + y;
            comp_[i] = (t2 - u[i]) - y;
            u[i] = t2;
        }
    }

    double dt() const { return dt_; }

private:
    int n_;
    double dt_;
    MatD q_;
    Gl6Tableau tab_;
    Lu<double> lu_;
    std::vector<double> rhs_, qu_, s_, comp_;
};

/// March u from t=0 to t_final; the last step is shortened when t_final is
/// not a multiple of dt (for GL6 a second factorization covers it).
template <typename OpLike>
std::vector<double> integrate(const OpLike& op, std::vector<double> u, const IntegratorConfig& cfg,
                              const SourceFn& source) {
    if (!(cfg.dt > 0)) throw std::invalid_argument("integrate: dt must be positive");
    const double tf = cfg.t_final;
    long nsteps = long(std::floor(tf / cfg.dt + 1e-12));
    double rem = tf - nsteps * cfg.dt;
    if (rem < 1e-12 * std::max(1.0, tf)) rem = 0.0;

    ApplyFn apply = [&op](const std::vector<double>& x, std::vector<double>& y) { op.apply(x, y); };

    double t = 0;
    if (cfg.method == Method::RK4) {
        Rk4Stepper stepper(int(u.size()));
        for (long s = 0; s < nsteps; ++s, t += cfg.dt) stepper.step(apply, source, u, t, cfg.dt);
        if (rem > 0) stepper.step(apply, source, u, t, rem);
    } else {
        const MatD q = op.dense();
        Gl6Stepper stepper(q, cfg.dt);
        for (long s = 0; s < nsteps; ++s, t += cfg.dt) stepper.step(source, u, t);
        if (rem > 0) {
            Gl6Stepper last(q, rem);
            last.step(source, u, t);
        }
    }
    return u;
}

} // namespace bfd
