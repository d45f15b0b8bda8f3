#pragma once

// Convergence-study harness: manufactured traveling-wave runs over N and c,
// error norms at the final time with optional post-processing, and
// least-squares rate fits.

#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "manufactured.hpp"
#include "operator2d.hpp"
#include "postprocess.hpp"
#include "time_integration.hpp"

namespace bfd {

enum class Case { periodic_1d, dirichlet_1d, periodic_2d, dirichlet_2d };
enum class Postprocess { none, spectral, poly };

inline const char* case_name(Case k) {
    switch (k) {
        case Case::periodic_1d: return "periodic_1d";
        case Case::dirichlet_1d: return "dirichlet_1d";
        case Case::periodic_2d: return "periodic_2d";
        case Case::dirichlet_2d: return "dirichlet_2d";
    }
    return "?";
}

struct ExperimentSpec {
    Case kind = Case::periodic_1d;
    std::vector<int> n_list;
    std::vector<double> c_list{0.0, -0.25, -4.0 / 13};
    Method integrator = Method::GL6;
    Postprocess postprocess = Postprocess::none;
    double t_final = 1.0;
    double dt_user = 0.0; // 0: automatic (GL6: h; RK4: stability bound)
    bool temporal_check = true;
    int jobs = 1;

    // wave number of the exact solution exp(cos(k (x [+ y] - t))) on [0,1]
    double wave_number() const {
        return (kind == Case::periodic_1d || kind == Case::periodic_2d)
                   ? 2.0 * std::numbers::pi
                   : 1.0;
    }
};

/// Paper-default study for each case.
inline ExperimentSpec default_spec(Case kind) {
    ExperimentSpec s;
    s.kind = kind;
    switch (kind) {
        case Case::periodic_1d:
            s.n_list = {16, 32, 64, 96};
            s.integrator = Method::GL6;
            break;
        case Case::dirichlet_1d:
            s.n_list = {24, 36, 48, 72, 84};
            s.integrator = Method::RK4;
            break;
        case Case::periodic_2d:
            s.n_list = {50, 60, 70, 80};
            s.integrator = Method::RK4;
            break;
        case Case::dirichlet_2d:
            s.n_list = {24, 36, 48, 60};
            s.integrator = Method::RK4;
            break;
    }
    return s;
}

struct ConvergenceRow {
    int n = 0;
    double h = 0;
    double err_l2 = 0, err_linf = 0, err_post_l2 = 0;
};

struct ConvergenceTable {
    Case kind;
    double c = 0;
    std::vector<ConvergenceRow> rows;
    double fitted_rate = 0;
    double fitted_rate_post = 0;
    std::vector<double> pair_rates;
    bool monotone = false;
    bool temporal_ok = true;
};

/// Least-squares slope of log10(error) against log10(h).
inline double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs) {
    if (hs.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
    double mh = 0, me = 0;
    for (size_t i = 0; i < hs.size(); ++i) {
        if (!(errs[i] > 0)) throw std::invalid_argument("fit_rate: errors must be positive");
        mh += std::log10(hs[i]);
        me += std::log10(errs[i]);
    }
    mh /= hs.size();
    me /= errs.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < hs.size(); ++i) {
        num += (std::log10(hs[i]) - mh) * (std::log10(errs[i]) - me);
        den += (std::log10(hs[i]) - mh) * (std::log10(hs[i]) - mh);
    }
    return num / den;
}

namespace detail {

inline BoundaryData wave_boundary_1d(const TravelingWave1D& w, double a, double b) {
    BoundaryData bd;
    bd.g_left = [=](double t) { return w.u(a, t); };
    bd.g_right = [=](double t) { return w.u(b, t); };
    bd.uxx_left = [=](double t) { return w.u_xx(a, t); };
    bd.uxx_right = [=](double t) { return w.u_xx(b, t); };
    bd.uxxxx_left = [=](double t) { return w.u_xxxx(a, t); };
    bd.uxxxx_right = [=](double t) { return w.u_xxxx(b, t); };
    return bd;
}

inline BoundaryData2D wave_boundary_2d_x(const TravelingWave2D& w, double lo, double hi) {
    BoundaryData2D bd;
    bd.g_lo = [=](double y, double t) { return w.u(lo, y, t); };
    bd.g_hi = [=](double y, double t) { return w.u(hi, y, t); };
    bd.uxx_lo = [=](double y, double t) { return w.deriv(2, 0, 0, lo, y, t); };
    bd.uxx_hi = [=](double y, double t) { return w.deriv(2, 0, 0, hi, y, t); };
    bd.uxxxx_lo = [=](double y, double t) { return w.deriv(4, 0, 0, lo, y, t); };
    bd.uxxxx_hi = [=](double y, double t) { return w.deriv(4, 0, 0, hi, y, t); };
    return bd;
}

inline BoundaryData2D wave_boundary_2d_y(const TravelingWave2D& w, double lo, double hi) {
    BoundaryData2D bd;
    bd.g_lo = [=](double x, double t) { return w.u(x, lo, t); };
    bd.g_hi = [=](double x, double t) { return w.u(x, hi, t); };
    bd.uxx_lo = [=](double x, double t) { return w.deriv(0, 2, 0, x, lo, t); };
    bd.uxx_hi = [=](double x, double t) { return w.deriv(0, 2, 0, x, hi, t); };
    bd.uxxxx_lo = [=](double x, double t) { return w.deriv(0, 4, 0, x, lo, t); };
    bd.uxxxx_hi = [=](double x, double t) { return w.deriv(0, 4, 0, x, hi, t); };
    return bd;
}

struct RunResult {
    ConvergenceRow row;
};

// RK4 march with extended-precision state.  The 1D runs reach ~1e5 steps at
// the parabolic stability limit; in plain double the per-step stencil and
// accumulation rounding floors the fine-grid error near 1e-12, above the
// c = -4/13 solution error on the finest grids.
inline GridFn<double> integrate_rk4_extended(const Operator1D& op, const GridFn<double>& u0,
                                             double dt, double t_final,
                                             const TravelingWave1D& wave) {
    using ld = long double;
    const int n = op.size();
    std::vector<ld> u(u0.begin(), u0.end()), k1(n), k2(n), k3(n), k4(n), tmp(n), sbuf(n);
    auto rhs = [&](const std::vector<ld>& x, double t, std::vector<ld>& out) {
        for (int i = 0; i < n; ++i) {
            ld acc = 0;
            for (const auto& e : op.rows[i]) acc += (ld)e.val * x[e.col];
            out[i] = acc;
        }
        op.source(t, sbuf); // boundary terms in extended precision
        for (int i = 0; i < n; ++i) out[i] += sbuf[i] + (ld)wave.forcing(op.grid.node(i), t);
    };
    long nsteps = long(std::floor(t_final / dt + 1e-12));
    double rem = t_final - nsteps * dt;
    if (rem < 1e-12 * std::max(1.0, t_final)) rem = 0.0;
    double t = 0;
    auto advance = [&](double step) {
        rhs(u, t, k1);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + ld(0.5 * step) * k1[i];
        rhs(tmp, t + 0.5 * step, k2);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + ld(0.5 * step) * k2[i];
        rhs(tmp, t + 0.5 * step, k3);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + ld(step) * k3[i];
        rhs(tmp, t + step, k4);
        for (int i = 0; i < n; ++i)
            u[i] += ld(step) / ld(6.0) * (k1[i] + ld(2) * k2[i] + ld(2) * k3[i] + k4[i]);
    };
    for (long s = 0; s < nsteps; ++s, t += dt) advance(dt);
    if (rem > 0) advance(rem);
    GridFn<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = double(u[i]);
    return out;
}

inline RunResult run_one_1d(const ExperimentSpec& spec, int nb, double c, double dt_scale) {
    const bool periodic = spec.kind == Case::periodic_1d;
    TravelingWave1D w{spec.wave_number()};
    auto g = build_grid_1d(nb, 0.0, 1.0);
    Operator1D op = periodic ? assemble_periodic({c}, g)
                             : assemble_dirichlet({c}, g, wave_boundary_1d(w, 0.0, 1.0));

    double dt = spec.dt_user > 0 ? spec.dt_user
               : spec.integrator == Method::GL6 ? g.h
                                                : rk4_stable_dt(c, g.h, 1);
    dt *= dt_scale;

    SourceFn source = [&](double t, std::vector<double>& s) {
        op.source(t, s);
        for (int m = 0; m < op.size(); ++m) s[m] += w.forcing(g.node(m), t);
    };
    auto u0 = project(g, [&](double x) { return w.u(x, 0.0); });
    const double norm0 = norm(g, u0);
    GridFn<double> u;
    if (spec.integrator == Method::RK4) {
        u = integrate_rk4_extended(op, u0, dt, spec.t_final, w);
    } else {
        IntegratorConfig cfg{spec.integrator, dt, spec.t_final};
        u = integrate(op, u0, cfg, source);
    }

    double norm1 = norm(g, u);
    if (!std::isfinite(norm1) || norm1 > 10.0 * std::max(norm0, 1.0))
        throw std::runtime_error("instability detected: " + std::string(case_name(spec.kind)) +
                                 " c=" + std::to_string(c) + " N=" + std::to_string(nb));

    auto exact = project(g, [&](double x) { return w.u(x, spec.t_final); });
    GridFn<double> err(op.size());
    for (int m = 0; m < op.size(); ++m) err[m] = exact[m] - u[m];

    RunResult r;
    r.row.n = nb;
    r.row.h = g.h;
    r.row.err_l2 = norm(g, err);
    r.row.err_linf = norm(g, err, NormKind::Linf);
    if (spec.postprocess == Postprocess::none) {
        r.row.err_post_l2 = r.row.err_l2;
    } else {
        GridFn<double> filtered = spec.postprocess == Postprocess::spectral
                                      ? filter_periodic(g, u)
                                      : filter_poly_batches(u);
        GridFn<double> perr(op.size());
        for (int m = 0; m < op.size(); ++m) perr[m] = exact[m] - filtered[m];
        r.row.err_post_l2 = norm(g, perr);
    }
    return r;
}

inline RunResult run_one_2d(const ExperimentSpec& spec, int nb, double c, double dt_scale) {
    const bool periodic = spec.kind == Case::periodic_2d;
    TravelingWave2D w{spec.wave_number()};
    auto g = build_grid_2d(nb, nb, 0.0, 1.0, 0.0, 1.0);
    Operator2D op = periodic
                        ? assemble_periodic_2d({c}, g)
                        : assemble_dirichlet_2d({c}, g, wave_boundary_2d_x(w, 0.0, 1.0),
                                                wave_boundary_2d_y(w, 0.0, 1.0));

    double dt = spec.dt_user > 0 ? spec.dt_user
               : spec.integrator == Method::GL6 ? g.gx.h
                                                : rk4_stable_dt(c, g.gx.h, 2);
    dt *= dt_scale;
    if (spec.integrator == Method::GL6 && op.size() > 1024)
        throw std::invalid_argument("GL6 stage solve is dense; use RK4 for 2D runs");

    // all nodes on an anti-diagonal share the wave phase
    const int w2 = 2 * g.ny;
    const int ndiag = 2 * g.nx + 2 * g.ny - 1;
    std::vector<double> diag_vals(ndiag);
    SourceFn source = [&](double t, std::vector<double>& s) {
        if (op.bc == Bc::dirichlet) op.source(t, s);
        else std::fill(s.begin(), s.end(), 0.0);
        for (int d = 0; d < ndiag; ++d) {
            // nodes are at (2k+1)h/4: theta = k_w (x + y - t)
            double xy = (2 * d + 2) * g.gx.h / 4.0;
            diag_vals[d] = w.forcing_of_theta(w.k * (xy - t));
        }
        for (int ix = 0; ix < 2 * g.nx; ++ix) {
            double* row = s.data() + size_t(ix) * w2;
            for (int iy = 0; iy < w2; ++iy) row[iy] += diag_vals[ix + iy];
        }
    };

    auto u0 = project2d(g, [&](double x, double y) { return w.u(x, y, 0.0); });
    const double norm0 = norm2d(g, u0);
    IntegratorConfig cfg{spec.integrator, dt, spec.t_final};
    auto u = integrate(op, u0, cfg, source);

    double norm1 = norm2d(g, u);
    if (!std::isfinite(norm1) || norm1 > 10.0 * std::max(norm0, 1.0))
        throw std::runtime_error("instability detected: " + std::string(case_name(spec.kind)) +
                                 " c=" + std::to_string(c) + " N=" + std::to_string(nb));

    auto exact = project2d(g, [&](double x, double y) { return w.u(x, y, spec.t_final); });
    GridFn<double> err(op.size());
    for (int m = 0; m < op.size(); ++m) err[m] = exact[m] - u[m];

    RunResult r;
    r.row.n = nb;
    r.row.h = g.gx.h;
    r.row.err_l2 = norm2d(g, err);
    r.row.err_linf = norm2d(g, err, NormKind::Linf);
    if (spec.postprocess == Postprocess::none) {
        r.row.err_post_l2 = r.row.err_l2;
    } else {
        FilterSpec fs;
        fs.kind = spec.postprocess == Postprocess::spectral ? FilterKind::spectral_highmode
                                                            : FilterKind::poly_batch;
        auto filtered = filter_2d(g, u, fs);
        GridFn<double> perr(op.size());
        for (int m = 0; m < op.size(); ++m) perr[m] = exact[m] - filtered[m];
        r.row.err_post_l2 = norm2d(g, perr);
    }
    return r;
}

inline RunResult run_one(const ExperimentSpec& spec, int nb, double c, double dt_scale = 1.0) {
    if (spec.kind == Case::periodic_1d || spec.kind == Case::dirichlet_1d)
        return run_one_1d(spec, nb, c, dt_scale);
    return run_one_2d(spec, nb, c, dt_scale);
}

/// Halve dt at the smallest N until the reported errors (raw and, when a
/// filter is active, post-processed) move by < 5%, so the temporal error
/// stays well below the spatial one.  Returns the dt scale factor applied
/// to the whole series (1 when already converged).
inline std::pair<double, bool> calibrate_dt_scale(const ExperimentSpec& spec, double c) {
    const int nb = spec.n_list.front();
    double scale = 1.0;
    auto base = run_one(spec, nb, c, scale).row;
    for (int iter = 0; iter < 8; ++iter) {
        auto halved = run_one(spec, nb, c, scale / 2).row;
        bool raw_ok = std::abs(halved.err_l2 - base.err_l2) < 0.05 * base.err_l2;
        bool post_ok = std::abs(halved.err_post_l2 - base.err_post_l2) < 0.05 * base.err_post_l2;
        if (raw_ok && post_ok) return {scale, true};
        scale /= 2;
        base = halved;
    }
    return {scale, false};
}

} // namespace detail

/// Full study: one table per c.  Runs are independent and execute on a small
/// work pool; results are deterministic because each job writes its own slot.
inline std::vector<ConvergenceTable> run_experiment(const ExperimentSpec& spec) {
    if (spec.n_list.empty()) throw std::invalid_argument("run_experiment: empty N list");
    for (int n : spec.n_list)
        if (n < 3) throw std::invalid_argument("run_experiment: N must be >= 3");

    // dt calibration per c (cheap: smallest N only)
    std::vector<double> dt_scales(spec.c_list.size(), 1.0);
    std::vector<bool> temporal_ok(spec.c_list.size(), true);
    if (spec.temporal_check) {
        std::atomic<size_t> cnext{0};
        std::vector<std::string> cerrors(spec.c_list.size());
        auto cworker = [&] {
            for (;;) {
                size_t ci = cnext.fetch_add(1);
                if (ci >= spec.c_list.size()) break;
                try {
                    auto [scale, ok] = detail::calibrate_dt_scale(spec, spec.c_list[ci]);
                    dt_scales[ci] = scale;
                    temporal_ok[ci] = ok;
                } catch (const std::exception& e) {
                    cerrors[ci] = e.what();
                }
            }
        };
        int nth = std::max(1, std::min<int>(spec.jobs, int(spec.c_list.size())));
        if (nth == 1) {
            cworker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nth; ++t) pool.emplace_back(cworker);
            for (auto& t : pool) t.join();
        }
        for (const auto& e : cerrors)
            if (!e.empty()) throw std::runtime_error(e);
    }

    struct Job {
        size_t ci, ni;
    };
    std::vector<Job> jobs;
    for (size_t ci = 0; ci < spec.c_list.size(); ++ci)
        for (size_t ni = 0; ni < spec.n_list.size(); ++ni) jobs.push_back({ci, ni});
    std::vector<detail::RunResult> results(jobs.size());
    std::vector<std::string> errors(jobs.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            try {
                results[i] = detail::run_one(spec, spec.n_list[jobs[i].ni], spec.c_list[jobs[i].ci],
                                             dt_scales[jobs[i].ci]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    int nthreads = std::max(1, std::min<int>(spec.jobs, int(jobs.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);

    std::vector<ConvergenceTable> tables;
    size_t idx = 0;
    for (size_t ci = 0; ci < spec.c_list.size(); ++ci) {
        ConvergenceTable tab;
        tab.kind = spec.kind;
        tab.c = spec.c_list[ci];
        tab.temporal_ok = temporal_ok[ci];
        std::vector<double> hs, el2, epost;
        for (size_t ni = 0; ni < spec.n_list.size(); ++ni) {
            tab.rows.push_back(results[idx++].row);
            hs.push_back(tab.rows.back().h);
            el2.push_back(tab.rows.back().err_l2);
            epost.push_back(tab.rows.back().err_post_l2);
        }
        tab.monotone = true;
        for (size_t i = 0; i + 1 < el2.size(); ++i)
            if (el2[i + 1] >= el2[i]) tab.monotone = false;
        tab.fitted_rate = fit_rate(hs, el2);
        tab.fitted_rate_post = fit_rate(hs, epost);
        for (size_t i = 0; i + 1 < el2.size(); ++i)
            tab.pair_rates.push_back(std::log10(el2[i] / el2[i + 1]) /
                                     std::log10(hs[i] / hs[i + 1]));
        tables.push_back(std::move(tab));
    }
    return tables;
}

} // namespace bfd
