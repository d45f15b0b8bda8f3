// Acceptance suite: end-to-end checks of the solver, symbol analysis,
// stability certification, and convergence studies.  Prints one line per
// criterion; exits nonzero when any fails.

#include <bfd/dg.hpp>
#include <bfd/experiments.hpp>
#include <bfd/postprocess.hpp>
#include <bfd/symbols.hpp>

#include <cstdarg>
#include <cstdio>
#include <numbers>

using namespace bfd;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// --- 1: symbol-operator equivalence -------------------------------------
void criterion_1() {
    double worst = 0;
    for (int n : {8, 16, 32})
        for (double c : {0.0, -0.25, -4.0 / 13, 0.5}) {
            auto v = verify_against_operator({c}, build_grid_1d(n, 0.0, 1.0));
            worst = std::max(worst, v.spectrum_mismatch);
        }
    report(1, worst <= 1e-9,
           fmt("periodic spectrum equals the symbol multiset; worst relative mismatch %.2e "
               "(tolerance 1e-9, relative to the operator norm)",
               worst));
}

// --- 2: 1d periodic convergence ------------------------------------------
void criterion_2() {
    ExperimentSpec spec = default_spec(Case::periodic_1d);
    spec.c_list = {0.0, -0.25, -4.0 / 13};
    spec.postprocess = Postprocess::spectral;
    spec.jobs = 4;
    auto tables = run_experiment(spec);
    double r0 = tables[0].fitted_rate, r1 = tables[1].fitted_rate, r2 = tables[2].fitted_rate;
    double rp = tables[2].fitted_rate_post;
    bool ok = r0 >= 3.7 && r0 <= 4.4 && r1 >= 3.7 && r1 <= 4.4 && r2 >= 4.7 && r2 <= 5.4 &&
              rp >= 5.6 && rp <= 6.5;
    report(2, ok,
           fmt("1d periodic rates: c=0 %.2f, c=-1/4 %.2f (want [3.7,4.4]); c=-4/13 %.2f "
               "(want [4.7,5.4]); spectral post %.2f (want [5.6,6.5])",
               r0, r1, r2, rp));
}

// --- 3: 1d dirichlet convergence -----------------------------------------
void criterion_3() {
    ExperimentSpec spec = default_spec(Case::dirichlet_1d);
    spec.c_list = {0.0, -0.25, -4.0 / 13};
    spec.jobs = 4;
    auto tables = run_experiment(spec);
    bool mono = true, rates_ok = true;
    for (auto& t : tables) {
        mono = mono && t.monotone;
        rates_ok = rates_ok && t.fitted_rate >= 3.7;
    }
    double gap = tables[2].fitted_rate - tables[0].fitted_rate;
    bool ok = mono && rates_ok && gap >= 0.5;
    report(3, ok,
           fmt("1d dirichlet: monotone %s, rates %.2f / %.2f / %.2f (all >= 3.7), "
               "rate(-4/13) - rate(0) = %.2f (want >= 0.5)",
               mono ? "yes" : "NO", tables[0].fitted_rate, tables[1].fitted_rate,
               tables[2].fitted_rate, gap));
}

// --- 4: 2d convergence at reduced sizes ----------------------------------
void criterion_4() {
    ExperimentSpec sp = default_spec(Case::periodic_2d);
    sp.n_list = {16, 24, 32};
    sp.c_list = {0.0, -0.25, -4.0 / 13};
    sp.postprocess = Postprocess::spectral;
    sp.jobs = 4;
    auto tp = run_experiment(sp);

    ExperimentSpec sd = default_spec(Case::dirichlet_2d);
    sd.n_list = {12, 16, 24};
    sd.c_list = {0.0, -0.25, -4.0 / 13};
    sd.jobs = 4;
    auto td = run_experiment(sd);

    auto ordering = [](const std::vector<ConvergenceTable>& t) {
        return t[2].fitted_rate > t[1].fitted_rate && t[1].fitted_rate >= t[0].fitted_rate;
    };
    bool ok = ordering(tp) && ordering(td) && tp[2].fitted_rate >= 4.5 &&
              td[2].fitted_rate >= 4.5 && tp[2].fitted_rate_post >= 5.5;
    report(4, ok,
           fmt("2d rates: periodic %.2f/%.2f/%.2f (post %.2f, want >= 5.5), dirichlet "
               "%.2f/%.2f/%.2f; ordering -4/13 > -1/4 >= 0 in both; c=-4/13 >= 4.5",
               tp[0].fitted_rate, tp[1].fitted_rate, tp[2].fitted_rate, tp[2].fitted_rate_post,
               td[0].fitted_rate, td[1].fitted_rate, td[2].fitted_rate));
}

// --- 5: stability certification -------------------------------------------
void criterion_5() {
    bool ok = true;
    double worst_det = 0;
    for (int k = 0; k < 33; ++k) {
        double c = -0.97 + k * (1.94 / 32);
        auto r = dg::certify_all(c);
        double scale = dg::build_interior_theta(c, dg::certified_interior_params(c)).m.norm_inf();
        worst_det = std::max(worst_det, std::abs(r.interior_det) / std::pow(scale, 4));
        // interior singular + negative semidefinite with exactly one null mode,
        // so the truncated 3x3 form is negative definite
        ok = ok && r.interior.non_positive && r.interior.n_zero == 1 && r.interior.n_neg == 3;
        ok = ok && r.wall.non_positive && r.second_interface.non_positive;
    }
    report(5, ok && worst_det <= 1e-10,
           fmt("33-point c grid: interior form singular (worst scaled |det| %.1e) and NSD with "
               "3 negative modes; wall and second-interface forms NSD",
               worst_det));
}

// --- 6: penalty reconstruction --------------------------------------------
void criterion_6() {
    using namespace bfd::dg;
    auto fam = solve_penalty_coefficients();
    bool ok = fam.has_value();
    if (ok) {
        // printed solution values, exact
        const auto& f = fam->coef;
        auto lit = [](long long n, long long d) { return LinExpr(Rational(n, d)); };
        LinExpr e1 = lit(-5, 18) + LinExpr::variable(Var::c, Rational(-8, 18));
        ok = ok && f[kC1] == lit(7, 3) && f[kC4] == lit(1, 2) && f[kE1] == e1 &&
             f[kD2] == lit(7, 3) && f[kD3] == lit(-1, 2);
        // 5 instantiations rebuild the blocks exactly
        auto tgt = interior_block_exprs();
        long long seeds[5][5] = {{1, 3, 2, -1, 4},  {-4, 13, 0, 5, -2}, {7, 11, -3, 2, 1},
                                 {-2, 5, 9, -7, 3}, {5, 9, -5, 1, -1}};
        for (auto& s : seeds) {
            Rational c(s[0], s[1]);
            auto coef = fam->instantiate(c, Rational(s[2]), Rational(s[3]), Rational(s[4]),
                                         Rational(s[2] - s[3]));
            auto rows = reconstruct_scheme_rows(coef);
            std::array<Rational, kNumVars> vals{c, Rational(0), Rational(0), Rational(0),
                                                Rational(0)};
            for (int v = 0; v < 2; ++v)
                for (int w = 0; w < 6; ++w) ok = ok && rows[v][w] == tgt[v][w].eval_exact(vals);
        }
    }
    report(6, ok,
           "penalty family matches the published solution exactly and five random rational "
           "instantiations rebuild the scheme blocks in exact arithmetic");
}

// --- 7: truncation order properties ----------------------------------------
void criterion_7() {
    TravelingWave1D w{1.0};
    auto slope = [&](double c, bool boundary_diff) {
        std::vector<double> hs, errs;
        for (int nb : {8, 12, 16, 24}) {
            auto g = build_grid_1d(nb, 0, 1);
            BoundaryData bd;
            bd.g_left = [&](double t) { return w.u(0, t); };
            bd.g_right = [&](double t) { return w.u(1, t); };
            bd.uxx_left = [&](double t) { return w.u_xx(0, t); };
            bd.uxx_right = [&](double t) { return w.u_xx(1, t); };
            bd.uxxxx_left = [&](double t) { return w.u_xxxx(0, t); };
            bd.uxxxx_right = [&](double t) { return w.u_xxxx(1, t); };
            auto op = assemble_dirichlet({c}, g, bd);
            ExactSlice ex{[&](double x) { return w.u(x, 0); }, [&](double x) { return w.u_xx(x, 0); },
                          0.0};
            auto te = truncation_error(op, ex);
            double worst = 0;
            if (!boundary_diff) {
                for (int m = 2; m < op.size() - 2; ++m) worst = std::max(worst, std::abs(te[m]));
            } else {
                const double cpart[6] = {1, -5, 10, -10, 5, -1};
                const double base[5] = {-1, 16, -30, 16, -1};
                const double s = 1.0 / (3 * g.h * g.h);
                for (int m : {0, 1, op.size() - 2, op.size() - 1}) {
                    double x0 = g.node(m);
                    double sgn = (m % 2 == 0) ? 1.0 : -1.0;
                    double acc = 0;
                    for (int o = -2; o <= 2; ++o) acc += base[o + 2] * w.u(x0 + o * g.h / 2, 0);
                    double xe = (m % 2 == 0) ? x0 : x0 - g.h / 2;
                    double cacc = 0;
                    for (int o = -2; o <= 3; ++o) cacc += cpart[o + 2] * w.u(xe + o * g.h / 2, 0);
                    double te_int = w.u_xx(x0, 0) - s * (acc + sgn * c * cacc);
                    worst = std::max(worst, std::abs(te[m] - te_int));
                }
            }
            hs.push_back(std::log10(g.h));
            errs.push_back(std::log10(worst));
        }
        double mh = 0, me = 0, num = 0, den = 0;
        for (size_t i = 0; i < hs.size(); ++i) { mh += hs[i]; me += errs[i]; }
        mh /= hs.size();
        me /= errs.size();
        for (size_t i = 0; i < hs.size(); ++i) {
            num += (hs[i] - mh) * (errs[i] - me);
            den += (hs[i] - mh) * (hs[i] - mh);
        }
        return num / den;
    };
    double s_int = std::min(slope(-0.25, false), slope(-4.0 / 13, false));
    double s_diff = std::min(slope(-0.25, true), slope(-4.0 / 13, true));

    // interior stencils exact on quartics
    bool quartic_ok = true;
    for (double c : {0.0, -4.0 / 13, 0.6}) {
        auto g = build_grid_1d(10, 0, 1);
        auto op = assemble_periodic({c}, g);
        auto u = project(g, [](double x) { return 3 * std::pow(x, 4) - x * x * x + 2 * x; });
        auto qu = op.apply(u);
        for (int m = 4; m < op.size() - 4; ++m) {
            double uxx = 36 * g.node(m) * g.node(m) - 6 * g.node(m);
            quartic_ok = quartic_ok && std::abs(qu[m] - uxx) <= 1e-10 / (g.h * g.h);
        }
    }
    report(7, s_int >= 2.8 && s_diff >= 3.8 && quartic_ok,
           fmt("interior TE slope %.2f (want >= 2.8); boundary-minus-interior slope %.2f "
               "(want >= 3.8); quartics differentiated exactly: %s",
               s_int, s_diff, quartic_ok ? "yes" : "NO"));
}

// --- 8: error-evolution prediction ------------------------------------------
void criterion_8() {
    const int nb = 16;
    const double L = 2.0 * std::numbers::pi;
    auto g = build_grid_1d(nb, 0.0, L);
    const double t = 1.0;

    auto run = [&](double c, int omega) {
        auto op = assemble_periodic({c}, g);
        MatD e = op.dense();
        e *= t;
        MatD prop = expm(e);
        // initial data e^{i w x}: evolve real and imaginary parts separately
        GridFn<double> ur(op.size()), ui(op.size());
        for (int m = 0; m < op.size(); ++m) {
            ur[m] = std::cos(omega * g.node(m));
            ui[m] = std::sin(omega * g.node(m));
        }
        auto vr = prop * ur;
        auto vi = prop * ui;
        GridFn<cplx> v(op.size());
        for (int m = 0; m < op.size(); ++m) v[m] = cplx(vr[m], vi[m]);
        // extract the omega and nu coefficients of v
        int nu = omega - nb;
        cplx aw(0), an(0);
        for (int m = 0; m < op.size(); ++m) {
            aw += v[m] * std::exp(cplx(0, -omega * g.node(m)));
            an += v[m] * std::exp(cplx(0, -nu * g.node(m)));
        }
        aw /= double(op.size());
        an /= double(op.size());
        return std::pair{aw, an};
    };

    // high mode: |amplitude| matches |c| (w h)^5 e^{-w^2 t} / (1024 |c-2|)
    // within 20 percent (the measured amplitude is real; the printed
    // coefficient carries a stray factor i, so magnitudes are compared)
    bool high_ok = true;
    double worst_rel = 0;
    for (double c : {-0.25, -4.0 / 13, 0.5}) {
        auto [aw, an] = run(c, 1);
        auto pred = predict_error_evolution(1, c, g.h, t, L);
        double rel = std::abs(std::abs(an) - std::abs(pred.high_mode_amp)) /
                     std::abs(pred.high_mode_amp);
        worst_rel = std::max(worst_rel, rel);
        high_ok = high_ok && rel <= 0.2;
    }
    // and vanishes at c = 0
    auto [aw0, an0] = run(0.0, 1);
    bool czero_ok = std::abs(an0) <= 1e-12;

    // low mode at c = -4/13: difference from e^{-w^2 t} decays at slope >= 5.5
    std::vector<double> hs, ds;
    for (int n2 : {8, 16, 32}) {
        auto g2 = build_grid_1d(n2, 0.0, L);
        auto op2 = assemble_periodic({-4.0 / 13}, g2);
        MatD e2 = op2.dense();
        e2 *= t;
        MatD prop2 = expm(e2);
        GridFn<double> ur(op2.size()), ui(op2.size());
        for (int m = 0; m < op2.size(); ++m) {
            ur[m] = std::cos(g2.node(m));
            ui[m] = std::sin(g2.node(m));
        }
        auto vr = prop2 * ur;
        auto vi = prop2 * ui;
        cplx aw(0);
        for (int m = 0; m < op2.size(); ++m)
            aw += cplx(vr[m], vi[m]) * std::exp(cplx(0, -g2.node(m)));
        aw /= double(op2.size());
        hs.push_back(g2.h);
        ds.push_back(std::abs(aw - std::exp(-t)));
    }
    double num = 0, den = 0, mh = 0, me = 0;
    for (size_t i = 0; i < hs.size(); ++i) { mh += std::log10(hs[i]); me += std::log10(ds[i]); }
    mh /= hs.size();
    me /= ds.size();
    for (size_t i = 0; i < hs.size(); ++i) {
        num += (std::log10(hs[i]) - mh) * (std::log10(ds[i]) - me);
        den += (std::log10(hs[i]) - mh) * (std::log10(hs[i]) - mh);
    }
    double low_slope = num / den;

    report(8, high_ok && czero_ok && low_slope >= 5.5,
           fmt("matrix-exponential oracle: high-mode amplitude within %.0f%% of the prediction "
               "(want <= 20%%); vanishes at c=0 (%.1e); low-mode defect slope at c=-4/13 is %.2f "
               "(want >= 5.5)",
               100 * worst_rel, std::abs(an0), low_slope));
}

// --- 9: spectrum non-positivity ----------------------------------------------
void criterion_9() {
    bool ok = true;
    double worst = -1e300;
    for (double c : {0.0, -0.25, -4.0 / 13, 0.5}) {
        for (int nb : {8, 16, 32}) {
            auto g = build_grid_1d(nb, 0.0, 1.0);
            double scale = 30.0 / (g.h * g.h);
            auto evp = eig_general(assemble_periodic({c}, g).dense());
            BoundaryData bd;
            bd.g_left = bd.g_right = bd.uxx_left = bd.uxx_right = bd.uxxxx_left =
                bd.uxxxx_right = [](double) { return 0.0; };
            auto evd = eig_general(assemble_dirichlet({c}, g, bd).dense());
            std::vector<double> re1, re2;
            for (auto& e : evp) re1.push_back(e.real());
            for (auto& e : evd) re2.push_back(e.real());
            for (double r : re1) {
                ok = ok && r <= 1e-10 * scale;
                worst = std::max(worst, r / scale);
            }
            for (double r : re2) {
                ok = ok && r <= 1e-10 * scale;
                worst = std::max(worst, r / scale);
            }
            // 2d spectra are pairwise sums of the 1d ones
            double m1 = *std::max_element(re1.begin(), re1.end());
            double m2 = *std::max_element(re2.begin(), re2.end());
            ok = ok && 2 * m1 <= 1e-10 * 2 * scale && 2 * m2 <= 1e-10 * 2 * scale;
        }
    }
    report(9, ok,
           fmt("1d and 2d spectra (periodic and dirichlet) stay left of Re = 1e-10 "
               "(worst scaled real part %.1e)",
               worst));
}

} // namespace

int main() {
    std::printf("acceptance suite: block finite-difference heat solver\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 2;
}
