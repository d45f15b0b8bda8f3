// bfd-heat: convergence studies, symbol analysis, and stability
// certification for the two-point block finite-difference heat solver.

#include <CLI11.hpp>

#include <bfd/artifacts.hpp>
#include <bfd/dg.hpp>
#include <bfd/experiments.hpp>
#include <bfd/symbols.hpp>

#include <filesystem>
#include <iostream>

using namespace bfd;

namespace {

int cmd_run(Case kind, std::vector<double> c_list, std::vector<int> n_list,
            const std::string& integrator, const std::string& postprocess, double t_final,
            double dt, int jobs, const std::string& out_dir) {
    ExperimentSpec spec = default_spec(kind);
    if (!c_list.empty()) spec.c_list = std::move(c_list);
    if (!n_list.empty()) spec.n_list = std::move(n_list);
    if (integrator == "rk4") spec.integrator = Method::RK4;
    else if (integrator == "gl6") spec.integrator = Method::GL6;
    else if (!integrator.empty()) throw CLI::ValidationError("--integrator must be rk4 or gl6");
    if (postprocess == "spectral") spec.postprocess = Postprocess::spectral;
    else if (postprocess == "poly") spec.postprocess = Postprocess::poly;
    else if (postprocess == "none" || postprocess.empty()) spec.postprocess = Postprocess::none;
    else throw CLI::ValidationError("--postprocess must be none, spectral or poly");
    spec.t_final = t_final;
    spec.dt_user = dt;
    spec.jobs = jobs;

    auto tables = run_experiment(spec);
    std::filesystem::create_directories(out_dir);
    auto files = emit_artifacts(tables, out_dir);
    for (const auto& t : tables) {
        std::cout << case_name(t.kind) << " c=" << t.c << ": fitted rate " << t.fitted_rate;
        if (spec.postprocess != Postprocess::none)
            std::cout << ", post-processed rate " << t.fitted_rate_post;
        if (!t.monotone) std::cout << "  [warning: errors not monotone]";
        if (!t.temporal_ok) std::cout << "  [warning: temporal error not controlled]";
        std::cout << '\n';
    }
    for (const auto& f : files) std::cout << "wrote " << f << '\n';
    return 0;
}

int cmd_symbol(int n, double c, double domain_length, const std::string& out) {
    auto grid = build_grid_1d(n, 0.0, domain_length);
    auto op = assemble_periodic({c}, grid);
    const double scale = 30.0 / (grid.h * grid.h); // row-sum magnitude of the operator
    std::ostringstream os;
    os << "omega,nu,re_qhat1,im_qhat1,re_qhat2,im_qhat2,mismatch\n";
    const double two_pi = 2.0 * std::numbers::pi;
    for (int om = 0; om <= n / 2; ++om) {
        auto ss = symbols(om, n, c, domain_length);
        // eigenvector residual of both analytic eigenpairs, relative to scale
        double mismatch = 0;
        GridFn<cplx> ew(op.size()), en(op.size());
        for (int m = 0; m < op.size(); ++m) {
            ew[m] = std::exp(cplx(0, two_pi * ss.pair.omega / domain_length * grid.node(m)));
            en[m] = std::exp(cplx(0, two_pi * ss.pair.nu / domain_length * grid.node(m)));
        }
        for (auto [alpha, beta, qhat] : {std::tuple{ss.alpha1, ss.beta1, ss.qhat1},
                                         std::tuple{ss.alpha2, ss.beta2, ss.qhat2}}) {
            GridFn<cplx> psi(op.size());
            for (int m = 0; m < op.size(); ++m) psi[m] = alpha * ew[m] + beta * en[m];
            auto qpsi = op.apply(psi);
            for (int m = 0; m < op.size(); ++m)
                mismatch = std::max(mismatch, std::abs(qpsi[m] - qhat * psi[m]) / scale);
        }
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g,%.12g,%.3e\n", ss.pair.omega,
                      ss.pair.nu, ss.qhat1.real(), ss.qhat1.imag(), ss.qhat2.real(),
                      ss.qhat2.imag(), mismatch);
        os << buf;
    }
    if (out.empty()) std::cout << os.str();
    else write_file(out, os.str());
    return 0;
}

int cmd_stability(int c_grid, const std::string& out) {
    std::ostringstream os;
    os << "c,form,min_eig,max_eig,verdict\n";
    bool all_ok = true;
    for (int k = 0; k < c_grid; ++k) {
        double c = c_grid == 1 ? 0.0 : -0.97 + k * (1.94 / (c_grid - 1));
        auto r = dg::certify_all(c);
        auto emit = [&](const char* form, const dg::StabilityVerdict& v) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g,%.12g,%s\n", c, form,
                          v.eigenvalues.front(), v.eigenvalues.back(),
                          v.non_positive ? "non_positive" : "INDEFINITE");
            os << buf;
            all_ok = all_ok && v.non_positive;
        };
        emit("interior", r.interior);
        emit("theta_half", r.wall);
        emit("theta_three_half", r.second_interface);
    }
    if (out.empty()) std::cout << os.str();
    else write_file(out, os.str());
    return all_ok ? 0 : 2;
}

int cmd_verify() {
    int failures = 0;
    auto report = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS  " : "FAIL  ") << what << '\n';
        if (!ok) ++failures;
    };

    for (double c : {0.0, -0.25, -4.0 / 13, 0.5}) {
        double spectrum = 0, resid = 0;
        for (int n : {8, 16, 32}) {
            auto v = verify_against_operator({c}, build_grid_1d(n, 0.0, 1.0));
            spectrum = std::max(spectrum, v.spectrum_mismatch);
            resid = std::max(resid, v.eigenvector_residual);
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "symbol vs operator spectrum, c=%g (mismatch %.2e, residual %.2e)", c,
                      spectrum, resid);
        report(spectrum <= 1e-9 && resid <= 1e-8, buf);
    }

    bool cert = true;
    for (int k = 0; k < 33; ++k) {
        double c = -0.97 + k * (1.94 / 32);
        cert = cert && dg::certify_all(c).all_non_positive;
    }
    report(cert, "interface energy forms non-positive on the 33-point c grid");

    bool spec2d = true;
    for (double c : {0.0, -0.25, -4.0 / 13, 0.5}) {
        auto g = build_grid_1d(8, 0.0, 1.0);
        auto ev = eig_general(assemble_periodic({c}, g).dense());
        double scale = 64.0 / (g.h * g.h);
        for (auto& a : ev)
            for (auto& b : ev) spec2d = spec2d && a.real() + b.real() <= 1e-10 * scale;
    }
    report(spec2d, "2d periodic spectra (kronecker pairs) in the left half plane");

    return failures == 0 ? 0 : 2;
}

int cmd_dump(int n, double c, const std::string& bc, double a, double b, const std::string& out) {
    auto grid = build_grid_1d(n, a, b);
    Operator1D op;
    if (bc == "periodic") {
        op = assemble_periodic({c}, grid);
    } else if (bc == "dirichlet") {
        BoundaryData bd;
        bd.g_left = bd.g_right = bd.uxx_left = bd.uxx_right = bd.uxxxx_left = bd.uxxxx_right =
            [](double) { return 0.0; };
        op = assemble_dirichlet({c}, grid, bd);
    } else {
        throw CLI::ValidationError("--bc must be periodic or dirichlet");
    }
    if (out.empty()) {
        op.dump_matrix_market(std::cout);
    } else {
        std::ostringstream os;
        op.dump_matrix_market(os);
        write_file(out, os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-point block finite-difference heat solver"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "convergence study with CSV/SVG artifacts");
    std::string case_str = "periodic_1d", integrator, postprocess = "none", out_dir = "results";
    std::vector<double> c_list;
    std::vector<int> n_list;
    double t_final = 1.0, dt = 0.0;
    int jobs = 1;
    run->add_option("--case", case_str, "periodic_1d|dirichlet_1d|periodic_2d|dirichlet_2d");
    run->add_option("--c", c_list, "scheme parameter values")->delimiter(',');
    run->add_option("--n", n_list, "block counts")->delimiter(',');
    run->add_option("--integrator", integrator, "rk4|gl6 (default per case)");
    run->add_option("--postprocess", postprocess, "none|spectral|poly");
    run->add_option("--t-final", t_final, "final time");
    run->add_option("--dt", dt, "time step override (0: automatic)");
    run->add_option("--jobs", jobs, "worker threads");
    run->add_option("--out", out_dir, "output directory");
    run->set_config("--config", "", "flat key=value configuration file");

    auto* sym = app.add_subcommand("symbol", "per-frequency symbols as CSV");
    int sym_n = 32;
    double sym_c = -4.0 / 13, sym_len = 2.0 * std::numbers::pi;
    std::string sym_out;
    sym->add_option("--n", sym_n, "block count");
    sym->add_option("--c", sym_c, "scheme parameter");
    sym->add_option("--domain-length", sym_len, "periodic domain length");
    sym->add_option("--out", sym_out, "output file (default stdout)");

    auto* stab = app.add_subcommand("stability", "interface-form certification as CSV");
    int c_grid = 33;
    std::string stab_out;
    stab->add_option("--c-grid", c_grid, "number of c samples on (-0.97, 0.97)");
    stab->add_option("--out", stab_out, "output file (default stdout)");

    app.add_subcommand("verify", "operator-vs-symbol and certification checks");

    auto* dump = app.add_subcommand("dump-operator", "matrix-market triplet dump");
    int dump_n = 8;
    double dump_c = 0.0, dump_a = 0.0, dump_b = 1.0;
    std::string dump_bc = "periodic", dump_out;
    dump->add_option("--n", dump_n, "block count");
    dump->add_option("--c", dump_c, "scheme parameter");
    dump->add_option("--bc", dump_bc, "periodic|dirichlet");
    dump->add_option("--a", dump_a, "left endpoint");
    dump->add_option("--b", dump_b, "right endpoint");
    dump->add_option("--out", dump_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            Case kind;
            if (case_str == "periodic_1d") kind = Case::periodic_1d;
            else if (case_str == "dirichlet_1d") kind = Case::dirichlet_1d;
            else if (case_str == "periodic_2d") kind = Case::periodic_2d;
            else if (case_str == "dirichlet_2d") kind = Case::dirichlet_2d;
            else throw CLI::ValidationError("unknown --case " + case_str);
            return cmd_run(kind, c_list, n_list, integrator, postprocess, t_final, dt, jobs,
                           out_dir);
        }
        if (sym->parsed()) return cmd_symbol(sym_n, sym_c, sym_len, sym_out);
        if (stab->parsed()) return cmd_stability(c_grid, stab_out);
        if (app.get_subcommand("verify")->parsed()) return cmd_verify();
        if (dump->parsed()) return cmd_dump(dump_n, dump_c, dump_bc, dump_a, dump_b, dump_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
