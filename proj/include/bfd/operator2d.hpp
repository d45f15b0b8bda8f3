#pragma once

// 2D operator as the Kronecker sum Qx (x) I + I (x) Qy on the tensor block
// grid, with per-direction Dirichlet sources.  Application walks the 1D
// sparse rows along grid lines; the full matrix is only materialized for
// small verification runs.

#include <functional>

#include "operator.hpp"

namespace bfd {

/// Dirichlet data for one direction of the 2D problem: functions of the
/// transverse coordinate and time.
struct BoundaryData2D {
    using Fn = std::function<double(double, double)>; // (transverse coord, t)
    Fn g_lo, g_hi;
    Fn uxx_lo, uxx_hi;
    Fn uxxxx_lo, uxxxx_hi;

    bool complete() const { return g_lo && g_hi && uxx_lo && uxx_hi && uxxxx_lo && uxxxx_hi; }
};

class Operator2D {
public:
    Bc bc = Bc::periodic;
    BlockGrid2D grid;
    Operator1D qx, qy;            // 1D factors (with dummy 1D boundary data)
    BoundaryData2D bdx, bdy;      // x-direction data g(y,t), y-direction data g(x,t)

    int size() const { return grid.node_count(); }

    void apply(const std::vector<double>& u, std::vector<double>& out) const {
        const int w = 2 * grid.ny;
        const int nx_nodes = 2 * grid.nx;
        std::fill(out.begin(), out.end(), 0.0);
        // x-direction: for each x-row, combine x-lines across all y at once
        for (int ix = 0; ix < nx_nodes; ++ix) {
            double* dst = out.data() + size_t(ix) * w;
            for (const auto& e : qx.rows[ix]) {
                const double* src = u.data() + size_t(e.col) * w;
                const double v = e.val;
                for (int iy = 0; iy < w; ++iy) dst[iy] += v * src[iy];
            }
        }
        // y-direction: contiguous lines
        for (int ix = 0; ix < nx_nodes; ++ix) {
            const double* src = u.data() + size_t(ix) * w;
            double* dst = out.data() + size_t(ix) * w;
            for (int iy = 0; iy < w; ++iy) {
                double s = 0;
                for (const auto& e : qy.rows[iy]) s += e.val * src[e.col];
                dst[iy] += s;
            }
        }
    }

    std::vector<double> apply(const std::vector<double>& u) const {
        std::vector<double> out(size());
        apply(u, out);
        return out;
    }

    /// Boundary source: x-closure rows contribute for every y node and vice
    /// versa, each with its own transverse evaluation point.
    void source(double t, std::vector<double>& s) const {
        std::fill(s.begin(), s.end(), 0.0);
        if (bc == Bc::periodic) return;
        const int w = 2 * grid.ny;
        const double hx = grid.gx.h, hy = grid.gy.h;
        const double sx = 1.0 / (3.0 * hx * hx), qx2 = hx * hx / 16.0, qx4 = qx2 * qx2;
        const double sy = 1.0 / (3.0 * hy * hy), qy2 = hy * hy / 16.0, qy4 = qy2 * qy2;
        for (const auto& sr : qx.source_rows) {
            bool lo = sr.row < grid.gx.node_count() / 2;
            const auto& g = lo ? bdx.g_lo : bdx.g_hi;
            const auto& uxx = lo ? bdx.uxx_lo : bdx.uxx_hi;
            const auto& uxxxx = lo ? bdx.uxxxx_lo : bdx.uxxxx_hi;
            for (int iy = 0; iy < w; ++iy) {
                double y = grid.y(iy);
                s[size_t(sr.row) * w + iy] +=
                    sx * (sr.g_coef * g(y, t) + sr.uxx_coef * qx2 * uxx(y, t) +
                          sr.uxxxx_coef * qx4 * uxxxx(y, t));
            }
        }
        for (const auto& sr : qy.source_rows) {
            bool lo = sr.row < grid.gy.node_count() / 2;
            const auto& g = lo ? bdy.g_lo : bdy.g_hi;
            const auto& uxx = lo ? bdy.uxx_lo : bdy.uxx_hi;
            const auto& uxxxx = lo ? bdy.uxxxx_lo : bdy.uxxxx_hi;
            for (int ix = 0; ix < 2 * grid.nx; ++ix) {
                double x = grid.x(ix);
                s[size_t(ix) * w + sr.row] +=
                    sy * (sr.g_coef * g(x, t) + sr.uxx_coef * qy2 * uxx(x, t) +
                          sr.uxxxx_coef * qy4 * uxxxx(x, t));
            }
        }
    }

    std::vector<double> source(double t) const {
        std::vector<double> s(size());
        source(t, s);
        return s;
    }

    MatD dense() const {
        const int n = size();
        const int w = 2 * grid.ny;
        MatD m(n, n);
        for (int ix = 0; ix < 2 * grid.nx; ++ix)
            for (const auto& e : qx.rows[ix])
                for (int iy = 0; iy < w; ++iy) m(ix * w + iy, e.col * w + iy) += e.val;
        for (int iy = 0; iy < w; ++iy)
            for (const auto& e : qy.rows[iy])
                for (int ix = 0; ix < 2 * grid.nx; ++ix) m(ix * w + iy, ix * w + e.col) += e.val;
        return m;
    }
};

inline Operator2D assemble_periodic_2d(const SchemeParams& p, const BlockGrid2D& grid) {
    Operator2D op;
    op.bc = Bc::periodic;
    op.grid = grid;
    op.qx = assemble_periodic(p, grid.gx);
    op.qy = assemble_periodic(p, grid.gy);
    return op;
}

inline Operator2D assemble_dirichlet_2d(const SchemeParams& p, const BlockGrid2D& grid,
                                        BoundaryData2D bdx, BoundaryData2D bdy) {
    if (!bdx.complete() || !bdy.complete())
        throw std::invalid_argument("assemble_dirichlet_2d: incomplete boundary data");
    Operator2D op;
    op.bc = Bc::dirichlet;
    op.grid = grid;
    BoundaryData dummy;
    dummy.g_left = dummy.g_right = dummy.uxx_left = dummy.uxx_right = dummy.uxxxx_left =
        dummy.uxxxx_right = [](double) { return 0.0; };
    op.qx = assemble_dirichlet(p, grid.gx, dummy);
    op.qy = assemble_dirichlet(p, grid.gy, dummy);
    op.bdx = std::move(bdx);
    op.bdy = std::move(bdy);
    return op;
}

} // namespace bfd
