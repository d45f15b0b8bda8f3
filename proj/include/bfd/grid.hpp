#pragma once

// Block grids: each cell of width h carries two nodes at +/- h/4 from the
// cell center, so 1D nodes are uniformly spaced at h/2.  Node m = 2(j-1)+k
// of block j sits at a + (2m+1)h/4.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bfd {

struct BlockGrid1D {
    int n_blocks = 0;
    double a = 0, b = 0;
    double h = 0;
    std::vector<double> nodes; // size 2*n_blocks, strictly increasing

    int node_count() const { return 2 * n_blocks; }
    double node(int m) const { return nodes[m]; }
    double length() const { return b - a; }
};

inline BlockGrid1D build_grid_1d(int n, double a, double b) {
    if (n < 3) throw std::invalid_argument("build_grid_1d: need at least 3 blocks");
    if (!(b > a)) throw std::invalid_argument("build_grid_1d: need b > a");
    BlockGrid1D g;
    g.n_blocks = n;
    g.a = a;
    g.b = b;
    g.h = (b - a) / n;
    g.nodes.resize(2 * n);
    for (int m = 0; m < 2 * n; ++m) g.nodes[m] = a + (2 * m + 1) * g.h / 4.0;
    return g;
}

struct BlockGrid2D {
    int nx = 0, ny = 0;
    double ax = 0, bx = 0, ay = 0, by = 0;
    BlockGrid1D gx, gy;

    // index order: m = ix * (2*ny) + iy, x-node index slow, y-node index fast
    int node_count() const { return 4 * nx * ny; }
    int index(int ix, int iy) const { return ix * 2 * ny + iy; }
    double x(int ix) const { return gx.node(ix); }
    double y(int iy) const { return gy.node(iy); }
};

inline BlockGrid2D build_grid_2d(int nx, int ny, double ax, double bx, double ay, double by) {
    BlockGrid2D g;
    g.nx = nx;
    g.ny = ny;
    g.ax = ax;
    g.bx = bx;
    g.ay = ay;
    g.by = by;
    g.gx = build_grid_1d(nx, ax, bx);
    g.gy = build_grid_1d(ny, ay, by);
    return g;
}

template <typename T>
using GridFn = std::vector<T>;

template <typename F>
auto project(const BlockGrid1D& g, F&& f) {
    using T = decltype(f(0.0));
    GridFn<T> u(g.node_count());
    for (int m = 0; m < g.node_count(); ++m) u[m] = f(g.node(m));
    return u;
}

template <typename F>
auto project2d(const BlockGrid2D& g, F&& f) {
    using T = decltype(f(0.0, 0.0));
    GridFn<T> u(g.node_count());
    for (int ix = 0; ix < 2 * g.nx; ++ix)
        for (int iy = 0; iy < 2 * g.ny; ++iy) u[g.index(ix, iy)] = f(g.x(ix), g.y(iy));
    return u;
}

enum class NormKind { L2_h, Linf };

// L2_h(u) = sqrt(spacing * sum |u_m|^2) with spacing = h/2, the actual node
// spacing, so the constant function 1 on [0,2pi] has norm sqrt(2pi).
template <typename T>
double norm(const BlockGrid1D& g, const GridFn<T>& u, NormKind kind = NormKind::L2_h) {
    if (u.empty()) throw std::invalid_argument("norm: empty grid function");
    if (kind == NormKind::Linf) {
        double best = 0;
        for (const auto& v : u) best = std::max(best, std::abs(v));
        return best;
    }
    double s = 0;
    for (const auto& v : u) s += std::norm(std::complex<double>(v));
    return std::sqrt(0.5 * g.h * s);
}

template <typename T>
double norm2d(const BlockGrid2D& g, const GridFn<T>& u, NormKind kind = NormKind::L2_h) {
    if (u.empty()) throw std::invalid_argument("norm2d: empty grid function");
    if (kind == NormKind::Linf) {
        double best = 0;
        for (const auto& v : u) best = std::max(best, std::abs(v));
        return best;
    }
    double s = 0;
    for (const auto& v : u) s += std::norm(std::complex<double>(v));
    return std::sqrt(0.25 * g.gx.h * g.gy.h * s);
}

} // namespace bfd
