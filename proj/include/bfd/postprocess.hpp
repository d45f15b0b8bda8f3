#pragma once

// Order-raising post-processing of final-time solutions: a sharp spectral
// cutoff removing the block-injected high-frequency band on periodic grids,
// and a batched degree-6 polynomial projection for Dirichlet runs.  The 2D
// version sweeps x-lines, then y-lines.

#include <complex>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "linalg.hpp"

namespace bfd {

enum class FilterKind { spectral_highmode, poly_batch };

struct FilterSpec {
    FilterKind kind = FilterKind::spectral_highmode;
    int batch_size = 12; // poly mode
    int degree = 6;      // poly mode
    int cutoff = -1;     // spectral mode; -1 means N/2 (the nu band boundary)
};

namespace detail {

// dense DFT; n is small (a few hundred at most)
inline std::vector<cplx> dft(const std::vector<cplx>& u, int sign) {
    const int n = int(u.size());
    std::vector<cplx> out(n);
    const double w0 = sign * 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        cplx acc(0);
        for (int m = 0; m < n; ++m) acc += u[m] * std::exp(cplx(0, w0 * k * m));
        out[k] = acc;
    }
    return out;
}

inline void spectral_line(std::vector<cplx>& line, int cutoff) {
    const int n = int(line.size());
    auto coef = dft(line, -1);
    for (int k = 0; k < n; ++k) {
        int freq = k <= n / 2 ? k : k - n; // frequencies in (-n/2, n/2]
        if (std::abs(freq) > cutoff) coef[k] = cplx(0);
    }
    auto back = dft(coef, +1);
    for (int m = 0; m < n; ++m) line[m] = back[m] / double(n);
}

inline void poly_fit_batch(const std::vector<double>& in, std::vector<double>& out, int i0,
                           int count, int degree) {
    // local coordinates on [-1, 1], Legendre basis for conditioning
    MatD a(count, degree + 1);
    std::vector<double> b(count);
    for (int i = 0; i < count; ++i) {
        double t = count > 1 ? -1.0 + 2.0 * i / (count - 1) : 0.0;
        double p0 = 1.0, p1 = t;
        a(i, 0) = p0;
        if (degree >= 1) a(i, 1) = p1;
        for (int d = 2; d <= degree; ++d) {
            double p2 = ((2 * d - 1) * t * p1 - (d - 1) * p0) / d;
            a(i, d) = p2;
            p0 = p1;
            p1 = p2;
        }
        b[i] = in[i0 + i];
    }
    auto coef = least_squares(a, b);
    for (int i = 0; i < count; ++i) {
        double t = count > 1 ? -1.0 + 2.0 * i / (count - 1) : 0.0;
        double p0 = 1.0, p1 = t, acc = coef[0];
        if (degree >= 1) acc += coef[1] * p1;
        for (int d = 2; d <= degree; ++d) {
            double p2 = ((2 * d - 1) * t * p1 - (d - 1) * p0) / d;
            acc += coef[d] * p2;
            p0 = p1;
            p1 = p2;
        }
        out[i0 + i] = acc;
    }
}

inline void poly_line(const std::vector<double>& in, std::vector<double>& out, int batch,
                      int degree) {
    const int n = int(in.size());
    if (n < batch) throw std::invalid_argument("poly filter: need at least one full batch");
    out = in;
    int nfull = n / batch;
    for (int k = 0; k < nfull; ++k) poly_fit_batch(in, out, k * batch, batch, degree);
    // remainder: refit the final `batch` nodes; the overlapped nodes take the
    // later batch's values
    if (nfull * batch < n) poly_fit_batch(in, out, n - batch, batch, degree);
}

} // namespace detail

/// Sharp spectral cutoff on the 2N-point periodic node set; modes with
/// |k| > cutoff (default N/2) are removed.  Real input comes back real.
inline GridFn<double> filter_periodic(const BlockGrid1D& g, const GridFn<double>& u,
                                      int cutoff = -1) {
    if (int(u.size()) != g.node_count())
        throw std::invalid_argument("filter_periodic: size mismatch");
    if (cutoff < 0) cutoff = g.n_blocks / 2;
    std::vector<cplx> line(u.begin(), u.end());
    detail::spectral_line(line, cutoff);
    GridFn<double> out(u.size());
    for (size_t m = 0; m < u.size(); ++m) out[m] = line[m].real();
    return out;
}

inline GridFn<cplx> filter_periodic(const BlockGrid1D& g, const GridFn<cplx>& u,
                                    int cutoff = -1) {
    if (int(u.size()) != g.node_count())
        throw std::invalid_argument("filter_periodic: size mismatch");
    if (cutoff < 0) cutoff = g.n_blocks / 2;
    std::vector<cplx> line = u;
    detail::spectral_line(line, cutoff);
    return line;
}

/// Batched degree-6 polynomial projection over consecutive groups of 12
/// nodes; a short remainder is covered by refitting the final 12 nodes.
inline GridFn<double> filter_poly_batches(const GridFn<double>& u, const FilterSpec& spec = {}) {
    if (spec.degree >= spec.batch_size)
        throw std::invalid_argument("filter_poly_batches: degree must be below batch size");
    GridFn<double> out;
    detail::poly_line(u, out, spec.batch_size, spec.degree);
    return out;
}

/// 2D sweep: filter along every x-line, then along every y-line of the
/// intermediate result.
inline GridFn<double> filter_2d(const BlockGrid2D& g, const GridFn<double>& u,
                                const FilterSpec& spec) {
    if (int(u.size()) != g.node_count()) throw std::invalid_argument("filter_2d: size mismatch");
    const int nx = 2 * g.nx, ny = 2 * g.ny;
    GridFn<double> work = u, out(u.size());
    // x-lines: fixed iy, varying ix (stride ny)
    for (int iy = 0; iy < ny; ++iy) {
        std::vector<double> line(nx);
        for (int ix = 0; ix < nx; ++ix) line[ix] = work[g.index(ix, iy)];
        std::vector<double> res;
        if (spec.kind == FilterKind::spectral_highmode) {
            std::vector<cplx> cl(line.begin(), line.end());
            detail::spectral_line(cl, spec.cutoff < 0 ? g.nx / 2 : spec.cutoff);
            res.resize(nx);
            for (int ix = 0; ix < nx; ++ix) res[ix] = cl[ix].real();
        } else {
            detail::poly_line(line, res, spec.batch_size, spec.degree);
        }
        for (int ix = 0; ix < nx; ++ix) out[g.index(ix, iy)] = res[ix];
    }
    // y-lines: contiguous
    for (int ix = 0; ix < nx; ++ix) {
        std::vector<double> line(ny);
        for (int iy = 0; iy < ny; ++iy) line[iy] = out[g.index(ix, iy)];
        std::vector<double> res;
        if (spec.kind == FilterKind::spectral_highmode) {
            std::vector<cplx> cl(line.begin(), line.end());
            detail::spectral_line(cl, spec.cutoff < 0 ? g.ny / 2 : spec.cutoff);
            res.resize(ny);
            for (int iy = 0; iy < ny; ++iy) res[iy] = cl[iy].real();
        } else {
            detail::poly_line(line, res, spec.batch_size, spec.degree);
        }
        for (int iy = 0; iy < ny; ++iy) out[g.index(ix, iy)] = res[iy];
    }
    return out;
}

} // namespace bfd
