#pragma once

// Assembly and application of the 1D block finite-difference second
// derivative: periodic (block circulant) or Dirichlet-closed, plus the
// affine boundary source that carries the Dirichlet data.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <utility>

#include "grid.hpp"
#include "linalg.hpp"
#include "scheme.hpp"

namespace bfd {

enum class Bc { periodic, dirichlet };

using TimeFn = std::function<double(double)>;

/// Dirichlet data: boundary values plus the second and fourth derivatives
/// of the solution at the endpoints (analytic, or PDE-derived).
struct BoundaryData {
    TimeFn g_left, g_right;
    TimeFn uxx_left, uxx_right;
    TimeFn uxxxx_left, uxxxx_right;

    bool complete() const {
        return g_left && g_right && uxx_left && uxx_right && uxxxx_left && uxxxx_right;
    }
};

class Operator1D {
public:
    Bc bc = Bc::periodic;
    SchemeParams params;
    BlockGrid1D grid;
    BoundaryData bdata;

    struct Entry {
        int col;
        double val;
    };
    std::vector<std::vector<Entry>> rows;

    // source row r: g_coef * g(t) + uxx_coef * uxx(t) + uxxxx_coef * uxxxx(t),
    // with the boundary side resolved by r < 2 (left) or r >= 2N-2 (right)
    struct SourceRow {
        int row;
        double g_coef, uxx_coef, uxxxx_coef;
    };
    std::vector<SourceRow> source_rows;

    int size() const { return grid.node_count(); }

    template <typename T>
    void apply(const GridFn<T>& x, GridFn<T>& y) const {
        const int n = size();
        for (int i = 0; i < n; ++i) {
            T s{};
            for (const auto& e : rows[i]) s += e.val * x[e.col];
            y[i] = s;
        }
    }

    template <typename T>
    GridFn<T> apply(const GridFn<T>& x) const {
        GridFn<T> y(size());
        apply(x, y);
        return y;
    }

    /// Affine inhomogeneity from the boundary closures; zero for periodic.
    /// The terms are O(1/h^2) and cancel against the stencil, so extended
    /// precision callers evaluate them in T.
    template <typename T = double>
    void source(double t, GridFn<T>& s) const {
        std::fill(s.begin(), s.end(), T(0));
        if (bc == Bc::periodic) return;
        const int n = size();
        const T h = T(grid.h);
        const T scale = T(1) / (T(3) * h * h);
        const T q2 = (h / T(4)) * (h / T(4));
        const T q4 = q2 * q2;
        for (const auto& sr : source_rows) {
            bool left = sr.row < n / 2;
            T g = T(left ? bdata.g_left(t) : bdata.g_right(t));
            T uxx = T(left ? bdata.uxx_left(t) : bdata.uxx_right(t));
            T uxxxx = T(left ? bdata.uxxxx_left(t) : bdata.uxxxx_right(t));
            s[sr.row] =
                scale * (T(sr.g_coef) * g + T(sr.uxx_coef) * q2 * uxx + T(sr.uxxxx_coef) * q4 * uxxxx);
        }
    }

    GridFn<double> source(double t) const {
        GridFn<double> s(size());
        source(t, s);
        return s;
    }

    MatD dense() const {
        MatD m(size(), size());
        for (int i = 0; i < size(); ++i)
            for (const auto& e : rows[i]) m(i, e.col) += e.val;
        return m;
    }

    /// Matrix-market triplet dump (1-based coordinates).
    void dump_matrix_market(std::ostream& os) const {
        size_t nnz = 0;
        for (const auto& r : rows) nnz += r.size();
        os << "%%MatrixMarket matrix coordinate real general\n";
        os << size() << ' ' << size() << ' ' << nnz << '\n';
        char buf[64];
        for (int i = 0; i < size(); ++i)
            for (const auto& e : rows[i]) {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i + 1, e.col + 1, e.val);
                os << buf;
            }
    }
};

inline Operator1D assemble_periodic(const SchemeParams& p, const BlockGrid1D& grid) {
    const int nb = grid.n_blocks;
    if (nb < 3) throw std::invalid_argument("assemble_periodic: need at least 3 blocks");
    Operator1D op;
    op.bc = Bc::periodic;
    op.params = p;
    op.grid = grid;
    const BlockTriple t = interior_blocks(p, grid.h);
    op.rows.resize(2 * nb);
    for (int j = 0; j < nb; ++j) {
        int jl = (j + nb - 1) % nb, jr = (j + 1) % nb;
        for (int k = 0; k < 2; ++k) {
            auto& row = op.rows[2 * j + k];
            row.reserve(6);
            for (int l = 0; l < 2; ++l) row.push_back({2 * jl + l, t.A[k][l]});
            for (int l = 0; l < 2; ++l) row.push_back({2 * j + l, t.B[k][l]});
            for (int l = 0; l < 2; ++l) row.push_back({2 * jr + l, t.C[k][l]});
        }
    }
    return op;
}

inline Operator1D assemble_dirichlet(const SchemeParams& p, const BlockGrid1D& grid,
                                     BoundaryData bd) {
    const int nb = grid.n_blocks;
    if (nb < 3) throw std::invalid_argument("assemble_dirichlet: need at least 3 blocks");
    if (!bd.complete())
        throw std::invalid_argument("assemble_dirichlet: incomplete boundary data");
    Operator1D op;
    op.bc = Bc::dirichlet;
    op.params = p;
    op.grid = grid;
    op.bdata = std::move(bd);
    const double h = grid.h;
    const double scale = 1.0 / (3.0 * h * h);
    const BlockTriple t = interior_blocks(p, h);
    const int n = 2 * nb;
    op.rows.resize(n);
    for (int j = 1; j + 1 < nb; ++j)
        for (int k = 0; k < 2; ++k) {
            auto& row = op.rows[2 * j + k];
            row.reserve(6);
            for (int l = 0; l < 2; ++l) row.push_back({2 * (j - 1) + l, t.A[k][l]});
            for (int l = 0; l < 2; ++l) row.push_back({2 * j + l, t.B[k][l]});
            for (int l = 0; l < 2; ++l) row.push_back({2 * (j + 1) + l, t.C[k][l]});
        }
    const auto lc = left_closure(p.c);
    for (int k = 0; k < 2; ++k) {
        auto& row = op.rows[k];
        for (int l = 0; l < 4; ++l) row.push_back({l, scale * lc[k].stencil[l]});
        op.source_rows.push_back({k, lc[k].g, lc[k].uxx, lc[k].uxxxx});
    }
    const auto rc = right_closure(p.c);
    for (int k = 0; k < 2; ++k) {
        auto& row = op.rows[n - 2 + k];
        for (int l = 0; l < 4; ++l) row.push_back({n - 4 + l, scale * rc[k].stencil[l]});
        op.source_rows.push_back({n - 2 + k, rc[k].g, rc[k].uxx, rc[k].uxxxx});
    }
    return op;
}

/// Exact-solution slice used for truncation-error measurements.
struct ExactSlice {
    std::function<double(double)> u;   // u(x) at the fixed time
    std::function<double(double)> uxx; // u_xx(x) at the fixed time
    double t = 0.0;                    // time at which boundary data is read
};

/// T_e = projection of u_xx minus (Q u + source), per row.
inline GridFn<double> truncation_error(const Operator1D& op, const ExactSlice& exact) {
    auto u = project(op.grid, exact.u);
    auto qu = op.apply(u);
    auto s = op.source(exact.t);
    GridFn<double> te(op.size());
    for (int m = 0; m < op.size(); ++m) te[m] = exact.uxx(op.grid.node(m)) - (qu[m] + s[m]);
    return te;
}

} // namespace bfd
