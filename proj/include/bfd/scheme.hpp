#pragma once

// Stencil coefficients of the two-point block second-derivative scheme.
// Interior rows couple three consecutive blocks through 2x2 matrices A, B, C
// (left neighbor, self, right neighbor); c is the free scheme parameter.

#include <array>
#include <stdexcept>

#include "rational.hpp"

namespace bfd {

struct SchemeParams {
    double c = 0.0;
};

using Block2 = std::array<std::array<double, 2>, 2>;

struct BlockTriple {
    Block2 A, B, C;
};

// Entries of 3*h^2 * [A B C]; affine in c.  The B(1,1) entry is -30 + 10c:
// the scheme's second row applies -c times the antisymmetric five-step
// difference, so its diagonal picks up +10c (row sums across A,B,C vanish).
inline std::array<std::array<LinExpr, 6>, 2> interior_block_exprs() {
    auto L = [](long long a, long long b) { // a + b*c
        return LinExpr(Rational(a)) + LinExpr::variable(Var::c, Rational(b));
    };
    std::array<std::array<LinExpr, 6>, 2> rows;
    rows[0] = {L(-1, 1), L(16, -5), L(-30, 10), L(16, -10), L(-1, 5), L(0, -1)};
    rows[1] = {L(0, -1), L(-1, 5), L(16, -10), L(-30, 10), L(16, -5), L(-1, 1)};
    return rows;
}

inline BlockTriple interior_blocks(const SchemeParams& p, double h) {
    if (!(h > 0)) throw std::invalid_argument("interior_blocks: h must be positive");
    const double c = p.c;
    const double s = 1.0 / (3.0 * h * h);
    BlockTriple t;
    t.A = {{{s * (-1 + c), s * (16 - 5 * c)}, {s * (-c), s * (-1 + 5 * c)}}};
    t.B = {{{s * (-30 + 10 * c), s * (16 - 10 * c)}, {s * (16 - 10 * c), s * (-30 + 10 * c)}}};
    t.C = {{{s * (-1 + 5 * c), s * (-c)}, {s * (16 - 5 * c), s * (-1 + c)}}};
    return t;
}

// Dirichlet closure rows at the first and last block (ghost points already
// eliminated through the even-extension extrapolations).  Scaled by 1/(3h^2)
// like the interior rows.
struct ClosureRow {
    std::array<double, 4> stencil;   // nearest four interior nodes
    double g;                        // boundary value coefficient
    double uxx;                      // times (h/4)^2
    double uxxxx;                    // times (h/4)^4
};

// rows for nodes x_{1-1/4}, x_{1+1/4} over (u_{1-1/4}, u_{1+1/4}, u_{1+3/4}, u_{1+5/4})
inline std::array<ClosureRow, 2> left_closure(double c) {
    ClosureRow r0{{-46 + 15 * c, 17 - 11 * c, -1 + 5 * c, -c},
                  30 - 8 * c, 7 + 4 * c, (-65 + 76 * c) / 12.0};
    ClosureRow r1{{17 - 15 * c, -30 + 11 * c, 16 - 5 * c, -1 + c},
                  -2 + 8 * c, -1 - 4 * c, (-1 - 76 * c) / 12.0};
    return {r0, r1};
}

// rows for nodes x_{N-1/4}, x_{N+1/4} over (u_{N-5/4}, u_{N-3/4}, u_{N-1/4}, u_{N+1/4})
inline std::array<ClosureRow, 2> right_closure(double c) {
    ClosureRow r0{{-1 + c, 16 - 5 * c, -30 + 11 * c, 17 - 15 * c},
                  -2 + 8 * c, -1 - 4 * c, (-1 - 76 * c) / 12.0};
    ClosureRow r1{{-c, -1 + 5 * c, 17 - 11 * c, -46 + 15 * c},
                  30 - 8 * c, 7 + 4 * c, (-65 + 76 * c) / 12.0};
    return {r0, r1};
}

} // namespace bfd
