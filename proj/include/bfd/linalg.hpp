#pragma once

// Small dense linear algebra: LU, least squares, symmetric and general
// eigenvalues, matrix exponential.  Everything here is desk-scale (n of a
// few hundred at most); clarity over blocking.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace bfd {

using cplx = std::complex<double>;

template <typename T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int rows, int cols, T init = T{}) : r_(rows), c_(cols), a_(size_t(rows) * cols, init) {}

    int rows() const { return r_; }
    int cols() const { return c_; }

    T& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Mat transposed() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    std::vector<T> operator*(const std::vector<T>& x) const {
        std::vector<T> y(r_, T{});
        for (int i = 0; i < r_; ++i) {
            T s{};
            for (int j = 0; j < c_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Mat operator*(const Mat& o) const {
        Mat m(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                T v = (*this)(i, k);
                if (v == T{}) continue;
                for (int j = 0; j < o.c_; ++j) m(i, j) += v * o(k, j);
            }
        return m;
    }

    Mat& operator+=(const Mat& o) {
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat& operator*=(T s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    double norm_inf() const {
        double best = 0;
        for (int i = 0; i < r_; ++i) {
            double s = 0;
            for (int j = 0; j < c_; ++j) s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

private:
    int r_, c_;
    std::vector<T> a_;
};

using MatD = Mat<double>;
using MatC = Mat<cplx>;

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting.

template <typename T>
struct Lu {
    Mat<T> lu;
    std::vector<int> piv;
    bool singular = false;
};

template <typename T>
Lu<T> lu_factor(Mat<T> a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("lu_factor: square matrix required");
    Lu<T> f{std::move(a), std::vector<int>(n), false};
    auto& m = f.lu;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > best) { best = std::abs(m(i, k)); p = i; }
        f.piv[k] = p;
        if (best == 0.0) { f.singular = true; continue; }
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        for (int i = k + 1; i < n; ++i) {
            m(i, k) /= m(k, k);
            T lik = m(i, k);
            if (lik == T{}) continue;
            for (int j = k + 1; j < n; ++j) m(i, j) -= lik * m(k, j);
        }
    }
    return f;
}

template <typename T>
void lu_solve_inplace(const Lu<T>& f, std::vector<T>& b) {
    const int n = f.lu.rows();
    if (f.singular) throw std::runtime_error("lu_solve: singular system");
    // rows were swapped in full during factorization: permute b first, then
    // plain triangular solves
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (int i = 1; i < n; ++i) {
        T s = b[i];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        T s = b[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s / f.lu(i, i);
    }
}

template <typename T>
std::vector<T> lu_solve(const Lu<T>& f, std::vector<T> b) {
    lu_solve_inplace(f, b);
    return b;
}

// ---------------------------------------------------------------------------
// Householder QR least squares, m >= n.

inline std::vector<double> least_squares(MatD a, std::vector<double> b) {
    const int m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("least_squares: underdetermined");
    for (int k = 0; k < n; ++k) {
        double nrm = 0;
        for (int i = k; i < m; ++i) nrm = std::hypot(nrm, a(i, k));
        if (nrm == 0.0) throw std::runtime_error("least_squares: rank deficient");
        if (a(k, k) < 0) nrm = -nrm; // reflector with v_k = 1 + |x_k|/|x|
        for (int i = k; i < m; ++i) a(i, k) /= nrm;
        a(k, k) += 1.0;
        for (int j = k + 1; j < n; ++j) {
            double s = 0;
            for (int i = k; i < m; ++i) s += a(i, k) * a(i, j);
            s = -s / a(k, k);
            for (int i = k; i < m; ++i) a(i, j) += s * a(i, k);
        }
        double s = 0;
        for (int i = k; i < m; ++i) s += a(i, k) * b[i];
        s = -s / a(k, k);
        for (int i = k; i < m; ++i) b[i] += s * a(i, k);
        a(k, k) = -nrm; // R diagonal
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for symmetric matrices.  Eigenvalues ascending;
// optionally accumulates eigenvectors (columns of V).

inline std::vector<double> eig_sym(MatD a, MatD* vectors = nullptr) {
    const int n = a.rows();
    MatD v = MatD::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) < 1e-15 * (1.0 + a.norm_inf())) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = cs * akp - sn * akq;
                    a(k, q) = sn * akp + cs * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = cs * apk - sn * aqk;
                    a(q, k) = sn * apk + cs * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = cs * vkp - sn * vkq;
                    v(k, q) = sn * vkp + cs * vkq;
                }
            }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = d[order[i]];
    if (vectors) {
        *vectors = MatD(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) (*vectors)(i, j) = v(i, order[j]);
    }
    return vals;
}

// ---------------------------------------------------------------------------
// General (nonsymmetric) eigenvalues: Householder reduction to Hessenberg
// form in complex arithmetic, then shifted QR with Givens rotations.

namespace detail {

inline void hessenberg_inplace(MatC& a) {
    const int n = a.rows();
    for (int k = 1; k < n - 1; ++k) {
        // zero a(k+1..n-1, k-1) with a Householder reflector on rows/cols k..n-1
        double scale = 0;
        for (int i = k; i < n; ++i) scale += std::abs(a(i, k - 1));
        if (scale == 0.0) continue;
        std::vector<cplx> u(n - k);
        double nrm2 = 0;
        for (int i = k; i < n; ++i) {
            u[i - k] = a(i, k - 1) / scale;
            nrm2 += std::norm(u[i - k]);
        }
        double nrm = std::sqrt(nrm2);
        if (nrm == 0.0) continue;
        cplx alpha = u[0] == cplx(0) ? cplx(-nrm) : -nrm * u[0] / std::abs(u[0]);
        u[0] -= alpha;
        double unorm2 = 0;
        for (auto& ui : u) unorm2 += std::norm(ui);
        if (unorm2 == 0.0) continue;
        // A <- (I - 2uu*/|u|^2) A (left), then right
        for (int j = k - 1; j < n; ++j) {
            cplx s(0);
            for (int i = k; i < n; ++i) s += std::conj(u[i - k]) * a(i, j);
            s *= 2.0 / unorm2;
            for (int i = k; i < n; ++i) a(i, j) -= s * u[i - k];
        }
        for (int i = 0; i < n; ++i) {
            cplx s(0);
            for (int j = k; j < n; ++j) s += a(i, j) * u[j - k];
            s *= 2.0 / unorm2;
            for (int j = k; j < n; ++j) a(i, j) -= s * std::conj(u[j - k]);
        }
        for (int i = k + 1; i < n; ++i) a(i, k - 1) = cplx(0);
    }
}

} // namespace detail

/// Eigenvalues of a general real or complex dense matrix.
inline std::vector<cplx> eig_general(const MatC& input) {
    MatC a = input;
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("eig_general: square matrix required");
    std::vector<cplx> ev(n);
    if (n == 0) return ev;
    if (n == 1) { ev[0] = a(0, 0); return ev; }
    detail::hessenberg_inplace(a);

    int hi = n - 1;
    int window_iter = 0;
    const double base = std::max(a.norm_inf(), 1e-300);
    while (hi >= 0) {
        if (hi == 0) { ev[0] = a(0, 0); break; }
        // deflate
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
            if (s == 0.0) s = base;
            if (std::abs(a(lo, lo - 1)) <= 2.3e-16 * s) { a(lo, lo - 1) = 0; break; }
            --lo;
        }
        if (lo == hi) { ev[hi] = a(hi, hi); --hi; window_iter = 0; continue; }
        cplx h00 = a(hi - 1, hi - 1), h01 = a(hi - 1, hi), h10 = a(hi, hi - 1), h11 = a(hi, hi);
        cplx tr = h00 + h11, det = h00 * h11 - h01 * h10;
        cplx disc = std::sqrt(tr * tr - 4.0 * det);
        cplx r1 = (tr + disc) / 2.0, r2 = (tr - disc) / 2.0;
        if (lo == hi - 1) { // resolve 2x2 blocks directly
            ev[hi] = (std::abs(r1 - h11) < std::abs(r2 - h11)) ? r1 : r2;
            ev[hi - 1] = tr - ev[hi];
            hi -= 2;
            window_iter = 0;
            continue;
        }
        if (++window_iter > 40) throw std::runtime_error("eig_general: no convergence");

        // Wilkinson shift from trailing 2x2 of active block
        cplx shift = (std::abs(r1 - h11) < std::abs(r2 - h11)) ? r1 : r2;
        if (window_iter == 10 || window_iter == 20 || window_iter == 30)
            shift = a(hi, hi) + cplx(0.75 * std::abs(a(hi, hi - 1)), 0);

        // explicit-shift QR step: factor (H - shift I) = QR, set H <- RQ + shift I
        for (int i = lo; i <= hi; ++i) a(i, i) -= shift;
        std::vector<std::pair<cplx, cplx>> rot(hi + 1);
        for (int k = lo; k < hi; ++k) {
            cplx x = a(k, k), y = a(k + 1, k);
            double nr = std::hypot(std::abs(x), std::abs(y));
            cplx c, s;
            if (nr == 0.0) { c = 1; s = 0; }
            else { c = x / nr; s = y / nr; }
            rot[k] = {c, s};
            for (int j = k; j <= hi; ++j) {
                cplx t1 = a(k, j), t2 = a(k + 1, j);
                a(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
                a(k + 1, j) = -s * t1 + c * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            auto [c, s] = rot[k];
            int imax = std::min(hi, k + 1);
            for (int i = lo; i <= imax; ++i) {
                cplx t1 = a(i, k), t2 = a(i, k + 1);
                a(i, k) = t1 * c + t2 * s;
                a(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
            }
        }
        for (int i = lo; i <= hi; ++i) a(i, i) += shift;
        (void)base;
    }
    return ev;
}

inline std::vector<cplx> eig_general(const MatD& a) {
    MatC m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return eig_general(m);
}

/// Newton refinement of computed eigenvalues through the characteristic
/// polynomial: lambda <- lambda + m / tr((A - lambda I)^{-1}) with m the
/// cluster multiplicity.  Repeated eigenvalues of non-normal matrices come
/// out of the QR iteration with a sqrt(eps)-type split; two Newton steps
/// with the right multiplicity restore them to near machine precision.
inline std::vector<cplx> refine_eigenvalues(const MatD& a, std::vector<cplx> eigs, int iters = 2) {
    const int n = a.rows();
    const double scale = std::max(a.norm_inf(), 1e-300);
    // cluster indices by proximity
    std::vector<int> order(eigs.size());
    for (size_t i = 0; i < eigs.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (eigs[x].real() != eigs[y].real()) return eigs[x].real() < eigs[y].real();
        return eigs[x].imag() < eigs[y].imag();
    });
    const double cluster_tol = 1e-4 * scale;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i + 1;
        cplx mean = eigs[order[i]];
        while (j < order.size() && std::abs(eigs[order[j]] - eigs[order[j - 1]]) < cluster_tol) {
            mean += eigs[order[j]];
            ++j;
        }
        const int mult = int(j - i);
        cplx lam = mean / double(mult);
        for (int it = 0; it < iters; ++it) {
            MatC m(n, n);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) m(r, s) = cplx(a(r, s)) - (r == s ? lam : cplx(0));
            auto f = lu_factor(std::move(m));
            if (f.singular) break;
            cplx trace(0);
            std::vector<cplx> col(n);
            for (int k = 0; k < n; ++k) {
                std::fill(col.begin(), col.end(), cplx(0));
                col[k] = 1.0;
                lu_solve_inplace(f, col);
                trace += col[k];
            }
            if (trace == cplx(0)) break;
            cplx step = double(mult) / trace;
            if (std::abs(step) > 0.05 * scale) break; // off the rails; keep QR value
            lam += step;
        }
        for (size_t k = i; k < j; ++k) eigs[order[k]] = lam;
        i = j;
    }
    return eigs;
}

// ---------------------------------------------------------------------------
// Matrix exponential by scaling and squaring with a [6/6] Pade approximant.

inline MatD expm(const MatD& a) {
    const int n = a.rows();
    double nrm = a.norm_inf();
    int s = 0;
    if (nrm > 0.5) s = int(std::ceil(std::log2(nrm / 0.5)));
    MatD as = a;
    as *= std::ldexp(1.0, -s);

    const int m = 6;
    std::vector<double> coef(m + 1);
    coef[0] = 1.0;
    for (int k = 0; k < m; ++k)
        coef[k + 1] = coef[k] * double(m - k) / double((2 * m - k) * (k + 1));

    MatD apow = MatD::identity(n);
    MatD u(n, n), v(n, n); // odd / even parts
    for (int k = 0; k <= m; ++k) {
        MatD term = apow;
        term *= coef[k];
        if (k % 2 == 0) v += term;
        else u += term;
        if (k < m) apow = apow * as;
    }
    MatD num = v, den = v;
    num += u;
    den -= u;
    auto f = lu_factor(den);
    MatD r(n, n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = num(i, j);
        lu_solve_inplace(f, col);
        for (int i = 0; i < n; ++i) r(i, j) = col[i];
    }
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

} // namespace bfd
