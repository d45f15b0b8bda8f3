#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bfd/linalg.hpp>
#include <bfd/rational.hpp>

#include <random>

using namespace bfd;

namespace {

std::mt19937 rng(12345);

MatD random_matrix(int n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    MatD m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("rational arithmetic normalizes and reduces") {
    Rational a(2, 4), b(1, 2);
    CHECK(a == b);
    CHECK((a + b) == Rational(1));
    CHECK((Rational(1, 3) * Rational(3, 7)) == Rational(1, 7));
    CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("linear expressions substitute and evaluate") {
    LinExpr e = LinExpr(Rational(3)) + LinExpr::variable(Var::c, Rational(2)) +
                LinExpr::variable(Var::C2, Rational(-1));
    auto f = e.substituted(Var::C2, LinExpr(Rational(5)));
    CHECK(f.coef(Var::C2).is_zero());
    CHECK(f.constant() == Rational(-2));
    std::array<double, kNumVars> vals{};
    vals[int(Var::c)] = 0.5;
    CHECK(f.eval(vals) == doctest::Approx(-1.0));
}

TEST_CASE("lu solves random systems") {
    SUBCASE("diagonally dominant") {
        for (int n : {1, 2, 5, 17, 40}) {
            MatD a = random_matrix(n);
            for (int i = 0; i < n; ++i) a(i, i) += n;
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i) x[i] = std::sin(i + 1.0);
            auto b = a * x;
            auto f = lu_factor(a);
            auto y = lu_solve(f, b);
            for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-10));
        }
    }
    SUBCASE("plain random: row exchanges exercised") {
        for (int n : {4, 8, 23, 48}) {
            MatD a = random_matrix(n);
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i) x[i] = std::cos(0.7 * i);
            auto b = a * x;
            auto f = lu_factor(a);
            bool pivoted = false;
            for (int k = 0; k < n; ++k) pivoted = pivoted || f.piv[k] != k;
            CHECK(pivoted); // the point of this subcase
            auto y = lu_solve(f, b);
            for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-8));
        }
    }
    SUBCASE("permutation matrix") {
        MatD a(3, 3);
        a(0, 2) = 1;
        a(1, 0) = 1;
        a(2, 1) = 1;
        auto f = lu_factor(a);
        auto y = lu_solve(f, {5.0, 7.0, 11.0});
        CHECK(y[0] == doctest::Approx(7.0));
        CHECK(y[1] == doctest::Approx(11.0));
        CHECK(y[2] == doctest::Approx(5.0));
    }
}

TEST_CASE("least squares recovers polynomial coefficients") {
    const int m = 12, n = 4;
    MatD a(m, n);
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        double x = -1.0 + 2.0 * i / (m - 1);
        for (int j = 0; j < n; ++j) a(i, j) = std::pow(x, j);
        b[i] = 2.0 - x + 0.5 * x * x * x; // exactly representable
    }
    auto coef = least_squares(a, b);
    CHECK(coef[0] == doctest::Approx(2.0));
    CHECK(coef[1] == doctest::Approx(-1.0));
    CHECK(std::abs(coef[2]) < 1e-12);
    CHECK(coef[3] == doctest::Approx(0.5));
}

TEST_CASE("symmetric eigensolver matches known spectrum") {
    // tridiagonal -2,1 has eigenvalues -2 + 2 cos(k pi / (n+1))
    const int n = 9;
    MatD a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = -2;
        if (i > 0) a(i, i - 1) = 1;
        if (i + 1 < n) a(i, i + 1) = 1;
    }
    auto vals = eig_sym(a);
    std::vector<double> expect(n);
    for (int k = 1; k <= n; ++k) expect[k - 1] = -2 + 2 * std::cos(k * M_PI / (n + 1));
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < n; ++i) CHECK(vals[i] == doctest::Approx(expect[i]).epsilon(1e-12));

    MatD v;
    eig_sym(a, &v);
    // residual of first eigenpair
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = v(i, 0);
    auto ax = a * x;
    for (int i = 0; i < n; ++i) CHECK(ax[i] == doctest::Approx(vals[0] * x[i]).epsilon(1e-9));
}

TEST_CASE("general eigensolver: known complex spectra") {
    SUBCASE("rotation block") {
        MatD a(2, 2);
        a(0, 0) = 1;
        a(0, 1) = -2;
        a(1, 0) = 2;
        a(1, 1) = 1;
        auto ev = eig_general(a);
        std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.imag() < y.imag(); });
        CHECK(ev[0].real() == doctest::Approx(1.0));
        CHECK(ev[0].imag() == doctest::Approx(-2.0));
        CHECK(ev[1].imag() == doctest::Approx(2.0));
    }
    SUBCASE("companion matrix of x^3 - 6x^2 + 11x - 6 has roots 1,2,3") {
        MatD a(3, 3);
        a(0, 0) = 6;
        a(0, 1) = -11;
        a(0, 2) = 6;
        a(1, 0) = 1;
        a(2, 1) = 1;
        auto ev = eig_general(a);
        std::vector<double> re;
        for (auto& e : ev) {
            CHECK(std::abs(e.imag()) < 1e-9);
            re.push_back(e.real());
        }
        std::sort(re.begin(), re.end());
        CHECK(re[0] == doctest::Approx(1.0));
        CHECK(re[1] == doctest::Approx(2.0));
        CHECK(re[2] == doctest::Approx(3.0));
    }
    SUBCASE("similarity-transformed known diagonal") {
        for (int n : {6, 23, 48}) {
            MatD d(n, n);
            for (int i = 0; i < n; ++i) d(i, i) = i - n / 2 + 0.25 * (i % 3);
            MatD v = random_matrix(n, 0.5);
            for (int i = 0; i < n; ++i) v(i, i) += 3.0;
            auto f = lu_factor(v);
            // a = v d v^{-1}: solve v a = (v d) columnwise -> a = v^{-1} (v d)?  build via a = v * d * inv(v)
            MatD vd = v * d;
            // columns of a^T: solve v^T y = (vd)^T rows... simpler: invert v explicitly
            MatD vinv(n, n);
            std::vector<double> col(n);
            for (int j = 0; j < n; ++j) {
                std::fill(col.begin(), col.end(), 0.0);
                col[j] = 1.0;
                lu_solve_inplace(f, col);
                for (int i = 0; i < n; ++i) vinv(i, j) = col[i];
            }
            MatD a = vd * vinv;
            auto ev = eig_general(a);
            std::vector<double> re;
            for (auto& e : ev) {
                CHECK(std::abs(e.imag()) < 1e-7 * n);
                re.push_back(e.real());
            }
            std::sort(re.begin(), re.end());
            std::vector<double> expect(n);
            for (int i = 0; i < n; ++i) expect[i] = d(i, i);
            std::sort(expect.begin(), expect.end());
            for (int i = 0; i < n; ++i)
                CHECK(re[i] == doctest::Approx(expect[i]).epsilon(1e-7).scale(n));
        }
    }
    SUBCASE("agrees with jacobi on symmetric input") {
        MatD a = random_matrix(20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < i; ++j) a(j, i) = a(i, j);
        auto sym = eig_sym(a);
        auto gen = eig_general(a);
        std::vector<double> re;
        for (auto& e : gen) re.push_back(e.real());
        std::sort(re.begin(), re.end());
        for (int i = 0; i < 20; ++i) CHECK(re[i] == doctest::Approx(sym[i]).epsilon(1e-9));
    }
}

TEST_CASE("matrix exponential") {
    SUBCASE("nilpotent") {
        MatD a(2, 2);
        a(0, 1) = 3;
        auto e = expm(a);
        CHECK(e(0, 0) == doctest::Approx(1.0));
        CHECK(e(0, 1) == doctest::Approx(3.0));
        CHECK(e(1, 0) == doctest::Approx(0.0).scale(1));
        CHECK(e(1, 1) == doctest::Approx(1.0));
    }
    SUBCASE("rotation") {
        MatD a(2, 2);
        a(0, 1) = -2;
        a(1, 0) = 2;
        auto e = expm(a);
        CHECK(e(0, 0) == doctest::Approx(std::cos(2.0)).epsilon(1e-12));
        CHECK(e(1, 0) == doctest::Approx(std::sin(2.0)).epsilon(1e-12));
    }
    SUBCASE("diagonal with large negative entries") {
        MatD a(3, 3);
        a(0, 0) = -40;
        a(1, 1) = -1;
        a(2, 2) = 0.5;
        auto e = expm(a);
        CHECK(e(0, 0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-8));
        CHECK(e(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
        CHECK(e(2, 2) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    }
}
