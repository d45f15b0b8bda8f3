#pragma once

// Exact rational arithmetic and small affine expressions over a fixed
// variable set.  Used by the DG penalty-coefficient solver and by tests
// that pin stencil coefficients exactly.

#include <array>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bfd {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    double to_double() const { return double(num_) / double(den_); }

    Rational operator-() const { return Rational(-num_, den_, tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    struct tag {};
    Rational(long long n, long long d, tag) : num_(n), den_(d) {}

    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        return Rational((long long)n, (long long)d, tag{});
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_, den_;
};

// Variables appearing in the DG coefficient family: the scheme parameter c
// and the four free penalty parameters.
enum class Var : int { c = 0, C2 = 1, C3 = 2, E2 = 3, E3 = 4 };
inline constexpr int kNumVars = 5;

inline const char* var_name(Var v) {
    static const char* names[kNumVars] = {"c", "C2", "C3", "E2", "E3"};
    return names[int(v)];
}

// Affine expression a0 + sum_k a_k * var_k with rational coefficients.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(const Rational& r) : const_{r} {}
    LinExpr(long long n) : const_{Rational(n)} {}

    static LinExpr variable(Var v, const Rational& scale = Rational(1)) {
        LinExpr e;
        e.coef_[int(v)] = scale;
        return e;
    }

    const Rational& constant() const { return const_; }
    const Rational& coef(Var v) const { return coef_[int(v)]; }

    bool is_constant() const {
        for (const auto& c : coef_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_zero() const { return const_.is_zero() && is_constant(); }

    LinExpr operator-() const {
        LinExpr e;
        e.const_ = -const_;
        for (int i = 0; i < kNumVars; ++i) e.coef_[i] = -coef_[i];
        return e;
    }

    friend LinExpr operator+(const LinExpr& a, const LinExpr& b) {
        LinExpr e;
        e.const_ = a.const_ + b.const_;
        for (int i = 0; i < kNumVars; ++i) e.coef_[i] = a.coef_[i] + b.coef_[i];
        return e;
    }
    friend LinExpr operator-(const LinExpr& a, const LinExpr& b) { return a + (-b); }
    friend LinExpr operator*(const Rational& r, const LinExpr& a) {
        LinExpr e;
        e.const_ = r * a.const_;
        for (int i = 0; i < kNumVars; ++i) e.coef_[i] = r * a.coef_[i];
        return e;
    }
    friend LinExpr operator*(const LinExpr& a, const Rational& r) { return r * a; }
    friend LinExpr operator/(const LinExpr& a, const Rational& r) {
        return Rational(1) / r * a;
    }
    LinExpr& operator+=(const LinExpr& o) { return *this = *this + o; }
    LinExpr& operator-=(const LinExpr& o) { return *this = *this - o; }

    friend bool operator==(const LinExpr& a, const LinExpr& b) {
        if (!(a.const_ == b.const_)) return false;
        for (int i = 0; i < kNumVars; ++i)
            if (!(a.coef_[i] == b.coef_[i])) return false;
        return true;
    }

    // Substitute an affine value (in the remaining variables) for one variable.
    LinExpr substituted(Var v, const LinExpr& value) const {
        LinExpr e = *this;
        Rational k = e.coef_[int(v)];
        e.coef_[int(v)] = Rational(0);
        return e + k * value;
    }

    double eval(const std::array<double, kNumVars>& vals) const {
        double r = const_.to_double();
        for (int i = 0; i < kNumVars; ++i)
            if (!coef_[i].is_zero()) r += coef_[i].to_double() * vals[i];
        return r;
    }

    Rational eval_exact(const std::array<Rational, kNumVars>& vals) const {
        Rational r = const_;
        for (int i = 0; i < kNumVars; ++i)
            if (!coef_[i].is_zero()) r += coef_[i] * vals[i];
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const LinExpr& e) {
        os << e.const_;
        for (int i = 0; i < kNumVars; ++i)
            if (!e.coef_[i].is_zero())
                os << " + (" << e.coef_[i] << ")*" << var_name(Var(i));
        return os;
    }

private:
    Rational const_{};
    std::array<Rational, kNumVars> coef_{};
};

} // namespace bfd
