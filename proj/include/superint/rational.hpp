#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <cstdint>

namespace superint {

using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

/// Gaussian rational a + b*i with exact arbitrary-precision parts.
/// Forms a field, so division by any nonzero value is exact.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long n) : re(n), im(0) {}
    GaussRat(const Rat& r) : re(r), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return im == 0 && re == 1; }

    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator-() const { return GaussRat(-re, -im); }

    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_zero()) throw std::domain_error("division by zero GaussRat");
        Rat n = o.re * o.re + o.im * o.im;
        Rat r = (re * o.re + im * o.im) / n;
        Rat i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

/// (-i)^k, the phase attached to p^k = (-i*hbar*d)^k.
inline GaussRat minus_i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GaussRat(1);
        case 1: return GaussRat(Rat(0), Rat(-1));
        case 2: return GaussRat(-1);
        default: return GaussRat(Rat(0), Rat(1));
    }
}

inline std::string to_string(const Rat& r) {
    return r.get_str();
}

} // namespace superint
