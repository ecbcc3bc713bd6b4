#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crjet {

/// Exact Gaussian rational: re + im*i with arbitrary-precision rational parts.
class GaussRat {
public:
    GaussRat() : re_(0), im_(0) {}
    GaussRat(long n) : re_(n), im_(0) {}
    GaussRat(long num, long den) : re_(mpq_class(num, den)), im_(0) { re_.canonicalize(); }
    explicit GaussRat(const mpq_class& re) : re_(re), im_(0) {}
    GaussRat(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }

    /// re^2 + im^2 as a rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    GaussRat operator+(const GaussRat& o) const { return GaussRat(re_ + o.re_, im_ + o.im_); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re_ - o.re_, im_ - o.im_); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussRat operator/(const GaussRat& o) const {
        if (o.is_zero()) throw std::domain_error("GaussRat: division by zero");
        mpq_class n = o.norm();
        return GaussRat((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }

    GaussRat& operator+=(const GaussRat& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }
    GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }

    bool operator==(const GaussRat& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    GaussRat inv() const { return GaussRat(1) / *this; }

    GaussRat pow(long k) const;

    /// Deterministic total order (used only for canonical tie-breaking, not magnitude).
    int cmp(const GaussRat& o) const {
        int c = ::cmp(re_, o.re_);
        if (c != 0) return c;
        return ::cmp(im_, o.im_);
    }

    std::string str() const;        // e.g. "3/2", "i", "(1/2-3*i)"
    std::string str_latex() const;  // e.g. "\frac{3}{2}"

private:
    mpq_class re_, im_;
};

inline GaussRat GaussRat::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    GaussRat acc(1), base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string rational_str(const mpq_class& q);

}  // namespace crjet
