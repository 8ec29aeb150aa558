#pragma once

#include <cmath>
#include <complex>

// Compensated (double-double) arithmetic for the hypergeometric series kernel.
// Summing 1F1 on the imaginary axis is ill conditioned: the terms grow to
// ~e^{|z|} while the sum stays O(1), so plain double accumulation keeps only
// ~16 - |z|/ln(10) digits. Double-double accumulation restores ~32 digits of
// working precision, which keeps the series usable out to |z| ~ 50.

namespace qlz::detail {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return {s, e};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return dd_add(q, DD{q3, 0.0});
}

inline DD dd_from(double x) { return {x, 0.0}; }

struct DDComplex {
    DD re;
    DD im;
};

inline DDComplex ddc_from(std::complex<double> z) {
    return {dd_from(z.real()), dd_from(z.imag())};
}

inline std::complex<double> ddc_to_complex(const DDComplex& z) {
    return {z.re.hi + z.re.lo, z.im.hi + z.im.lo};
}

inline DDComplex ddc_add(const DDComplex& a, const DDComplex& b) {
    return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline DDComplex ddc_mul(const DDComplex& a, const DDComplex& b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline DDComplex ddc_mul(const DDComplex& a, double b) {
    return {dd_mul(a.re, b), dd_mul(a.im, b)};
}

inline DDComplex ddc_div(const DDComplex& a, const DDComplex& b) {
    DD denom = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
    DD re = dd_add(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    DD im = dd_sub(dd_mul(a.im, b.re), dd_mul(a.re, b.im));
    return {dd_div(re, denom), dd_div(im, denom)};
}

inline DDComplex ddc_div(const DDComplex& a, double b) {
    DD db = dd_from(b);
    return {dd_div(a.re, db), dd_div(a.im, db)};
}

// magnitude estimate, full precision not needed for stopping tests
inline double ddc_abs(const DDComplex& z) {
    return std::hypot(z.re.hi, z.im.hi);
}

} // namespace qlz::detail
