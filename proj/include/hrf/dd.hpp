#pragma once

#include <cmath>

namespace hrf {

// Unevaluated double-double sum hi + lo, ~106 significant bits.
//
// Region prior masses are sums of up to millions of doubles from [0,1]. A
// plain double sum drops low-order bits, and then a spatially constant prior
// no longer cancels exactly against the normalizing total. With 106 bits the
// sum of n identical values c is the exact real c*n (needs 53 + log2(n) bits),
// so the ratio fed to the density is exactly n_r / n_total and the constant
// cancels bit-for-bit, matching the uniform-density code path.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    explicit DD(double x) : hi(x), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

// Knuth two-sum: s + err == a + b exactly.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

// p + err == a * b exactly (fma-based Dekker product).
inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

// Quotient a / b rounded to double. Two Newton-style correction terms leave a
// relative error ~2^-104, far below the rounding granularity of the ratios we
// form (integer-like numerators/denominators), so the result is the correctly
// rounded true quotient.
inline double dd_ratio(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    DD r2 = dd_sub(r, dd_mul(b, q2));
    double q3 = r2.hi / b.hi;
    return q1 + (q2 + q3);
}

} // namespace hrf
