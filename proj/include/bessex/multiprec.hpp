#pragma once

// Error-free transformations and double-double / quad-double arithmetic
// (Dekker/Knuth building blocks, expansion renormalization in the style of
// the Hida-Li-Bailey QD library).  Only the operations the series engines
// need are provided: +, -, *, / and a cube root.

#include <cmath>
#include <cstddef>

namespace bessex::mp {

inline double quick_two_sum(double a, double b, double& err) {
    double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_sum(double a, double b, double& err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

inline double two_prod(double a, double b, double& err) {
    double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

inline void three_sum(double& a, double& b, double& c) {
    double t1, t2, t3;
    t1 = two_sum(a, b, t2);
    a = two_sum(c, t1, t3);
    b = two_sum(t2, t3, c);
}

inline void three_sum2(double& a, double& b, double c) {
    double t1, t2, t3;
    t1 = two_sum(a, b, t2);
    a = two_sum(c, t1, t3);
    b = t2 + t3;
}

// ---------------------------------------------------------------------------
// double-double

struct DD {
    double hi{0.0}, lo{0.0};
    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}
    explicit operator double() const { return hi; }
};

inline DD operator+(DD a, DD b) {
    double s1, s2, t1, t2;
    s1 = two_sum(a.hi, b.hi, s2);
    t1 = two_sum(a.lo, b.lo, t2);
    s2 += t1;
    s1 = quick_two_sum(s1, s2, s2);
    s2 += t2;
    s1 = quick_two_sum(s1, s2, s2);
    return {s1, s2};
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    double p1, p2;
    p1 = two_prod(a.hi, b.hi, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    p1 = quick_two_sum(p1, p2, p2);
    return {p1, p2};
}

inline DD operator*(DD a, double b) {
    double p1, p2;
    p1 = two_prod(a.hi, b, p2);
    p2 += a.lo * b;
    p1 = quick_two_sum(p1, p2, p2);
    return {p1, p2};
}
inline DD operator*(double a, DD b) { return b * a; }

inline DD operator+(DD a, double b) {
    double s1, s2;
    s1 = two_sum(a.hi, b, s2);
    s2 += a.lo;
    s1 = quick_two_sum(s1, s2, s2);
    return {s1, s2};
}
inline DD operator+(double a, DD b) { return b + a; }
inline DD operator-(DD a, double b) { return a + (-b); }

inline DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    double e;
    q1 = quick_two_sum(q1, q2, e);
    return DD{q1, e} + q3;
}
inline DD operator/(DD a, double b) { return a / DD(b); }
inline DD operator/(double a, DD b) { return DD(a) / b; }

inline double to_double(DD a) { return a.hi; }
inline double abs_hi(DD a) { return std::fabs(a.hi); }

// ---------------------------------------------------------------------------
// quad-double

struct QD {
    double c[4]{0.0, 0.0, 0.0, 0.0};
    QD() = default;
    QD(double d) { c[0] = d; }
    QD(double a, double b, double cc, double d) : c{a, b, cc, d} {}
    QD(DD d) : c{d.hi, d.lo, 0.0, 0.0} {}
    explicit operator double() const { return c[0]; }
};

inline void renorm5(double& c0, double& c1, double& c2, double& c3, double& c4) {
    double s;
    s = quick_two_sum(c3, c4, c4);
    s = quick_two_sum(c2, s, c3);
    s = quick_two_sum(c1, s, c2);
    c0 = quick_two_sum(c0, s, c1);

    double t[5] = {c0, c1, c2, c3, c4};
    double out[4] = {0.0, 0.0, 0.0, 0.0};
    s = t[0];
    int k = 0;
    for (int i = 1; i < 5 && k < 4; ++i) {
        double e;
        s = quick_two_sum(s, t[i], e);
        if (e != 0.0) {
            out[k++] = s;
            s = e;
        }
    }
    if (k < 4) out[k] = s;
    c0 = out[0];
    c1 = out[1];
    c2 = out[2];
    c3 = out[3];
}

inline QD operator+(QD a, QD b) {
    double s0, s1, s2, s3, t0, t1, t2, t3;
    s0 = two_sum(a.c[0], b.c[0], t0);
    s1 = two_sum(a.c[1], b.c[1], t1);
    s2 = two_sum(a.c[2], b.c[2], t2);
    s3 = two_sum(a.c[3], b.c[3], t3);
    s1 = two_sum(s1, t0, t0);
    three_sum(s2, t0, t1);
    three_sum2(s3, t0, t2);
    t0 = t0 + t1 + t3;
    renorm5(s0, s1, s2, s3, t0);
    return {s0, s1, s2, s3};
}

inline QD operator-(QD a) { return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }
inline QD operator-(QD a, QD b) { return a + (-b); }

inline QD operator*(QD a, double b) {
    double p0, p1, p2, p3, q0, q1, q2;
    double s0, s1, s2, s3, s4;
    p0 = two_prod(a.c[0], b, q0);
    p1 = two_prod(a.c[1], b, q1);
    p2 = two_prod(a.c[2], b, q2);
    p3 = a.c[3] * b;
    s0 = p0;
    s1 = two_sum(q0, p1, s2);
    three_sum(s2, q1, p2);
    three_sum2(q1, q2, p3);
    s3 = q1;
    s4 = q2 + p2;
    renorm5(s0, s1, s2, s3, s4);
    return {s0, s1, s2, s3};
}
inline QD operator*(double a, QD b) { return b * a; }

inline QD operator*(QD a, QD b) {
    double p0, p1, p2, p3, p4, p5;
    double q0, q1, q2, q3, q4, q5;
    double s0, s1, s2, t0, t1;
    p0 = two_prod(a.c[0], b.c[0], q0);
    p1 = two_prod(a.c[0], b.c[1], q1);
    p2 = two_prod(a.c[1], b.c[0], q2);
    p3 = two_prod(a.c[0], b.c[2], q3);
    p4 = two_prod(a.c[1], b.c[1], q4);
    p5 = two_prod(a.c[2], b.c[0], q5);

    three_sum(p1, p2, q0);
    three_sum(p2, q1, q2);
    three_sum(p3, p4, p5);
    s0 = two_sum(p2, p3, t0);
    s1 = two_sum(q1, p4, t1);
    s2 = q2 + p5;
    s1 = two_sum(s1, t0, t0);
    s2 += (t0 + t1);
    s1 += a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] + a.c[3] * b.c[0] + q0 + q3 + q4 + q5;
    renorm5(p0, p1, s0, s1, s2);
    return {p0, p1, s0, s1};
}

inline QD operator+(QD a, double b) { return a + QD(b); }
inline QD operator+(double a, QD b) { return b + QD(a); }
inline QD operator-(QD a, double b) { return a + QD(-b); }

inline QD operator/(QD a, QD b) {
    double q0 = a.c[0] / b.c[0];
    QD r = a - b * q0;
    double q1 = r.c[0] / b.c[0];
    r = r - b * q1;
    double q2 = r.c[0] / b.c[0];
    r = r - b * q2;
    double q3 = r.c[0] / b.c[0];
    r = r - b * q3;
    double q4 = r.c[0] / b.c[0];
    renorm5(q0, q1, q2, q3, q4);
    return {q0, q1, q2, q3};
}
inline QD operator/(QD a, double b) { return a / QD(b); }
inline QD operator/(double a, QD b) { return QD(a) / b; }

inline double to_double(QD a) { return a.c[0]; }
inline double abs_hi(QD a) { return std::fabs(a.c[0]); }

// cube root by Newton iteration from a double seed; two iterations take the
// seed's 1e-16 error below the qd working precision
inline QD qd_cbrt(QD w) {
    QD r = QD(std::cbrt(to_double(w)));
    for (int it = 0; it < 3; ++it) {
        QD r2 = r * r;
        r = (2.0 * r + w / r2) / 3.0;
    }
    return r;
}

inline double to_double(double a) { return a; }
inline double abs_hi(double a) { return std::fabs(a); }

// machine epsilon of each representation, used for running error estimates
template <typename R>
inline constexpr double real_eps = 0.0;
template <>
inline constexpr double real_eps<double> = 2.2204460492503131e-16;
template <>
inline constexpr double real_eps<DD> = 4.93e-32;  // 2^-104
template <>
inline constexpr double real_eps<QD> = 1.22e-63;  // 2^-209

}  // namespace bessex::mp
