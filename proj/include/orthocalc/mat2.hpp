#pragma once

// Complex 2x2 matrix algebra, the line-matrix model of oriented geodesics
// in hyperbolic 3-space, the bilinear form <l,m> = -1/2 tr(lm), complex
// distance and axis extraction.

#include <array>
#include <cmath>

#include "orthocalc/common.hpp"

namespace orthocalc {

struct Mat2 {
    cplx a{0}, b{0}, c{0}, d{0};  // row-major

    Mat2() = default;
    Mat2(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!(is_finite(a) && is_finite(b) && is_finite(c) && is_finite(d)))
            throw NonFiniteValue();
    }

    static Mat2 identity() { return {1, 0, 0, 1}; }

    cplx tr() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    // Adjugate; equals the inverse when det == 1.
    Mat2 adj() const { return {d, -b, -c, a}; }

    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) +
                         std::norm(d));
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) {
        return {s * x.a, s * x.b, s * x.c, s * x.d};
    }
    friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
};

inline cplx tr(const Mat2& x) { return x.tr(); }

inline Mat2 mul(const Mat2& x, const Mat2& y) { return x * y; }

// A matrix with determinant 1 (a lift of an orientation-preserving isometry).
class SL2 {
  public:
    explicit SL2(const Mat2& m, double eps_det = default_tol().eps_det)
        : m_(m) {
        if (std::abs(m.det() - 1.0) > eps_det) throw NotNormalized();
    }

    static SL2 identity() { return SL2(Mat2::identity()); }

    // Rescales an invertible matrix to determinant 1 (principal square root).
    static SL2 normalize(const Mat2& m) {
        cplx d = m.det();
        if (std::abs(d) < 1e-300) throw SingularMatrix();
        cplx s = std::sqrt(d);
        return SL2((1.0 / s) * m, 1e-9);
    }

    const Mat2& mat() const { return m_; }
    cplx tr() const { return m_.tr(); }

    SL2 inverse() const { return SL2(m_.adj(), 1e-9); }

    friend SL2 operator*(const SL2& x, const SL2& y) {
        return SL2(x.m_ * y.m_, 1e-9);
    }
    friend SL2 operator-(const SL2& x) { return SL2(-x.m_, 1e-9); }

  private:
    Mat2 m_;
};

inline SL2 inv(const SL2& x) { return x.inverse(); }

// A traceless 2x2 complex matrix.  Normalized ones (det = 1) are oriented
// lines in H^3: the -i eigenvector is the first end-point, +i the second.
class LineMatrix {
  public:
    explicit LineMatrix(const Mat2& m, double eps = default_tol().eps)
        : m_(m) {
        double scale = std::max(1.0, m.norm());
        if (std::abs(m.tr()) > eps * scale) throw NotNormalized("not traceless");
    }

    LineMatrix(cplx u, cplx v, cplx w) : m_(u, v, w, -u) {}

    const Mat2& mat() const { return m_; }
    cplx det() const { return m_.det(); }

    bool is_normalized(double eps = default_tol().eps) const {
        return std::abs(det() - 1.0) <= eps;
    }

    // Rescale to det = 1 (principal branch); the orientation of the result
    // is fixed by that branch choice.
    LineMatrix normalized() const {
        cplx d = det();
        if (std::abs(d) < 1e-300) throw SingularMatrix();
        return LineMatrix((1.0 / std::sqrt(d)) * m_, 1e-6);
    }

    friend LineMatrix operator-(const LineMatrix& l) {
        return LineMatrix(-l.m_, 1e-6);
    }
    friend LineMatrix operator+(const LineMatrix& l, const LineMatrix& m) {
        return LineMatrix(l.m_ + m.m_, 1e-6);
    }
    friend LineMatrix operator*(cplx s, const LineMatrix& l) {
        return LineMatrix(s * l.m_, 1e-6);
    }

  private:
    Mat2 m_;
};

// <l,m> = -1/2 tr(lm).  Symmetric, bilinear; <l,l> = det l.
inline cplx form(const LineMatrix& l, const LineMatrix& m) {
    return -0.5 * tr(l.mat() * m.mat());
}

// cosh of the complex distance between two oriented lines.
inline cplx cosh_dist(const LineMatrix& l, const LineMatrix& m,
                      double eps = default_tol().eps) {
    if (!l.is_normalized(eps) || !m.is_normalized(eps))
        throw NotNormalized("cosh_dist needs normalized line matrices");
    return form(l, m);
}

// Action of an isometry on lines: g.l = g~ l g~^{-1}.
inline LineMatrix conj_by(const SL2& g, const LineMatrix& l) {
    return LineMatrix(g.mat() * l.mat() * g.mat().adj(), 1e-6);
}

// Orthonormal basis of (L, <.,.>).
inline LineMatrix basis_e1() { return LineMatrix(cplx(0, 1), 0, 0); }
inline LineMatrix basis_e2() { return LineMatrix(0, cplx(0, 1), cplx(0, 1)); }
inline LineMatrix basis_e3() { return LineMatrix(0, 1, -1); }

inline LineMatrix line_from_coords(cplx c1, cplx c2, cplx c3) {
    // u = i c1, v = i c2 + c3, w = i c2 - c3
    const cplx i(0, 1);
    return LineMatrix(i * c1, i * c2 + c3, i * c2 - c3);
}

inline std::array<cplx, 3> coords_of(const LineMatrix& l) {
    const cplx i(0, 1);
    cplx u = l.mat().a, v = l.mat().b, w = l.mat().c;
    return {-i * u, -i * 0.5 * (v + w), 0.5 * (v - w)};
}

// The oriented axis of a non-parabolic isometry h, normalized so that
// l commutes with h.  The global sign is fixed by the principal branch
// of sqrt(1 - tr^2 h / 4).
inline LineMatrix axis(const SL2& h, double eps_par = default_tol().eps_par) {
    cplx t = h.tr();
    if (std::abs(t * t - 4.0) < eps_par) throw ParabolicOrIdentity();
    cplx s = std::sqrt(1.0 - t * t / 4.0);
    Mat2 n = h.mat() - (t / 2.0) * Mat2::identity();
    return LineMatrix((1.0 / s) * n, 1e-6);
}

inline double dist(const LineMatrix& l, const LineMatrix& m) {
    return (l.mat() - m.mat()).norm();
}

inline double dist(const Mat2& l, const Mat2& m) { return (l - m).norm(); }

}  // namespace orthocalc
