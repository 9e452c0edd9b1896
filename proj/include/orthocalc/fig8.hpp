#pragma once

// The figure-eight knot complement: its two-tetrahedron triangulation, the
// hextet variety in (p0, p1), the character curve in (U, V) = (tr^2 rho(x1),
// tr rho(x1 x2^-1)), the ortholength map between them, and explicit matrix
// representations from trace coordinates.

#include "orthocalc/develop.hpp"

namespace orthocalc {
namespace fig8 {

// Two ideal tetrahedra, two edge classes; all face identifications reverse
// orientation, H_1 = Z, one cusp.
inline const Triangulation& triangulation() {
    static const Triangulation t = [] {
        Triangulation t;
        t.num_tets = 2;
        t.num_edge_classes = 2;
        t.edge_class = {{0, 1, 1, 1, 0, 0}, {0, 1, 1, 1, 0, 0}};
        auto glue = [&](int fa, int fb, std::array<int, 4> perm) {
            FaceGluing g;
            g.a = {0, fa, perm};
            std::array<int, 4> inv{};
            for (int v = 0; v < 4; ++v) inv[perm[v]] = v;
            g.b = {1, fb, inv};
            t.gluings.push_back(g);
        };
        glue(0, 0, {0, 2, 1, 3});
        glue(1, 3, {2, 3, 1, 0});
        glue(2, 2, {3, 1, 2, 0});
        glue(3, 1, {3, 2, 0, 1});
        auto bad = t.validate();
        if (!bad.empty()) throw InvalidGluing(bad.front());
        return t;
    }();
    return t;
}

// det of the hextet matrix with rows (1, p0, p1, p1), (p0, 1, p1, p0),
// (p1, p1, 1, p0), (p1, p0, p0, 1).
inline cplx quartic(cplx p0, cplx p1) {
    cplx p0_2 = p0 * p0, p1_2 = p1 * p1;
    return 1.0 - 3.0 * p0_2 - 3.0 * p1_2 + 4.0 * p0 * p1_2 + 4.0 * p0_2 * p1 +
           p0_2 * p0_2 - 2.0 * p0_2 * p0 * p1 - p0_2 * p1_2 -
           2.0 * p0 * p1_2 * p1 + p1_2 * p1_2;
}

// The same quartic as 1/4 (conic) (line+) (line-).
inline cplx factored(cplx p0, cplx p1) {
    const double r5 = std::sqrt(5.0);
    cplx conic = p0 * p0 + p1 * p1 + p0 * p1 - p0 - p1 - 1.0;
    cplx lp = 2.0 * p1 - 3.0 * p0 + 1.0 + r5 * (p0 - 1.0);
    cplx lm = 2.0 * p1 - 3.0 * p0 + 1.0 - r5 * (p0 - 1.0);
    return 0.25 * conic * lp * lm;
}

inline cplx hextet_poly(cplx p0, cplx p1) {
    return hextet_matrix(triangulation(), 0, {p0, p1}).det();
}

// Trace coordinates of a representation of the knot group:
// U = tr^2 rho(x1), V = tr rho(x1 x2^-1).
struct CharPoint {
    cplx U, V;
};

enum class CurvePosition { Off, ReducibleLine, IrreducibleCurve };

// The character variety is (V - 2)(V^2 - U V + V + U - 1) = 0; the first
// factor carries the reducible characters.
inline CurvePosition on_curve(const CharPoint& c,
                              double eps = default_tol().eps) {
    double scale = std::max(1.0, std::abs(c.U) + std::abs(c.V));
    if (std::abs(c.V - 2.0) < eps * scale) return CurvePosition::ReducibleLine;
    cplx q = c.V * c.V - c.U * c.V + c.V + c.U - 1.0;
    if (std::abs(q) < eps * scale * scale) return CurvePosition::IrreducibleCurve;
    return CurvePosition::Off;
}

// U as a function of V on the irreducible curve.
inline cplx curve_U(cplx V, double eps = default_tol().eps) {
    if (std::abs(V - 1.0) < eps) throw PoleV1();
    return (V * V + V - 1.0) / (V - 1.0);
}

// The ortholength invariant of the irreducible representation with
// tr rho(x1 x2^-1) = V.
inline OrthParams orth_map(cplx V, double eps = default_tol().eps) {
    cplx den = V * V - 3.0 * V + 3.0;
    if (std::abs(den) < eps) throw DenominatorVanishes();
    cplx p0 = (-V * V + 3.0 * V - 1.0) / den;
    cplx p1 = (V * V - V - 1.0) / den;
    return {p0, p1};
}

// Inverse of orth_map, including the character coordinate U.
inline CharPoint orth_inverse(const OrthParams& p,
                              double eps = default_tol().eps) {
    cplx p0 = p.at(0), p1 = p.at(1);
    if (std::abs(p0 + 1.0) < eps) throw PoleP0();
    cplx V = (2.0 * p0 + p1 + 1.0) / (p0 + 1.0);
    return {curve_U(V, eps), V};
}

// tr rho(x1 x2^-1) of the complete hyperbolic structure: 1 - zeta with
// zeta a primitive sixth root of unity; the two conjugate values are the
// two orientations.
inline cplx complete_structure_V(int orientation = +1) {
    return {1.5, orientation >= 0 ? -std::sqrt(3.0) / 2.0
                                  : std::sqrt(3.0) / 2.0};
}

struct KnotGroupRep {
    SL2 x1, x2;
};

// Normal form with tr rho(x1) = tr rho(x2) = X and tr rho(x1 x2) = Y:
// x1 upper triangular, x2 lower triangular.  Requires X != +-2.
inline KnotGroupRep rep_from_traces(cplx X, cplx Y,
                                    double eps = default_tol().eps) {
    if (std::abs(X - 2.0) < eps || std::abs(X + 2.0) < eps)
        throw ParabolicNormalForm();
    cplx s = 0.5 * (X + std::sqrt(X * X - 4.0));
    cplx w = Y - X * X + 2.0;
    SL2 x1(Mat2(s, 1, 0, 1.0 / s), 1e-9);
    SL2 x2(Mat2(s, 0, w, 1.0 / s), 1e-9);
    return {x1, x2};
}

// The representation on the irreducible curve with tr rho(x1 x2^-1) = V.
inline KnotGroupRep rep_on_curve(cplx V, double eps = default_tol().eps) {
    cplx U = curve_U(V, eps);
    cplx X = std::sqrt(U);
    cplx Y = U - V;  // tr(x1 x2) = tr^2(x1) - tr(x1 x2^-1)
    return rep_from_traces(X, Y, eps);
}

// || rho([x2^-1, x1] x2^-1 - x1^-1 [x2^-1, x1]) ||: vanishes iff the pair
// satisfies the knot-group relation.
inline double relation_residual(const KnotGroupRep& r) {
    SL2 c = r.x2.inverse() * r.x1 * r.x2 * r.x1.inverse();  // [x2^-1, x1]
    Mat2 lhs = (c * r.x2.inverse()).mat();
    Mat2 rhs = (r.x1.inverse() * c).mat();
    return dist(lhs, rhs);
}

}  // namespace fig8
}  // namespace orthocalc
