#include <doctest.h>

#include "helpers.hpp"
#include "orthocalc/fig8.hpp"

using namespace orthocalc;

TEST_CASE("hextet polynomial: determinant = quartic = factored form") {
    double worst = 0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            cplx p0(-2.0 + 0.21 * i, 0.05 * j);
            cplx p1(1.9 - 0.2 * j, -0.07 * i);
            worst = std::max(worst, std::abs(fig8::hextet_poly(p0, p1) -
                                             fig8::quartic(p0, p1)));
            worst = std::max(worst, std::abs(fig8::quartic(p0, p1) -
                                             fig8::factored(p0, p1)));
        }
    CHECK(worst < 1e-10);

    CHECK(std::abs(fig8::quartic(1, 1)) < 1e-14);
    CHECK(std::abs(fig8::quartic(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("character variety classification") {
    using fig8::CurvePosition;
    CHECK(fig8::on_curve({cplx(7, 3), cplx(2, 0)}) ==
          CurvePosition::ReducibleLine);
    CHECK(fig8::on_curve({cplx(5.5, 0), cplx(3, 0)}) ==
          CurvePosition::IrreducibleCurve);
    CHECK(fig8::on_curve({cplx(0, 0), cplx(0, 0)}) == CurvePosition::Off);
    CHECK(std::abs(fig8::curve_U(cplx(3, 0)) - 5.5) < 1e-14);
    CHECK_THROWS_AS(fig8::curve_U(cplx(1, 0)), PoleV1);
}

TEST_CASE("orth_map values and poles") {
    OrthParams p3 = fig8::orth_map(cplx(3, 0));
    CHECK(std::abs(p3[0] - cplx(-1.0 / 3.0, 0)) < 1e-12);
    CHECK(std::abs(p3[1] - cplx(5.0 / 3.0, 0)) < 1e-12);

    OrthParams p2 = fig8::orth_map(cplx(2, 0));
    CHECK(std::abs(p2[0] - 1.0) < 1e-12);
    CHECK(std::abs(p2[1] - 1.0) < 1e-12);

    // the denominator vanishes exactly at the complete structure
    for (int o : {+1, -1}) {
        cplx V = fig8::complete_structure_V(o);
        cplx den = V * V - 3.0 * V + 3.0;
        CHECK(std::abs(den) < 1e-14);
        CHECK_THROWS_AS(fig8::orth_map(V, 1e-9), DenominatorVanishes);
    }
}

TEST_CASE("orth_map image lies on the conic and in P(K)") {
    const Triangulation& t = fig8::triangulation();
    double worst_conic = 0, worst_det = 0;
    for (int k = 0; k < 100; ++k) {
        cplx V(2.2 + 0.03 * k, 0.011 * k);
        OrthParams p = fig8::orth_map(V);
        cplx conic =
            p[0] * p[0] + p[1] * p[1] + p[0] * p[1] - p[0] - p[1] - 1.0;
        worst_conic = std::max(worst_conic, std::abs(conic));
        for (cplx r : hextet_residuals(t, p))
            worst_det = std::max(worst_det, std::abs(r));
    }
    CHECK(worst_conic < 1e-10);
    CHECK(worst_det < 1e-10);
}

TEST_CASE("orth_inverse round trips") {
    OrthParams p3{cplx(-1.0 / 3.0, 0), cplx(5.0 / 3.0, 0)};
    fig8::CharPoint c = fig8::orth_inverse(p3);
    CHECK(std::abs(c.V - 3.0) < 1e-12);
    CHECK(std::abs(c.U - 5.5) < 1e-12);

    // (1,1) sits over the reducible line V = 2
    CHECK(std::abs(fig8::orth_inverse({cplx(1), cplx(1)}).V - 2.0) < 1e-12);

    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        cplx V(2.3 + 0.05 * k, 0.5 + 0.01 * k);
        OrthParams p = fig8::orth_map(V);
        OrthParams back = fig8::orth_map(fig8::orth_inverse(p).V);
        worst = std::max(worst, std::abs(back[0] - p[0]));
        worst = std::max(worst, std::abs(back[1] - p[1]));
    }
    CHECK(worst < 1e-9);

    CHECK_THROWS_AS(fig8::orth_inverse({cplx(-1), cplx(0.5)}), PoleP0);
}

TEST_CASE("coordinates reach +-1 only over V near 1 or 2") {
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 20; ++j) {
            cplx V(-1.0 + 0.1 * i, -1.0 + 0.1 * j);
            if (std::abs(V - 1.0) < 0.3 || std::abs(V - 2.0) < 0.3) continue;
            cplx den = V * V - 3.0 * V + 3.0;
            if (std::abs(den) < 0.05) continue;
            OrthParams p = fig8::orth_map(V);
            for (cplx c : p) {
                CHECK(std::abs(c - 1.0) > 1e-6);
                CHECK(std::abs(c + 1.0) > 1e-6);
            }
        }
    // and it does reach them there
    CHECK(in_T(fig8::orth_map(cplx(2, 0)), 1e-9));
    CHECK(in_T(fig8::orth_map(cplx(1, 0)), 1e-9));
}

TEST_CASE("rep_from_traces normal form") {
    cplx X = std::sqrt(cplx(5.5, 0));
    cplx Y = 5.5 - 3.0;  // tr(t1 t2) at the V = 3 point
    fig8::KnotGroupRep r = fig8::rep_from_traces(X, Y);
    CHECK(std::abs(r.x1.tr() - X) < 1e-12);
    CHECK(std::abs(r.x2.tr() - X) < 1e-12);
    CHECK(std::abs((r.x1 * r.x2).tr() - Y) < 1e-12);
    CHECK(fig8::relation_residual(r) < 1e-8);

    CHECK_THROWS_AS(fig8::rep_from_traces(cplx(2, 0), cplx(0, 0)),
                    ParabolicNormalForm);
}

TEST_CASE("relation residual separates the variety") {
    // on-curve points satisfy the knot-group relation
    for (cplx V : {cplx(2.5, 0), cplx(3, 0), cplx(1, 2)}) {
        fig8::KnotGroupRep r = fig8::rep_on_curve(V);
        CHECK(fig8::relation_residual(r) < 1e-8);
        cplx U = fig8::curve_U(V);
        CHECK(fig8::on_curve({U, V}) == fig8::CurvePosition::IrreducibleCurve);
    }
    // off-variety points do not
    int big = 0;
    for (int k = 0; k < 10; ++k) {
        cplx X(2.5 + 0.2 * k, 0.3);
        cplx Y(0.1 * k, -0.5);
        cplx U = X * X, V = U - Y;
        if (fig8::on_curve({U, V}) != fig8::CurvePosition::Off) continue;
        if (fig8::relation_residual(fig8::rep_from_traces(X, Y)) > 1e-2) ++big;
    }
    CHECK(big == 10);
}
