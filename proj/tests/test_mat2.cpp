#include <doctest.h>

#include "helpers.hpp"
#include "orthocalc/mat2.hpp"

using namespace orthocalc;
using orthotest::Rng;

namespace {
const cplx I(0, 1);
}

TEST_CASE("basic matrix arithmetic") {
    CHECK(tr(Mat2::identity()) == cplx(2));

    cplx s(1.3, -0.4);
    SL2 t(Mat2(s, 1, 0, 1.0 / s), 1e-12);
    Mat2 ti = t.inverse().mat();
    CHECK(std::abs(ti.a - 1.0 / s) < 1e-15);
    CHECK(std::abs(ti.b + 1.0) < 1e-15);
    CHECK(std::abs(ti.c) < 1e-15);
    CHECK(std::abs(ti.d - s) < 1e-15);

    Rng rng;
    for (int k = 0; k < 50; ++k) {
        SL2 g = rng.sl2();
        CHECK(dist((g * g.inverse()).mat(), Mat2::identity()) < 1e-12);
    }

    CHECK_THROWS_AS(SL2::normalize(Mat2(1, 2, 2, 4)), SingularMatrix);
    CHECK_THROWS_AS(Mat2(cplx(1.0 / 0.0, 0), 0, 0, 1), NonFiniteValue);
}

TEST_CASE("bilinear form on the basis") {
    LineMatrix e1 = basis_e1(), e2 = basis_e2(), e3 = basis_e3();
    CHECK(std::abs(form(e1, e1) - 1.0) < 1e-15);
    CHECK(std::abs(form(e2, e2) - 1.0) < 1e-15);
    CHECK(std::abs(form(e3, e3) - 1.0) < 1e-15);
    CHECK(std::abs(form(e1, e2)) < 1e-15);
    CHECK(std::abs(form(e1, e3)) < 1e-15);
    CHECK(std::abs(form(e2, e3)) < 1e-15);

    // translation along the axis of e1 fixes it
    double x = 1.0;
    SL2 g(Mat2(std::exp(x / 2), 0, 0, std::exp(-x / 2)), 1e-12);
    CHECK(std::abs(form(e1, conj_by(g, e1)) - 1.0) < 1e-14);
}

TEST_CASE("form is symmetric and bilinear, <l,l> = det l") {
    Rng rng;
    for (int k = 0; k < 200; ++k) {
        LineMatrix l(rng.complex(), rng.complex(), rng.complex());
        LineMatrix m(rng.complex(), rng.complex(), rng.complex());
        LineMatrix n(rng.complex(), rng.complex(), rng.complex());
        cplx alpha = rng.complex();
        CHECK(std::abs(form(l, m) - form(m, l)) < 1e-12);
        CHECK(std::abs(form(l + alpha * n, m) -
                       (form(l, m) + alpha * form(n, m))) < 1e-12);
        CHECK(std::abs(form(l, l) - l.det()) < 1e-12);
        CHECK(std::abs(form(-l, m) + form(l, m)) < 1e-12);
    }
}

TEST_CASE("isometry invariance of the form") {
    Rng rng;
    for (int k = 0; k < 100; ++k) {
        SL2 g = rng.sl2();
        LineMatrix l = rng.line(), m = rng.line();
        CHECK(std::abs(form(conj_by(g, l), conj_by(g, m)) - form(l, m)) <
              1e-10);
    }
}

TEST_CASE("cosh_dist guards and values") {
    LineMatrix e1 = basis_e1();
    CHECK(std::abs(cosh_dist(e1, e1) - 1.0) < 1e-15);
    CHECK(std::abs(cosh_dist(e1, -e1) + 1.0) < 1e-15);
    LineMatrix off = 2.0 * e1;  // det 4
    CHECK_THROWS_AS(cosh_dist(off, e1), NotNormalized);

    // two independent evaluation paths
    Rng rng;
    for (int k = 0; k < 20; ++k) {
        SL2 g = rng.sl2();
        LineMatrix moved = conj_by(g, basis_e2());
        cplx direct = -0.5 * tr(basis_e1().mat() * moved.mat());
        CHECK(std::abs(cosh_dist(basis_e1(), moved) - direct) < 1e-12);
    }
}

TEST_CASE("conj_by examples") {
    LineMatrix e1 = basis_e1();
    SL2 id = SL2::identity();
    CHECK(dist(conj_by(id, e1), e1) < 1e-15);
    SL2 rot(Mat2(0, 1, -1, 0), 1e-12);  // half turn swapping 0 and infinity
    CHECK(dist(conj_by(rot, e1), -e1) < 1e-14);
}

TEST_CASE("coordinates round trip") {
    Rng rng;
    for (int k = 0; k < 50; ++k) {
        cplx c1 = rng.complex(), c2 = rng.complex(), c3 = rng.complex();
        auto back = coords_of(line_from_coords(c1, c2, c3));
        CHECK(std::abs(back[0] - c1) < 1e-14);
        CHECK(std::abs(back[1] - c2) < 1e-14);
        CHECK(std::abs(back[2] - c3) < 1e-14);
        // the basis is orthonormal, so coordinates compute the form
        LineMatrix l = line_from_coords(c1, c2, c3);
        CHECK(std::abs(form(l, l) - (c1 * c1 + c2 * c2 + c3 * c3)) < 1e-12);
    }
}

TEST_CASE("axis of a translation along the vertical line") {
    double x = 1.0;
    SL2 h(Mat2(std::exp(x / 2), 0, 0, std::exp(-x / 2)), 1e-12);
    LineMatrix a = axis(h);
    CHECK(std::abs(a.det() - 1.0) < 1e-12);
    bool plus = dist(a, basis_e1()) < 1e-10;
    bool minus = dist(a, -basis_e1()) < 1e-10;
    CHECK((plus || minus));
}

TEST_CASE("axis properties") {
    Rng rng;
    for (int k = 0; k < 100; ++k) {
        SL2 h = rng.loxodromic();
        LineMatrix a = axis(h);
        CHECK(std::abs(a.det() - 1.0) < 1e-9);
        // fixed by h
        CHECK(dist(conj_by(h, a), a) < 1e-9 * std::max(1.0, a.mat().norm()));
        // equivariance up to sign
        SL2 g = rng.sl2();
        LineMatrix lhs = axis(g * h * g.inverse());
        LineMatrix rhs = conj_by(g, a);
        double match = std::min(dist(lhs, rhs), dist(lhs, -rhs));
        CHECK(match < 1e-8 * std::max(1.0, rhs.mat().norm()));
        // same unoriented axis as the inverse
        LineMatrix ai = axis(h.inverse());
        double match2 = std::min(dist(ai, a), dist(ai, -a));
        CHECK(match2 < 1e-9 * std::max(1.0, a.mat().norm()));
    }
    CHECK_THROWS_AS(axis(SL2::identity()), ParabolicOrIdentity);
    CHECK_THROWS_AS(axis(SL2(Mat2(1, 1, 0, 1), 1e-12)), ParabolicOrIdentity);
}
