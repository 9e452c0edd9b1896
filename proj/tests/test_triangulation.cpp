#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "orthocalc/fig8.hpp"
#include "orthocalc/triangulation.hpp"

using namespace orthocalc;

namespace {

std::string data_path(const std::string& name) {
    return std::string(ORTHOCALC_DATA_DIR) + "/" + name;
}

std::string write_temp(const json& j) {
    std::string path = "tri_test_tmp.json";
    std::ofstream out(path);
    out << j.dump();
    return path;
}

}  // namespace

TEST_CASE("built-in figure-eight file loads and validates") {
    Triangulation t = load_triangulation(data_path("fig8.json"));
    CHECK(t.num_tets == 2);
    CHECK(t.num_edge_classes == 2);
    CHECK(t.gluings.size() == 4);
    CHECK(t.validate().empty());

    // matches the compiled-in triangulation
    json a = to_json(t);
    json b = to_json(fig8::triangulation());
    CHECK(a == b);
}

TEST_CASE("loader rejects broken gluing data") {
    json good = to_json(fig8::triangulation());

    json once = good;
    once["gluings"][0][1]["face"] = 1;  // face (1,1) now glued twice, (1,0) never
    CHECK_THROWS_AS(load_triangulation(write_temp(once)), InvalidGluing);

    json badperm = good;
    badperm["gluings"][0][0]["perm"] = json::array({0, 0, 1, 3});
    CHECK_THROWS_AS(load_triangulation(write_temp(badperm)), InvalidGluing);

    json badclass = good;
    badclass["edge_class"][1] = json::array({1, 1, 1, 1, 0, 0});
    CHECK_THROWS_AS(load_triangulation(write_temp(badclass)), EdgeClassMismatch);

    json wrongcount = good;
    wrongcount["num_edge_classes"] = 3;
    CHECK_THROWS(load_triangulation(write_temp(wrongcount)));

    CHECK_THROWS_AS(load_triangulation("no_such_file.json"), ParseError);
    std::remove("tri_test_tmp.json");
}

TEST_CASE("format round trip is idempotent") {
    Triangulation t = load_triangulation(data_path("fig8.json"));
    save_triangulation(t, "tri_roundtrip_tmp.json");
    Triangulation t2 = load_triangulation("tri_roundtrip_tmp.json");
    CHECK(to_json(t) == to_json(t2));
    std::remove("tri_roundtrip_tmp.json");
}

TEST_CASE("hextet matrix of the figure-eight pattern") {
    const Triangulation& t = fig8::triangulation();
    cplx p0(0.3, 0.1), p1(-0.7, 0.4);
    GramMatrix X = hextet_matrix(t, 0, {p0, p1});
    cplx want[4][4] = {{1, p0, p1, p1},
                       {p0, 1, p1, p0},
                       {p1, p1, 1, p0},
                       {p1, p0, p0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(X.x[i][j] - want[i][j]) == 0);

    // all parameters 1: the all-ones matrix is singular
    GramMatrix ones = hextet_matrix(t, 0, {cplx(1), cplx(1)});
    CHECK(std::abs(ones.det()) < 1e-14);

    // vertex renumbering conjugates by a permutation; det unchanged
    std::array<int, 4> perm{2, 0, 3, 1};
    std::vector<std::vector<cplx>> e(4, std::vector<cplx>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e[i][j] = X.x[perm[i]][perm[j]];
    GramMatrix Xp(std::move(e));
    CHECK(std::abs(X.det() - Xp.det()) < 1e-13);
}

TEST_CASE("the two figure-eight hextet polynomials are identical") {
    const Triangulation& t = fig8::triangulation();
    double worst = 0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            OrthParams p{cplx(-1.5 + 0.15 * i, 0.08 * j),
                         cplx(1.2 - 0.12 * j, -0.06 * i)};
            auto r = hextet_residuals(t, p);
            worst = std::max(worst, std::abs(r[0] - r[1]));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("P(K) membership") {
    const Triangulation& t = fig8::triangulation();
    OrthParams conic{cplx(-1.0 / 3.0, 0), cplx(5.0 / 3.0, 0)};
    for (cplx r : hextet_residuals(t, conic)) CHECK(std::abs(r) < 1e-12);
    CHECK(in_PK(t, conic, 1e-9));

    OrthParams origin{cplx(0), cplx(0)};
    auto r0 = hextet_residuals(t, origin);
    CHECK(std::abs(r0[0] - 1.0) < 1e-14);  // constant term of the quartic
    CHECK_FALSE(in_PK(t, origin, 1e-9));
}

TEST_CASE("hexagon residual and the S and T loci") {
    const Triangulation& t = fig8::triangulation();
    // the closed form agrees with an explicit 3x3 determinant per face
    OrthParams probe{cplx(0.2, 0.4), cplx(-0.8, 0.1)};
    for (int m = 0; m < 4; ++m) {
        const GluingIncidence& inc = t.gluings[m].a;
        std::array<int, 3> vs{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != inc.face) vs[k++] = v;
        cplx pi = probe[t.edge_class_of(inc.tet, vs[0], vs[1])];
        cplx pj = probe[t.edge_class_of(inc.tet, vs[0], vs[2])];
        cplx pk = probe[t.edge_class_of(inc.tet, vs[1], vs[2])];
        // cofactor expansion of [[1,pi,pj],[pi,1,pk],[pj,pk,1]]
        cplx det3 = (1.0 - pk * pk) - pi * (pi - pk * pj) + pj * (pi * pk - pj);
        CHECK(std::abs(hexagon_residual(t, m, probe) - det3) < 1e-14);
    }

    const double r5 = std::sqrt(5.0);
    for (double sgn : {1.0, -1.0}) {
        OrthParams p = fig8::orth_map(cplx(0.5 * (-1.0 + sgn * r5), 0));
        CHECK(in_S(t, p, 1e-7));
    }
    OrthParams p3 = fig8::orth_map(cplx(3, 0));
    CHECK_FALSE(in_S(t, p3, 1e-7));
    CHECK_FALSE(in_T(p3, 1e-7));
    CHECK(in_T({cplx(0.3, 0), cplx(1, 0)}, 1e-9));
    CHECK(in_T({cplx(-1, 0), cplx(0.2, 0)}, 1e-9));
}
