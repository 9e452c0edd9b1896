#pragma once

// Combinatorial ideal triangulations, their file format, per-tetrahedron
// edge indexing, hextet equations and the excluded loci S and T.

#include <array>
#include <fstream>
#include <sstream>
#include <vector>

#include "orthocalc/gram.hpp"
#include "orthocalc/json_io.hpp"

namespace orthocalc {

using OrthParams = std::vector<cplx>;

// Edges of a tetrahedron in the fixed order 01, 02, 03, 12, 13, 23.
inline int edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    static constexpr int idx[4][4] = {{-1, 0, 1, 2},
                                      {0, -1, 3, 4},
                                      {1, 3, -1, 5},
                                      {2, 4, 5, -1}};
    return idx[u][v];
}

inline std::pair<int, int> edge_vertices(int e) {
    static constexpr std::pair<int, int> verts[6] = {{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    return verts[e];
}

struct GluingIncidence {
    int tet = 0;
    int face = 0;                     // index of the opposite vertex
    std::array<int, 4> perm{0, 1, 2, 3};  // vertex map into the partner tet
};

struct FaceGluing {
    GluingIncidence a, b;  // b.perm is the inverse of a.perm
};

struct Triangulation {
    int num_tets = 0;
    int num_edge_classes = 0;
    std::vector<std::array<int, 6>> edge_class;  // per tet, by edge_index
    std::vector<FaceGluing> gluings;             // one entry per face class

    int edge_class_of(int tet, int u, int v) const {
        return edge_class[tet][edge_index(u, v)];
    }

    // The gluing incidence at (tet, face) and its partner.
    std::pair<const GluingIncidence*, const GluingIncidence*> incidence(
        int tet, int face) const {
        for (const auto& g : gluings) {
            if (g.a.tet == tet && g.a.face == face) return {&g.a, &g.b};
            if (g.b.tet == tet && g.b.face == face) return {&g.b, &g.a};
        }
        return {nullptr, nullptr};
    }

    int face_class_of(int tet, int face) const {
        for (int m = 0; m < static_cast<int>(gluings.size()); ++m) {
            const auto& g = gluings[m];
            if ((g.a.tet == tet && g.a.face == face) ||
                (g.b.tet == tet && g.b.face == face))
                return m;
        }
        return -1;
    }

    std::vector<std::string> validate() const;
};

inline std::vector<std::string> Triangulation::validate() const {
    std::vector<std::string> bad;
    if (static_cast<int>(edge_class.size()) != num_tets)
        bad.push_back("edge_class table size does not match tet count");
    if (static_cast<int>(gluings.size()) != 2 * num_tets)
        bad.push_back("face class count is not 2 * tet count");

    // every (tet, face) slot appears exactly once
    std::vector<int> seen(static_cast<size_t>(num_tets) * 4, 0);
    auto mark = [&](const GluingIncidence& inc) {
        if (inc.tet < 0 || inc.tet >= num_tets || inc.face < 0 || inc.face > 3) {
            bad.push_back("gluing incidence out of range");
            return;
        }
        seen[inc.tet * 4 + inc.face] += 1;
    };
    for (const auto& g : gluings) {
        mark(g.a);
        mark(g.b);
        // permutation sanity
        std::array<int, 4> hit{0, 0, 0, 0};
        for (int v : g.a.perm) {
            if (v < 0 || v > 3) {
                bad.push_back("gluing permutation out of range");
                break;
            }
            hit[v] += 1;
        }
        if (hit != std::array<int, 4>{1, 1, 1, 1})
            bad.push_back("gluing permutation is not a bijection");
        else {
            if (g.a.perm[g.a.face] != g.b.face)
                bad.push_back("gluing permutation does not map face to face");
            for (int v = 0; v < 4; ++v)
                if (g.b.perm[g.a.perm[v]] != v) {
                    bad.push_back("gluing permutations are not inverse");
                    break;
                }
            // oriented tetrahedra glue by odd (orientation-reversing) maps
            int invs = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (g.a.perm[i] > g.a.perm[j]) ++invs;
            if (invs % 2 == 0)
                bad.push_back("gluing permutation is orientation-preserving");
        }
    }
    for (int t = 0; t < num_tets; ++t)
        for (int f = 0; f < 4; ++f)
            if (seen[t * 4 + f] != 1) {
                std::ostringstream os;
                os << "face (" << t << "," << f << ") glued " << seen[t * 4 + f]
                   << " times";
                bad.push_back(os.str());
            }

    // edge classes consistent across gluings
    for (const auto& g : gluings) {
        for (int e = 0; e < 6; ++e) {
            auto [u, v] = edge_vertices(e);
            if (u == g.a.face || v == g.a.face) continue;  // not on this face
            if (g.a.tet >= num_tets || g.b.tet >= num_tets) continue;
            int c1 = edge_class[g.a.tet][e];
            int c2 = edge_class[g.b.tet][edge_index(g.a.perm[u], g.a.perm[v])];
            if (c1 != c2) {
                std::ostringstream os;
                os << "edge classes disagree across face (" << g.a.tet << ","
                   << g.a.face << ")";
                bad.push_back(os.str());
            }
        }
    }

    // class labels in range, all used
    std::vector<int> used(num_edge_classes, 0);
    for (const auto& tbl : edge_class)
        for (int c : tbl) {
            if (c < 0 || c >= num_edge_classes) {
                bad.push_back("edge class label out of range");
            } else
                used[c] += 1;
        }
    for (int c = 0; c < num_edge_classes; ++c)
        if (used[c] == 0) bad.push_back("unused edge class label");

    if (num_edge_classes != num_tets)
        bad.push_back("edge class count does not equal tet count");
    return bad;
}

inline json to_json(const Triangulation& t) {
    json gl = json::array();
    for (const auto& g : t.gluings) {
        auto inc = [](const GluingIncidence& i) {
            return json{{"tet", i.tet},
                        {"face", i.face},
                        {"perm", json(i.perm)}};
        };
        gl.push_back(json::array({inc(g.a), inc(g.b)}));
    }
    json ec = json::array();
    for (const auto& tbl : t.edge_class) ec.push_back(json(tbl));
    return json{{"num_tets", t.num_tets},
                {"num_edge_classes", t.num_edge_classes},
                {"edge_class", ec},
                {"gluings", gl}};
}

inline Triangulation triangulation_from_json(const json& j) {
    Triangulation t;
    try {
        t.num_tets = j.at("num_tets").get<int>();
        t.num_edge_classes = j.at("num_edge_classes").get<int>();
        for (const auto& row : j.at("edge_class")) {
            if (row.size() != 6)
                throw ParseError("edge_class rows must have 6 entries");
            std::array<int, 6> tbl{};
            for (int k = 0; k < 6; ++k) tbl[k] = row[k].get<int>();
            t.edge_class.push_back(tbl);
        }
        for (const auto& pair : j.at("gluings")) {
            if (pair.size() != 2)
                throw ParseError("each gluing must have two incidences");
            FaceGluing g;
            auto read = [](const json& ij) {
                GluingIncidence inc;
                inc.tet = ij.at("tet").get<int>();
                inc.face = ij.at("face").get<int>();
                const auto& p = ij.at("perm");
                if (p.size() != 4) throw ParseError("perm must have 4 entries");
                for (int k = 0; k < 4; ++k) inc.perm[k] = p[k].get<int>();
                return inc;
            };
            g.a = read(pair[0]);
            g.b = read(pair[1]);
            t.gluings.push_back(g);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("triangulation: ") + e.what());
    }
    return t;
}

inline Triangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    Triangulation t = triangulation_from_json(j);
    auto bad = t.validate();
    if (!bad.empty()) {
        for (const auto& msg : bad)
            if (msg.find("glued") != std::string::npos ||
                msg.find("permutation") != std::string::npos)
                throw InvalidGluing(msg);
        for (const auto& msg : bad)
            if (msg.find("edge class") != std::string::npos ||
                msg.find("edge_class") != std::string::npos)
                throw EdgeClassMismatch(msg);
        throw ParseError(bad.front());
    }
    return t;
}

inline void save_triangulation(const Triangulation& t,
                               const std::string& path) {
    std::ofstream out(path);
    out << to_json(t).dump(2) << "\n";
}

// The 4x4 hextet matrix of one tetrahedron, entries pulled from p.
inline GramMatrix hextet_matrix(const Triangulation& t, int tet,
                                const OrthParams& p) {
    std::vector<std::vector<cplx>> x(4, std::vector<cplx>(4, cplx(1)));
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) x[u][v] = p[t.edge_class_of(tet, u, v)];
    return GramMatrix(std::move(x), 1e-6);
}

inline std::vector<cplx> hextet_residuals(const Triangulation& t,
                                          const OrthParams& p) {
    std::vector<cplx> out;
    out.reserve(t.num_tets);
    for (int tet = 0; tet < t.num_tets; ++tet)
        out.push_back(hextet_matrix(t, tet, p).det());
    return out;
}

inline bool in_PK(const Triangulation& t, const OrthParams& p,
                  double tol = default_tol().eps) {
    for (cplx r : hextet_residuals(t, p))
        if (std::abs(r) >= tol) return false;
    return true;
}

// det of the 3x3 hexagon Gram matrix of a face class:
// 1 + 2 pi pj pk - pi^2 - pj^2 - pk^2 (symmetric in the three edges).
inline cplx hexagon_residual(const Triangulation& t, int face_class,
                             const OrthParams& p) {
    const GluingIncidence& inc = t.gluings[face_class].a;
    std::array<int, 3> vs{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != inc.face) vs[k++] = v;
    cplx pi = p[t.edge_class_of(inc.tet, vs[0], vs[1])];
    cplx pj = p[t.edge_class_of(inc.tet, vs[0], vs[2])];
    cplx pk = p[t.edge_class_of(inc.tet, vs[1], vs[2])];
    return 1.0 + 2.0 * pi * pj * pk - pi * pi - pj * pj - pk * pk;
}

// S: at least two face classes have degenerate hexagons.
inline bool in_S(const Triangulation& t, const OrthParams& p,
                 double tol = default_tol().eps) {
    int vanishing = 0;
    for (int m = 0; m < static_cast<int>(t.gluings.size()); ++m)
        if (std::abs(hexagon_residual(t, m, p)) < tol) ++vanishing;
    return vanishing >= 2;
}

// T: some coordinate equals +-1.
inline bool in_T(const OrthParams& p, double tol = default_tol().eps) {
    for (cplx v : p)
        if (std::abs(v - 1.0) < tol || std::abs(v + 1.0) < tol) return true;
    return false;
}

}  // namespace orthocalc
