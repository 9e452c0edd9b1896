#pragma once

// Reduced hextets/hexagons in standard position, the branch involution,
// coherence testing of realizations and the coherent-realization search.

#include <algorithm>
#include <functional>
#include <optional>

#include "orthocalc/gram.hpp"
#include "orthocalc/triangulation.hpp"

namespace orthocalc {

namespace detail {

// Homogeneous point on CP^1.
struct ProjPoint {
    cplx z1, z2;
};

// End-point of an oriented line for the given eigenvalue (+i or -i):
// a kernel column of (l - lambda I).
inline ProjPoint endpoint(const LineMatrix& l, cplx lambda) {
    const Mat2& m = l.mat();
    // adj(l - lambda I); its columns span the kernel
    cplx a = m.a - lambda, d = m.d - lambda;
    ProjPoint c1{d, -m.c}, c2{-m.b, a};
    double n1 = std::norm(c1.z1) + std::norm(c1.z2);
    double n2 = std::norm(c2.z1) + std::norm(c2.z2);
    return n1 >= n2 ? c1 : c2;
}

// The isometry sending p -> 0, q -> infinity, s -> 1.
inline SL2 mobius_three_point(const ProjPoint& p, const ProjPoint& q,
                              const ProjPoint& s) {
    auto det2 = [](const ProjPoint& x, const ProjPoint& y) {
        return x.z1 * y.z2 - x.z2 * y.z1;
    };
    cplx Bs = det2(s, q);  // vanishes iff s == q
    cplx As = det2(s, p);
    Mat2 m(Bs * p.z2, -Bs * p.z1, As * q.z2, -As * q.z1);
    return SL2::normalize(m);
}

}  // namespace detail

struct Reduced {
    LineConfig lines;  // standard position: l1 = E1, l2 = [[a, i-a],[i+a, -a]]
    SL2 g;             // the isometry that achieved it
};

// Brings a configuration into standard position on its first two lines.
// Requires <l1,l2> != +-1 (distinct end-points).
inline Reduced reduce(const LineConfig& lines, double eps = default_tol().eps) {
    if (lines.size() < 2) throw Error("reduce needs at least two lines");
    cplx x12 = form(lines[0], lines[1]);
    if (std::abs(x12 - 1.0) < eps || std::abs(x12 + 1.0) < eps)
        throw SharedEndpoint();
    const cplx i(0, 1);
    detail::ProjPoint p = detail::endpoint(lines[0], -i);
    detail::ProjPoint q = detail::endpoint(lines[0], i);
    detail::ProjPoint s = detail::endpoint(lines[1], i);  // second end-point
    SL2 g = detail::mobius_three_point(p, q, s);
    LineConfig out;
    out.reserve(lines.size());
    for (const auto& l : lines) out.push_back(conj_by(g, l));
    return {std::move(out), g};
}

// The parameter a of a reduced configuration (entry (0,0) of l2).
inline cplx reduced_a(const LineConfig& reduced) {
    return reduced[1].mat().a;
}

// The deck-transformation of the hextet double cover:
// sigma(l1,l2,l3,l4) = (l1,l2,f_a(l3),f_a(l4)).
inline LineConfig involution(const LineConfig& reduced) {
    const cplx i(0, 1);
    cplx a = reduced_a(reduced);
    if (std::abs(a - i) < 1e-12 || std::abs(a + i) < 1e-12)
        throw SharedEndpoint("involution undefined at a = +-i");
    cplx r = (i - a) / (i + a);
    LineConfig out = reduced;
    for (size_t k = 2; k < out.size(); ++k) {
        const Mat2& m = out[k].mat();
        out[k] = LineMatrix(m.a, r * m.c, m.b / r);
    }
    return out;
}

struct HextetRealization {
    std::vector<std::array<LineMatrix, 4>> tets;
};

namespace detail {

inline std::array<LineMatrix, 3> face_triple(const Triangulation& t,
                                             const HextetRealization& r,
                                             const GluingIncidence& inc,
                                             const std::array<int, 3>& verts) {
    return {r.tets[inc.tet][verts[0]], r.tets[inc.tet][verts[1]],
            r.tets[inc.tet][verts[2]]};
}

}  // namespace detail

// True iff the two right-angled hexagons induced on a face class agree: an
// orientation-preserving isometry matches the oriented lines directly (not
// via the all-reversed configuration).  Degenerate hexagons with equal Gram
// matrices are isometric regardless of branch.
inline bool faces_coherent(const Triangulation& t, const HextetRealization& r,
                           int face_class, double tol = 1e-6) {
    const FaceGluing& fg = t.gluings[face_class];
    std::array<int, 3> va{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != fg.a.face) va[k++] = v;
    std::array<int, 3> vb{fg.a.perm[va[0]], fg.a.perm[va[1]], fg.a.perm[va[2]]};

    std::array<LineMatrix, 3> ta = detail::face_triple(t, r, fg.a, va);
    std::array<LineMatrix, 3> tb = detail::face_triple(t, r, fg.b, vb);

    LineConfig la(ta.begin(), ta.end());
    LineConfig lb(tb.begin(), tb.end());
    if (is_degenerate(la)) return true;  // equal Grams by construction

    try {
        Congruence c = congruence(la, lb, tol);
        return c.sign == +1;
    } catch (const NoCongruence&) {
        return false;
    }
}

struct CoherenceSearchStats {
    int branches_explored = 0;
};

// Finds a coherent realization of p (or reports that none exists) by fixing
// tetrahedron 0's branch and propagating forced branches across faces in
// BFS order over the dual graph.
inline std::optional<HextetRealization> find_coherent(
    const Triangulation& t, const OrthParams& p,
    double tol = default_tol().eps, CoherenceSearchStats* stats = nullptr) {
    if (!in_PK(t, p, std::max(tol, 1e-7))) throw NotInPK();
    if (in_T(p, default_tol().eps)) throw InTExcluded();

    // both branches of each tetrahedron, in standard position
    std::vector<std::array<LineConfig, 2>> branches(t.num_tets);
    for (int tet = 0; tet < t.num_tets; ++tet) {
        GramMatrix X = hextet_matrix(t, tet, p);
        LineConfig lines = realize(X);
        LineConfig reduced = reduce(lines).lines;
        branches[tet][0] = reduced;
        branches[tet][1] = involution(reduced);
    }

    // BFS order over the dual graph from tetrahedron 0
    std::vector<int> order, pos(t.num_tets, -1);
    order.push_back(0);
    pos[0] = 0;
    for (size_t head = 0; head < order.size(); ++head) {
        int tet = order[head];
        for (int f = 0; f < 4; ++f) {
            auto [self, other] = t.incidence(tet, f);
            if (other && pos[other->tet] < 0) {
                pos[other->tet] = static_cast<int>(order.size());
                order.push_back(other->tet);
            }
        }
    }
    if (static_cast<int>(order.size()) != t.num_tets)
        throw InvalidGluing("dual graph is not connected");

    // faces to check when assigning the k-th tet: those joining it to
    // already-assigned tets
    std::vector<std::vector<int>> check_faces(t.num_tets);
    for (int m = 0; m < static_cast<int>(t.gluings.size()); ++m) {
        const FaceGluing& fg = t.gluings[m];
        int later = std::max(pos[fg.a.tet], pos[fg.b.tet]);
        check_faces[later].push_back(m);
    }

    HextetRealization r;
    r.tets.resize(t.num_tets,
                  {basis_e1(), basis_e1(), basis_e1(), basis_e1()});
    std::vector<int> choice(t.num_tets, -1);

    std::function<bool(int)> assign = [&](int k) -> bool {
        if (k == t.num_tets) return true;
        int tet = order[k];
        for (int b = 0; b < 2; ++b) {
            if (stats) stats->branches_explored += 1;
            const LineConfig& cfg = branches[tet][b];
            r.tets[tet] = {cfg[0], cfg[1], cfg[2], cfg[3]};
            choice[tet] = b;
            bool ok = true;
            for (int m : check_faces[k])
                if (!faces_coherent(t, r, m)) {
                    ok = false;
                    break;
                }
            if (ok && assign(k + 1)) return true;
        }
        choice[tet] = -1;
        return false;
    };

    if (!assign(0)) return std::nullopt;
    return r;
}

}  // namespace orthocalc
