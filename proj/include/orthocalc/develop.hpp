#pragma once

// Developing a coherent realization through the dual graph: propagation
// along dual paths, holonomy of dual loops, edge-class loops (boundaries of
// dual 2-cells) and the invariant round-trip check.

#include "orthocalc/coherence.hpp"
#include "orthocalc/orthinv.hpp"

namespace orthocalc {

struct DualStep {
    int tet = 0;   // tetrahedron being left
    int face = 0;  // face crossed
};

using DualPath = std::vector<DualStep>;

struct Developed {
    std::vector<int> tets;                           // visited, size k+1
    std::vector<std::array<LineMatrix, 4>> hextets;  // concrete placements
    std::vector<SL2> placements;  // hextets[k] = placements[k] . abstract copy
};

// Lays out consecutive copies of the realization along a dual path, matching
// each new hextet to the already-placed one across the shared face.
inline Developed propagate(const Triangulation& t, const HextetRealization& r,
                           const DualPath& path, int start_tet = 0,
                           double eps = default_tol().eps) {
    Developed dev;
    dev.tets.push_back(start_tet);
    dev.hextets.push_back(r.tets[start_tet]);
    dev.placements.push_back(SL2(Mat2::identity()));

    for (const DualStep& step : path) {
        int cur = dev.tets.back();
        if (step.tet != cur)
            throw Error("dual path step does not start at the current tet");
        auto [self, other] = t.incidence(cur, step.face);
        if (!self) throw InvalidGluing("no gluing at the requested face");
        int next = other->tet;
        const auto& C = dev.hextets.back();
        const auto& A = r.tets[next];

        LineConfig src, dst;
        for (int v = 0; v < 4; ++v) {
            if (v == step.face) continue;
            src.push_back(A[self->perm[v]]);
            dst.push_back(C[v]);
        }
        Congruence match = [&] {
            try {
                return congruence(src, dst, std::max(eps, 1e-6));
            } catch (const NoCongruence&) {
                throw IncoherentFace();
            }
        }();
        if (match.sign != +1) throw IncoherentFace();

        std::array<LineMatrix, 4> placed{basis_e1(), basis_e1(), basis_e1(),
                                         basis_e1()};
        for (int v = 0; v < 4; ++v) placed[v] = conj_by(match.g, A[v]);
        dev.tets.push_back(next);
        dev.hextets.push_back(placed);
        dev.placements.push_back(match.g);
    }
    return dev;
}

// Holonomy of a dual loop: the isometry carrying the seed hextet onto its
// developed terminal copy (defined up to sign).
inline SL2 holonomy(const Triangulation& t, const HextetRealization& r,
                    const DualPath& loop, int base_tet = 0,
                    double eps = default_tol().eps) {
    Developed dev = propagate(t, r, loop, base_tet, eps);
    if (dev.tets.back() != base_tet)
        throw Error("dual path is not a loop at the base tetrahedron");
    LineConfig seed(r.tets[base_tet].begin(), r.tets[base_tet].end());
    if (is_degenerate(seed)) throw DegenerateSeed();
    LineConfig term(dev.hextets.back().begin(), dev.hextets.back().end());
    Congruence match = congruence(seed, term, std::max(eps, 1e-6));
    return match.g;
}

namespace detail {

// BFS spanning tree of the dual graph; tree_step[t] is the step into t from
// its parent, tree_step[root] unused.
struct DualTree {
    std::vector<int> parent;
    std::vector<DualStep> step_in;  // crossing from parent into t
    std::vector<int> order;
};

inline DualTree dual_tree(const Triangulation& t, int root = 0) {
    DualTree tr;
    tr.parent.assign(t.num_tets, -1);
    tr.step_in.resize(t.num_tets);
    tr.order.push_back(root);
    tr.parent[root] = root;
    for (size_t head = 0; head < tr.order.size(); ++head) {
        int tet = tr.order[head];
        for (int f = 0; f < 4; ++f) {
            auto [self, other] = t.incidence(tet, f);
            if (other && tr.parent[other->tet] < 0) {
                tr.parent[other->tet] = tet;
                tr.step_in[other->tet] = {tet, f};
                tr.order.push_back(other->tet);
            }
        }
    }
    return tr;
}

inline DualPath tree_path(const Triangulation& t, const DualTree& tr,
                          int dest) {
    DualPath rev;
    for (int cur = dest; tr.parent[cur] != cur; cur = tr.parent[cur])
        rev.push_back(tr.step_in[cur]);
    return DualPath(rev.rbegin(), rev.rend());
}

inline DualStep reverse_step(const Triangulation& t, const DualStep& s) {
    auto [self, other] = t.incidence(s.tet, s.face);
    return {other->tet, other->face};
}

inline DualPath reversed_path(const Triangulation& t, const DualPath& p) {
    DualPath out;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        out.push_back(reverse_step(t, *it));
    return out;
}

inline bool is_tree_edge(const DualTree& tr, const FaceGluing& g) {
    auto matches = [&](int child) {
        const DualStep& s = tr.step_in[child];
        return (s.tet == g.a.tet && s.face == g.a.face) ||
               (s.tet == g.b.tet && s.face == g.b.face);
    };
    return (tr.parent[g.a.tet] == g.b.tet && matches(g.a.tet)) ||
           (tr.parent[g.b.tet] == g.a.tet && matches(g.b.tet));
}

}  // namespace detail

// One generator loop (based at tet 0) per face class off the spanning tree.
inline std::vector<DualPath> generator_loops(const Triangulation& t) {
    detail::DualTree tr = detail::dual_tree(t);
    std::vector<DualPath> loops;
    for (const FaceGluing& g : t.gluings) {
        if (detail::is_tree_edge(tr, g)) continue;
        DualPath loop = detail::tree_path(t, tr, g.a.tet);
        loop.push_back({g.a.tet, g.a.face});
        DualPath back = detail::reversed_path(t, detail::tree_path(t, tr, g.b.tet));
        loop.insert(loop.end(), back.begin(), back.end());
        loops.push_back(std::move(loop));
    }
    return loops;
}

struct EdgeLoop {
    DualPath steps;
    // the (tet, edge end-points) incidences swept out; size steps.size() + 1,
    // first and last entries coincide
    std::vector<std::array<int, 3>> slots;  // {tet, u, v}
};

// The boundary of the dual 2-cell around an edge class: walk from tet to tet
// around the edge, always leaving through the face not yet used at the
// current incidence.
inline EdgeLoop edge_loop(const Triangulation& t, int start_tet, int u, int v) {
    EdgeLoop loop;
    int tet = start_tet, a = u, b = v;
    int exit = 0;
    while (exit == a || exit == b) ++exit;  // smallest vertex off the edge
    const std::array<int, 4> start{tet, a, b, exit};
    int guard = 0;
    while (true) {
        loop.slots.push_back({tet, a, b});
        loop.steps.push_back({tet, exit});
        auto [self, other] = t.incidence(tet, exit);
        if (!self) throw InvalidGluing("no gluing at the requested face");
        int entry = self->perm[exit];
        int a2 = self->perm[a], b2 = self->perm[b];
        tet = other->tet;
        a = a2;
        b = b2;
        exit = 6 - a - b - entry;  // the remaining vertex
        if (std::array<int, 4>{tet, a, b, exit} == start) break;
        if (++guard > 64 * t.num_tets)
            throw InvalidGluing("edge walk does not close up");
    }
    loop.slots.push_back({tet, a, b});
    return loop;
}

struct RoundTrip {
    std::vector<cplx> coshd;        // recomputed, one per edge class
    double max_param_residual = 0;  // |recomputed - p_e| over all incidences
    double max_closure_residual = 0;  // dual 2-cell closure defect
    std::vector<SL2> generators;      // holonomy of the off-tree loops
    bool s_locus = false;
};

// Full consistency check: realize p, develop around every edge class, verify
// the dual 2-cells close up and that the flanking-line distances reproduce p.
inline RoundTrip orth_roundtrip(const Triangulation& t, const OrthParams& p,
                                double eps = default_tol().eps) {
    auto found = find_coherent(t, p, eps);
    if (!found) throw NotCoherent();
    const HextetRealization& r = *found;

    RoundTrip out;
    out.s_locus = in_S(t, p);
    out.coshd.assign(t.num_edge_classes, cplx(0));

    std::vector<bool> done(t.num_edge_classes, false);
    for (int tet = 0; tet < t.num_tets; ++tet) {
        for (int e = 0; e < 6; ++e) {
            int cls = t.edge_class[tet][e];
            if (done[cls]) continue;
            done[cls] = true;
            auto [u, v] = edge_vertices(e);
            EdgeLoop loop = edge_loop(t, tet, u, v);
            Developed dev = propagate(t, r, loop.steps, tet, eps);

            out.coshd[cls] =
                form(r.tets[tet][u], r.tets[tet][v]);
            for (size_t k = 0; k < loop.slots.size() - 1; ++k) {
                const auto& [tk, ak, bk] = loop.slots[k];
                (void)tk;
                cplx f = form(dev.hextets[k][ak], dev.hextets[k][bk]);
                out.max_param_residual =
                    std::max(out.max_param_residual, std::abs(f - p[cls]));
            }
            const auto& first = dev.hextets.front();
            const auto& last = dev.hextets.back();
            for (int w = 0; w < 4; ++w)
                out.max_closure_residual = std::max(
                    out.max_closure_residual,
                    dist(first[w], last[w]) / std::max(1.0, first[w].mat().norm()));
        }
    }

    for (const DualPath& loop : generator_loops(t))
        out.generators.push_back(holonomy(t, r, loop, 0, eps));
    return out;
}

}  // namespace orthocalc
