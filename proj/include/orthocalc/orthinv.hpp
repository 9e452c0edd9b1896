#pragma once

// The ortholength invariant of a representation: the trace formula, the
// direct axis method, and admissibility of the peripheral subgroup.

#include <vector>

#include "orthocalc/mat2.hpp"

namespace orthocalc {

struct EdgeHolonomyData {
    SL2 h;               // lift of a nontrivial peripheral element
    std::vector<SL2> g;  // one lift per edge of the triangulation
};

struct OrthInvariant {
    std::vector<cplx> coshd;
};

// The peripheral subgroup generated by m, l supports the invariant unless
// it is trivial/parabolic (both tr^2 = 4) or a Z/2+Z/2 image (all three
// squared traces vanish).
inline bool admissible(const SL2& m, const SL2& l,
                       double eps = default_tol().eps_par) {
    cplx tm = m.tr(), tl = l.tr(), tml = (m * l).tr();
    bool both_parabolic =
        std::abs(tm * tm - 4.0) < eps && std::abs(tl * tl - 4.0) < eps;
    bool klein_four = std::abs(tm * tm) < eps && std::abs(tl * tl) < eps &&
                      std::abs(tml * tml) < eps;
    return !(both_parabolic || klein_four);
}

// cosh d = 2 (tr(hg) tr(h^-1 g) - tr^2 g) / (tr^2 h - 4) - 1.
inline cplx cosh_d_trace(const SL2& h, const SL2& g,
                         double eps_par = default_tol().eps_par) {
    cplx th = h.tr();
    if (std::abs(th * th - 4.0) < eps_par) throw ParabolicPeripheral();
    cplx tg = g.tr();
    cplx num = tr(h.mat() * g.mat()) * tr(h.inverse().mat() * g.mat()) - tg * tg;
    return 2.0 * num / (th * th - 4.0) - 1.0;
}

// Same quantity computed geometrically as <axis(h), g . axis(h)>.
inline cplx cosh_d_axis(const SL2& h, const SL2& g,
                        double eps_par = default_tol().eps_par) {
    LineMatrix sigma = axis(h, eps_par);
    return form(sigma, conj_by(g, sigma));
}

inline OrthInvariant orth_invariant(const EdgeHolonomyData& data,
                                    double eps_par = default_tol().eps_par) {
    OrthInvariant out;
    out.coshd.reserve(data.g.size());
    for (const SL2& gi : data.g)
        out.coshd.push_back(cosh_d_trace(data.h, gi, eps_par));
    return out;
}

}  // namespace orthocalc
