#pragma once

// Numerical continuation along the hextet variety: predictor steps along the
// complex tangent (Jacobian null vector), Newton correction constrained to
// the hyperplane through the predicted point.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "orthocalc/triangulation.hpp"

namespace orthocalc {

namespace detail {

// Adjugate of a 4x4 complex matrix by cofactor expansion.
inline Eigen::Matrix4cd adjugate4(const Eigen::Matrix4cd& m) {
    Eigen::Matrix4cd adj;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Eigen::Matrix3cd minor;
            int r = 0;
            for (int a = 0; a < 4; ++a) {
                if (a == i) continue;
                int c = 0;
                for (int b = 0; b < 4; ++b) {
                    if (b == j) continue;
                    minor(r, c++) = m(a, b);
                }
                ++r;
            }
            double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(j, i) = s * minor.determinant();  // transpose of cofactors
        }
    }
    return adj;
}

}  // namespace detail

// F_t(p) = det of the hextet matrix of tetrahedron t.
inline Eigen::VectorXcd hextet_system(const Triangulation& t,
                                      const OrthParams& p) {
    Eigen::VectorXcd f(t.num_tets);
    for (int tet = 0; tet < t.num_tets; ++tet)
        f(tet) = hextet_matrix(t, tet, p).det();
    return f;
}

// d F_t / d p_e = sum over edges of class e of 2 adj(X_t)_{ij}
// (both symmetric entries vary together).
inline Eigen::MatrixXcd hextet_jacobian(const Triangulation& t,
                                        const OrthParams& p) {
    Eigen::MatrixXcd J =
        Eigen::MatrixXcd::Zero(t.num_tets, t.num_edge_classes);
    for (int tet = 0; tet < t.num_tets; ++tet) {
        Eigen::Matrix4cd X = hextet_matrix(t, tet, p).eigen();
        Eigen::Matrix4cd adj = detail::adjugate4(X);
        for (int e = 0; e < 6; ++e) {
            auto [u, v] = edge_vertices(e);
            J(tet, t.edge_class[tet][e]) += 2.0 * adj(u, v);
        }
    }
    return J;
}

struct TraceRun {
    OrthParams start;
    OrthParams direction;     // optional phase hint; may be empty
    double step = 0.05;
    int max_steps = 100;
    double tol = 1e-10;       // corrector residual target
    double t_margin = 1e-3;   // stop when this close to T
};

enum class StopReason { MaxSteps, TProximity, CorrectorDiverged };

struct TraceResult {
    std::vector<OrthParams> points;
    StopReason reason = StopReason::MaxSteps;
};

namespace detail {

// Unit null vector of J, phase-aligned with `prev` (if nonempty).  Throws
// when the null space is not one-dimensional.
inline Eigen::VectorXcd curve_tangent(const Eigen::MatrixXcd& J,
                                      const Eigen::VectorXcd& prev,
                                      double rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int n = static_cast<int>(J.cols());
    double top = sv(0);
    if (top <= 0 || (n >= 2 && sv(n - 2) <= rank_tol * top))
        throw SingularJacobian();
    Eigen::VectorXcd t = svd.matrixV().col(n - 1);
    cplx phase(1, 0);
    if (prev.size() == t.size()) {
        cplx ip = prev.dot(t);  // Hermitian: conj(prev) . t
        if (std::abs(ip) > 1e-12) phase = ip / std::abs(ip);
    } else {
        int k = 0;
        for (int i = 1; i < t.size(); ++i)
            if (std::abs(t(i)) > std::abs(t(k))) k = i;
        phase = t(k) / std::abs(t(k));
    }
    return t / phase;
}

}  // namespace detail

// Traces the curve from run.start.  Each accepted point satisfies
// |F| <= run.tol; the walk stops at the step budget, near T, or when the
// corrector stops converging even after halving the step ten times.
inline TraceResult trace_curve(const Triangulation& t, const TraceRun& run) {
    const int n = t.num_edge_classes;
    if (static_cast<int>(run.start.size()) != n)
        throw ParseError("start point has the wrong number of coordinates");
    if (!in_PK(t, run.start, 1e-6)) throw NotInPK();

    auto to_vec = [&](const OrthParams& p) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = p[i];
        return v;
    };
    auto to_params = [&](const Eigen::VectorXcd& v) {
        OrthParams p(n);
        for (int i = 0; i < n; ++i) p[i] = v(i);
        return p;
    };
    auto near_T = [&](const OrthParams& p) {
        for (cplx v : p)
            if (std::abs(v - 1.0) < run.t_margin ||
                std::abs(v + 1.0) < run.t_margin)
                return true;
        return false;
    };

    // Newton correction constrained to the hyperplane through `pred`
    // orthogonal to the tangent.
    auto correct = [&](Eigen::VectorXcd q, const Eigen::VectorXcd& pred,
                       const Eigen::VectorXcd& tan,
                       Eigen::VectorXcd* out) -> bool {
        for (int it = 0; it < 25; ++it) {
            OrthParams qp = to_params(q);
            Eigen::VectorXcd f = hextet_system(t, qp);
            cplx h = tan.dot(q - pred);
            double resid = std::sqrt(f.squaredNorm() + std::norm(h));
            if (resid < run.tol) {
                *out = q;
                return true;
            }
            if (resid > 1e6) return false;
            Eigen::MatrixXcd Jg(n + 1, n);
            Jg.topRows(t.num_tets) = hextet_jacobian(t, qp);
            Jg.bottomRows(1) = tan.adjoint();
            Eigen::VectorXcd g(n + 1);
            g.head(t.num_tets) = f;
            g(n) = h;
            Eigen::VectorXcd delta =
                Jg.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(g);
            q -= delta;
        }
        return false;
    };

    TraceResult res;
    Eigen::VectorXcd cur = to_vec(run.start);

    // settle the start point onto the curve first
    {
        Eigen::VectorXcd tan = detail::curve_tangent(
            hextet_jacobian(t, run.start),
            run.direction.empty() ? Eigen::VectorXcd() : to_vec(run.direction),
            default_tol().rank_tol);
        Eigen::VectorXcd settled;
        if (!correct(cur, cur, tan, &settled)) {
            res.reason = StopReason::CorrectorDiverged;
            return res;
        }
        cur = settled;
    }
    res.points.push_back(to_params(cur));
    if (near_T(res.points.back())) {
        res.reason = StopReason::TProximity;
        return res;
    }

    Eigen::VectorXcd prev_tan =
        run.direction.empty() ? Eigen::VectorXcd() : to_vec(run.direction);

    for (int k = 0; k < run.max_steps; ++k) {
        Eigen::VectorXcd tan = detail::curve_tangent(
            hextet_jacobian(t, to_params(cur)), prev_tan,
            default_tol().rank_tol);
        double h = run.step;
        bool accepted = false;
        Eigen::VectorXcd next;
        for (int halving = 0; halving <= 10; ++halving) {
            Eigen::VectorXcd pred = cur + h * tan;
            if (correct(pred, pred, tan, &next)) {
                accepted = true;
                break;
            }
            h *= 0.5;
        }
        if (!accepted) {
            res.reason = StopReason::CorrectorDiverged;
            return res;
        }
        cur = next;
        prev_tan = tan;
        res.points.push_back(to_params(cur));
        if (near_T(res.points.back())) {
            res.reason = StopReason::TProximity;
            return res;
        }
    }
    res.reason = StopReason::MaxSteps;
    return res;
}

}  // namespace orthocalc
