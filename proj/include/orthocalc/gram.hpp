#pragma once

// Realization of prescribed pairwise cosh-distances by line configurations,
// degeneracy tests and the congruence solver (rigidity).

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <vector>

#include "orthocalc/mat2.hpp"

namespace orthocalc {

using LineConfig = std::vector<LineMatrix>;

struct GramMatrix {
    int n = 0;
    std::vector<std::vector<cplx>> x;

    GramMatrix() = default;

    explicit GramMatrix(std::vector<std::vector<cplx>> entries,
                        double eps = 1e-9)
        : n(static_cast<int>(entries.size())), x(std::move(entries)) {
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(x[i].size()) != n)
                throw ParseError("Gram matrix is not square");
            if (std::abs(x[i][i] - 1.0) > eps)
                throw ParseError("Gram matrix diagonal is not 1");
            for (int j = 0; j < i; ++j)
                if (std::abs(x[i][j] - x[j][i]) > eps)
                    throw ParseError("Gram matrix is not symmetric");
        }
    }

    static GramMatrix from_lines(const LineConfig& lines) {
        int n = static_cast<int>(lines.size());
        std::vector<std::vector<cplx>> e(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e[i][j] = form(lines[i], lines[j]);
        // symmetrize exactly; the form already is up to rounding
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) e[i][j] = e[j][i] = 0.5 * (e[i][j] + e[j][i]);
        for (int i = 0; i < n; ++i) e[i][i] = 1.0;
        return GramMatrix(std::move(e), 1e-6);
    }

    Eigen::MatrixXcd eigen() const {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = x[i][j];
        return m;
    }

    cplx det() const { return eigen().determinant(); }

    double max_abs() const {
        double s = 0;
        for (auto& row : x)
            for (auto& v : row) s = std::max(s, std::abs(v));
        return s;
    }
};

// Numerical rank via singular values with relative threshold tol * sigma_max.
inline int rank(const GramMatrix& X, double tol = default_tol().rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X.eigen());
    auto sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double cut = tol * sv(0);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return r;
}

namespace detail {

// Lagrange symmetric congruence reduction over C:  X = B^T B with B r x n,
// r = rank(X).  Pivots on the largest-modulus remaining diagonal entry; when
// all diagonal candidates vanish but off-diagonals remain, eliminates a
// hyperbolic pair (the complex bilinear form admits isotropic vectors).
inline Eigen::MatrixXcd symmetric_factor(Eigen::MatrixXcd X, int max_rank,
                                         double tol) {
    const int n = static_cast<int>(X.rows());
    double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
    std::vector<Eigen::VectorXcd> rows;
    for (int iter = 0; iter < n + 1; ++iter) {
        double rem = X.cwiseAbs().maxCoeff();
        if (rem <= tol * scale) break;
        // diagonal pivot
        int k = -1;
        double best = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(X(i, i)) > best) best = std::abs(X(i, i)), k = i;
        if (best > tol * scale) {
            cplx s = std::sqrt(X(k, k));
            Eigen::VectorXcd v = X.col(k) / s;
            X -= v * v.transpose();
            rows.push_back(v);
        } else {
            // hyperbolic pair: largest off-diagonal entry
            int pi = -1, pj = -1;
            double obest = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (std::abs(X(i, j)) > obest)
                        obest = std::abs(X(i, j)), pi = i, pj = j;
            if (pi < 0 || obest <= tol * scale) break;
            cplx xij = X(pi, pj);
            Eigen::VectorXcd a = X.col(pi), b = X.col(pj);
            cplx s = std::sqrt(2.0 * xij);
            Eigen::VectorXcd v1 = (a + b) / s;
            Eigen::VectorXcd v2 = cplx(0, 1) * (a - b) / s;
            X -= v1 * v1.transpose();
            X -= v2 * v2.transpose();
            rows.push_back(v1);
            rows.push_back(v2);
        }
        if (static_cast<int>(rows.size()) > max_rank)
            throw FactorizationFailed();
    }
    Eigen::MatrixXcd B(static_cast<int>(rows.size()), n);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        B.row(i) = rows[i].transpose();
    return B;
}

inline Eigen::MatrixXcd coords_matrix(const LineConfig& lines) {
    Eigen::MatrixXcd C(3, static_cast<int>(lines.size()));
    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
        auto c = coords_of(lines[i]);
        C(0, i) = c[0];
        C(1, i) = c[1];
        C(2, i) = c[2];
    }
    return C;
}

}  // namespace detail

// Constructive realization: returns normalized lines l_1..l_n with
// form(l_i, l_j) = x_ij, expressed in the orthonormal basis E1, E2, E3.
// Requires rank(X) <= 3.
inline LineConfig realize(const GramMatrix& X,
                          double tol = default_tol().rank_tol) {
    if (rank(X, tol) > 3) throw RankTooHigh();
    Eigen::MatrixXcd B = detail::symmetric_factor(X.eigen(), 3, 1e-11);
    LineConfig lines;
    lines.reserve(X.n);
    for (int i = 0; i < X.n; ++i) {
        cplx c1 = B.rows() > 0 ? B(0, i) : cplx(0);
        cplx c2 = B.rows() > 1 ? B(1, i) : cplx(0);
        cplx c3 = B.rows() > 2 ? B(2, i) : cplx(0);
        lines.push_back(line_from_coords(c1, c2, c3));
    }
    return lines;
}

// True iff the lines fail to span L.
inline bool is_degenerate(const LineConfig& cfg,
                          double tol = default_tol().rank_tol) {
    if (cfg.size() < 3) return true;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::coords_matrix(cfg));
    auto sv = svd.singularValues();
    return sv(sv.size() - 1) <= tol * std::max(1.0, sv(0));
}

// Gram-side degeneracy: rank(X) == 2.  Undecidable when every entry is
// within eps of +-1 (the hypothesis of the rank characterization fails).
inline bool degenerate_gram(const GramMatrix& X,
                            double tol = default_tol().rank_tol,
                            double eps = default_tol().eps) {
    bool some_generic = false;
    for (int i = 0; i < X.n && !some_generic; ++i)
        for (int j = i + 1; j < X.n; ++j)
            if (std::abs(X.x[i][j] - 1.0) > eps &&
                std::abs(X.x[i][j] + 1.0) > eps) {
                some_generic = true;
                break;
            }
    if (!some_generic) throw Undecidable();
    return rank(X, tol) == 2;
}

// A common perpendicular of a degenerate configuration (normalized), if one
// exists: a line n with <l_i, n> = 0 for all i.
inline std::optional<LineMatrix> common_perpendicular(
    const LineConfig& cfg, double tol = default_tol().rank_tol) {
    Eigen::MatrixXcd C = detail::coords_matrix(cfg).transpose();  // n x 3
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    if (sv(2) > tol * std::max(1.0, sv(0))) return std::nullopt;
    Eigen::Vector3cd v = svd.matrixV().col(2);
    LineMatrix raw = line_from_coords(v(0), v(1), v(2));
    if (std::abs(raw.det()) < 1e-12) return std::nullopt;  // isotropic kernel
    return raw.normalized();
}

struct Congruence {
    SL2 g;
    int sign;         // conj_by(g, src_i) = sign * dst_i for all i
    double residual;  // of the matched solution
};

// Solves for the isometry relating two congruent configurations: g with
// g l_i = (+-m_i) g, a single global sign for all i.  The source must span L.
inline Congruence congruence(const LineConfig& src, const LineConfig& dst,
                             double eps = default_tol().eps) {
    if (src.size() != dst.size() || src.empty())
        throw NoCongruence("size mismatch");
    if (is_degenerate(src)) throw DegenerateSource();

    const int n = static_cast<int>(src.size());
    auto solve_for_sign = [&](int sgn) -> std::pair<Mat2, double> {
        Eigen::MatrixXcd A(4 * n, 4);
        for (int i = 0; i < n; ++i) {
            const Mat2& l = src[i].mat();
            Mat2 m = (sgn > 0 ? dst[i] : -dst[i]).mat();
            // rows of (g l - m g) as linear forms in (a, b, c, d)
            // entry (0,0): a l.a + b l.c - (m.a a + m.b c)
            A.row(4 * i + 0) << l.a - m.a, l.c, -m.b, 0;
            // entry (0,1): a l.b + b l.d - (m.a b + m.b d)
            A.row(4 * i + 1) << l.b, l.d - m.a, 0, -m.b;
            // entry (1,0): c l.a + d l.c - (m.c a + m.d c)
            A.row(4 * i + 2) << -m.c, 0, l.a - m.d, l.c;
            // entry (1,1): c l.b + d l.d - (m.c b + m.d d)
            A.row(4 * i + 3) << 0, -m.c, l.b, l.d - m.d;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
        Eigen::Vector4cd v = svd.matrixV().col(3);
        double resid = svd.singularValues()(3) /
                       std::max(1.0, svd.singularValues()(0));
        return {Mat2(v(0), v(1), v(2), v(3)), resid};
    };

    auto [gp, rp] = solve_for_sign(+1);
    auto [gm, rm] = solve_for_sign(-1);
    int sign = rp <= rm ? +1 : -1;
    const Mat2& graw = sign > 0 ? gp : gm;
    double resid = sign > 0 ? rp : rm;
    if (resid > eps) throw NoCongruence();
    if (std::abs(graw.det()) < 1e-12) throw NoCongruence("singular solution");
    return {SL2::normalize(graw), sign, resid};
}

}  // namespace orthocalc
