#include "emiqp/polytope.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emiqp {

bool Polytope::contains(const RVector& x) const {
    RVector lhs = W * x;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (lhs[i] > w[i]) return false;
    return true;
}

Polytope Polytope::with_rows(const RMatrix& extraW, const RVector& extraw) const {
    RMatrix W2(W.rows() + extraW.rows(), W.cols());
    RVector w2 = w;
    for (std::size_t i = 0; i < W.rows(); ++i) W2.set_row(i, W.row(i));
    for (std::size_t i = 0; i < extraW.rows(); ++i) W2.set_row(W.rows() + i, extraW.row(i));
    w2.insert(w2.end(), extraw.begin(), extraw.end());
    return Polytope{W2, w2};
}

namespace {

// Calls fn on every k-subset of {0..m-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t m, std::size_t k, Fn&& fn) {
    if (k > m) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool lex_less(const RVector& a, const RVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RMatrix rows_of(const RMatrix& W, const std::vector<std::size_t>& idx) {
    RMatrix S(idx.size(), W.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) S.set_row(i, W.row(idx[i]));
    return S;
}

}  // namespace

std::vector<RVector> enumerate_vertices(const Polytope& P) {
    const std::size_t n = P.dim();
    const std::size_t m = P.W.rows();
    std::vector<RVector> out;
    if (n == 0) {
        if (P.contains(RVector{})) out.emplace_back();
        return out;
    }
    for_each_subset(m, n, [&](const std::vector<std::size_t>& idx) {
        RMatrix S = rows_of(P.W, idx);
        RVector rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = P.w[idx[i]];
        auto x = solve(S, rhs);
        if (x && P.contains(*x)) out.push_back(std::move(*x));
    });
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_bounded(const RMatrix& W) {
    const std::size_t n = W.cols();
    if (n == 0) return true;
    if (rank(W) < n) return false;
    bool bounded = true;
    for_each_subset(W.rows(), n - 1, [&](const std::vector<std::size_t>& idx) {
        if (!bounded) return;
        RMatrix S = rows_of(W, idx);
        RMatrix N = nullspace(S);
        if (N.cols() != 1) return;
        RVector r = N.col(0);
        RVector wr = W * r;
        bool nonpos = true, nonneg = true;
        for (const auto& v : wr) {
            if (v > 0) nonpos = false;
            if (v < 0) nonneg = false;
        }
        if (nonpos || nonneg) bounded = false;
    });
    return bounded;
}

bool ellipsoid_inside_polytope(const Ellipsoid& E, const Polytope& P) {
    RMatrix Qinv = *inverse(E.Q);
    for (std::size_t i = 0; i < P.W.rows(); ++i) {
        RVector a = P.W.row(i);
        Rational slack = P.w[i] - dot(a, E.c);
        if (slack < 0) return false;
        if (slack * slack < quadratic_form(Qinv, a)) return false;
    }
    return true;
}

bool polytope_inside_ellipsoid(const Polytope& P, const Ellipsoid& E) {
    for (const auto& v : enumerate_vertices(P))
        if (!E.contains(v)) return false;
    return true;
}

namespace {

// Minimum-volume enclosing ellipsoid {x : (x-c)ᵀA(x-c) <= 1} of the columns of V.
void khachiyan(const Eigen::MatrixXd& V, double tol, Eigen::VectorXd& c, Eigen::MatrixXd& A) {
    const long n = V.rows();
    const long m = V.cols();
    Eigen::MatrixXd Qm(n + 1, m);
    Qm.topRows(n) = V;
    Qm.row(n).setOnes();
    Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    for (int iter = 0; iter < 200000; ++iter) {
        Eigen::MatrixXd X = Qm * u.asDiagonal() * Qm.transpose();
        Eigen::MatrixXd Y = X.ldlt().solve(Qm);
        Eigen::VectorXd M = (Qm.cwiseProduct(Y)).colwise().sum();
        long j;
        double mj = M.maxCoeff(&j);
        double step = (mj - n - 1) / ((n + 1) * (mj - 1));
        u *= (1 - step);
        u(j) += step;
        if (step < tol) break;
    }
    c = V * u;
    Eigen::MatrixXd S = V * u.asDiagonal() * V.transpose() - c * c.transpose();
    A = S.inverse() / static_cast<double>(n);
}

}  // namespace

Ellipsoid round_polytope(const Polytope& P) {
    const std::size_t n = P.dim();
    if (n == 0) throw InvalidArgument("round_polytope: zero dimension");
    if (!is_bounded(P.W)) throw InvalidArgument("round_polytope: polytope is unbounded");
    std::vector<RVector> verts = enumerate_vertices(P);
    if (verts.empty()) throw InvalidArgument("round_polytope: polytope is empty");
    {
        RMatrix D(verts.size() - 1, n);
        for (std::size_t i = 1; i < verts.size(); ++i) D.set_row(i - 1, verts[i] - verts[0]);
        if (verts.size() <= n || rank(D) < n) throw InvalidArgument("round_polytope: polytope is not full-dimensional");
    }
    // normalize coordinates before the floating-point phase
    RVector lo = verts[0], hi = verts[0];
    for (const auto& v : verts)
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] < lo[i]) lo[i] = v[i];
            if (v[i] > hi[i]) hi[i] = v[i];
        }
    RVector mid(n), half(n);
    for (std::size_t i = 0; i < n; ++i) {
        mid[i] = (lo[i] + hi[i]) / 2;
        half[i] = (hi[i] - lo[i]) / 2;
    }
    Eigen::MatrixXd V(n, verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) V(i, j) = to_double((verts[j][i] - mid[i]) / half[i]);

    const Rational shrink = Rational(2 * static_cast<long>(n) + 1, 2) * Rational(2 * static_cast<long>(n) + 1, 2);
    for (double tol = 1e-4; tol > 1e-13; tol /= 10) {
        Eigen::VectorXd cd;
        Eigen::MatrixXd Ad;
        khachiyan(V, tol, cd, Ad);
        if (!cd.allFinite() || !Ad.allFinite()) continue;
        RVector c(n);
        RMatrix Q(n, n);
        for (std::size_t i = 0; i < n; ++i) c[i] = mid[i] + half[i] * truncate_dyadic(from_double(cd(i)), 40);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double a = 0.5 * (Ad(i, j) + Ad(j, i));
                Rational q = truncate_dyadic(from_double(a), 40) / (half[i] * half[j]);
                Q(i, j) = q;
                Q(j, i) = q;
            }
        if (!is_positive_definite(Q)) continue;
        Rational worst = 0;
        for (const auto& v : verts) worst = std::max(worst, quadratic_form(Q, v - c));
        if (worst == 0) continue;
        Q = (1 / worst) * Q;
        Ellipsoid outer(c, Q);
        Ellipsoid inner(c, shrink * Q);
        if (ellipsoid_inside_polytope(inner, P)) return outer;
    }
    throw std::logic_error("round_polytope: could not certify the rounding ellipsoid");
}

std::optional<FullDimensional> make_full_dimensional(const Polytope& P, std::size_t p) {
    const std::size_t n = P.dim();
    if (p > n) throw InvalidArgument("make_full_dimensional: p exceeds dimension");
    std::vector<RVector> verts = enumerate_vertices(P);
    if (verts.empty()) return std::nullopt;
    RMatrix D(verts.size() - 1, n);
    for (std::size_t i = 1; i < verts.size(); ++i) D.set_row(i - 1, verts[i] - verts[0]);
    std::size_t r = verts.size() > 1 ? rank(D) : 0;
    if (r == n) return FullDimensional{AffineMap{RMatrix::identity(n), zeros(n), AffineMap::Kind::Embedding}, P, p, n};

    // affine hull {x : A x = b}
    RMatrix A = (verts.size() > 1 ? nullspace(D) : RMatrix::identity(n)).transpose();
    RVector b = A * verts[0];
    const std::size_t q = n - p;
    RMatrix AI = A.block(0, 0, A.rows(), p);
    RMatrix AC = A.block(0, p, A.rows(), q);

    Echelon ech = row_echelon(AC);
    const std::size_t rc = ech.pivots.size();
    // rows of ops annihilating A_C constrain the integer block alone
    RMatrix N = ech.ops.block(rc, 0, A.rows() - rc, A.rows());
    RMatrix C = N * AI;
    RVector e = N * b;
    for (std::size_t i = 0; i < C.rows(); ++i) {
        RVector row = C.row(i);
        row.push_back(e[i]);
        Rational s(common_denominator(row));
        for (std::size_t j = 0; j < p; ++j) C(i, j) *= s;
        e[i] *= s;
    }
    auto sols = integer_solutions(C, e);
    if (!sols) return std::nullopt;
    const RMatrix& K = sols->kernel;
    const std::size_t pp = K.cols();

    // x_C = G (b - A_I x_I) + K_C y_C
    RMatrix G(q, A.rows());
    for (std::size_t k = 0; k < rc; ++k)
        for (std::size_t j = 0; j < A.rows(); ++j) G(ech.pivots[k], j) = ech.ops(k, j);
    RMatrix KC = nullspace(AC);
    const std::size_t nn = pp + KC.cols();
    if (nn != r) throw std::logic_error("make_full_dimensional: dimension mismatch");

    RVector xbar(n);
    for (std::size_t i = 0; i < p; ++i) xbar[i] = sols->particular[i];
    RVector xc = G * (b - AI * sols->particular);
    for (std::size_t i = 0; i < q; ++i) xbar[p + i] = xc[i];

    RMatrix M(n, nn);
    RMatrix GAK = G * AI * K;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < pp; ++j) M(i, j) = K(i, j);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < pp; ++j) M(p + i, j) = -GAK(i, j);
        for (std::size_t j = 0; j < KC.cols(); ++j) M(p + i, pp + j) = KC(i, j);
    }
    Polytope reduced{P.W * M, P.w - P.W * xbar};
    return FullDimensional{AffineMap{M, xbar, AffineMap::Kind::Embedding}, reduced, pp, nn};
}

}  // namespace emiqp
