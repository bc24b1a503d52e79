#include "emiqp/geometry.hpp"

namespace emiqp {

Ellipsoid::Ellipsoid(RVector c_, RMatrix Q_) : c(std::move(c_)), Q(std::move(Q_)) {
    if (!Q.square() || Q.rows() != c.size()) throw InvalidArgument("ellipsoid: shape mismatch");
    if (!Q.symmetric()) throw InvalidArgument("ellipsoid: Q not symmetric");
    if (!is_positive_definite(Q)) throw NotPositiveDefinite();
}

Rational Ellipsoid::support_squared(const RVector& d) const { return dot(d, *solve(Q, d)); }

RVector AffineMap::operator()(const RVector& x) const {
    if (kind == Kind::Centered) return L * (x - s);
    return s + L * x;
}

Sandwich sandwich_ellipsoid(const Ellipsoid& E, const Rational& delta) {
    if (delta <= 0) throw InvalidArgument("sandwich_ellipsoid: delta must be positive");
    Ldlt f = ldlt_decompose(E.Q);
    const std::size_t n = E.dim();
    RVector l(n);
    RMatrix B = f.M;
    for (std::size_t j = 0; j < n; ++j) {
        l[j] = sqrt_lower_multiplicative(f.D(j, j), delta);
        Rational s = (1 + delta) * l[j];
        for (std::size_t k = 0; k < n; ++k) B(j, k) *= s;
    }
    // B is upper triangular
    RMatrix Binv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = n; i-- > 0;) {
            Rational s = i == col ? Rational(1) : Rational(0);
            for (std::size_t k = i + 1; k < n; ++k) s -= B(i, k) * Binv(k, col);
            Binv(i, col) = s / B(i, i);
        }
    }
    return Sandwich{AffineMap{B, E.c, AffineMap::Kind::Centered}, B, Binv, f.M, f.D, l, delta};
}

std::optional<HyperplaneReduction> ellipsoid_hyperplane_reduce(const Ellipsoid& E, const Hyperplane& hp,
                                                                std::size_t p) {
    const std::size_t n = E.dim();
    if (n < 2) throw InvalidArgument("ellipsoid_hyperplane_reduce: need n >= 2");
    if (hp.d.size() != n) throw InvalidArgument("ellipsoid_hyperplane_reduce: dimension mismatch");
    auto map = hyperplane_lattice_map(hp.d, hp.beta, p);
    if (!map) return std::nullopt;
    const RMatrix& Tp = map->T;
    RVector q = *solve(Tp, E.c - map->xbar);
    RMatrix M = Tp.transpose() * E.Q * Tp;
    const std::size_t m = n - 1;
    RMatrix Mt = M.block(1, 1, m, m);
    RVector mt(m), qt(m);
    for (std::size_t i = 0; i < m; ++i) {
        mt[i] = M(i + 1, 0);
        qt[i] = q[i + 1];
    }
    RVector w = *solve(Mt, mt);  // M̃⁻¹ m̃
    RVector center = qt + q[0] * w;
    Rational zeta = 1 - q[0] * q[0] * (M(0, 0) - dot(mt, w));
    RMatrix T = Tp.block(0, 1, n, m);
    HyperplaneReduction red{AffineMap{T, map->xbar, AffineMap::Kind::Embedding}, *map, SliceEmpty{}};
    if (zeta > 0) red.preimage = Ellipsoid(center, (1 / zeta) * Mt);
    else if (zeta == 0) red.preimage = SliceSingleton{center};
    return red;
}

EmiqpForm mitr_to_emiqp(const QuadraticObjective& f, const MixedLattice& lattice) {
    const RMatrix& B = lattice.B;
    QuadraticObjective g = f.compose(lattice.c, B);
    auto binv = inverse(B);
    if (!binv) throw InvalidArgument("mitr_to_emiqp: singular basis");
    Ellipsoid E(-(*binv * lattice.c), B.transpose() * B);
    return EmiqpForm{g, E, lattice.p, AffineMap{B, lattice.c, AffineMap::Kind::Embedding}};
}

MitrForm emiqp_to_mitr(const QuadraticObjective& f, const Ellipsoid& E, std::size_t p, const RMatrix& B) {
    if (!(B.transpose() * B == E.Q)) throw InvalidArgument("emiqp_to_mitr: witness does not factor Q");
    auto binv = inverse(B);
    if (!binv) throw InvalidArgument("emiqp_to_mitr: singular witness");
    QuadraticObjective g = f.compose(E.c, *binv);
    MixedLattice lattice(B, -(B * E.c), p);
    return MitrForm{g, lattice, AffineMap{*binv, E.c, AffineMap::Kind::Embedding}};
}

}  // namespace emiqp
