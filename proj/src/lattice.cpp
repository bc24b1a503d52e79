#include "emiqp/lattice.hpp"

#include <stdexcept>

namespace emiqp {

MixedLattice::MixedLattice(RMatrix B_, RVector c_, std::size_t p_)
    : B(std::move(B_)), c(std::move(c_)), p(p_) {
    if (!B.square() || B.rows() != c.size()) throw InvalidArgument("lattice: shape mismatch");
    if (p > c.size()) throw InvalidArgument("lattice: p exceeds dimension");
    if (determinant(B) == 0) throw InvalidArgument("lattice: singular basis");
}

RVector MixedLattice::coordinates(const RVector& x) const {
    auto z = solve(B, x - c);
    if (!z) throw InvalidArgument("lattice: singular basis");
    return *z;
}

bool MixedLattice::contains(const RVector& x) const {
    RVector z = coordinates(x);
    for (std::size_t i = 0; i < p; ++i)
        if (!is_integer(z[i])) return false;
    return true;
}

namespace {

struct GramSchmidt {
    std::vector<RVector> star;
    std::vector<Rational> norms;
    std::vector<std::vector<Rational>> mu;
};

GramSchmidt gram_schmidt(const std::vector<RVector>& b) {
    GramSchmidt g;
    const std::size_t k = b.size();
    g.star.resize(k);
    g.norms.resize(k);
    g.mu.assign(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
        RVector v = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            g.mu[i][j] = dot(b[i], g.star[j]) / g.norms[j];
            if (g.mu[i][j] != 0) v = v - g.mu[i][j] * g.star[j];
        }
        g.norms[i] = norm2(v);
        if (g.norms[i] == 0) throw InvalidArgument("lll_reduce: linearly dependent vectors");
        g.star[i] = std::move(v);
    }
    return g;
}

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

// Round half toward minus infinity.
Integer round_half_down(const Rational& q) { return ceil(q - Rational(1, 2)); }

}  // namespace

LllResult lll_reduce(const std::vector<RVector>& input) {
    const std::size_t k = input.size();
    std::vector<RVector> b = input;
    RMatrix U = RMatrix::identity(k);
    if (k == 0) return {b, U};
    GramSchmidt g = gram_schmidt(b);
    const Rational lovasz(3, 4);
    std::size_t i = 1;
    while (i < k) {
        for (std::size_t j = i; j-- > 0;) {
            Integer q = round_nearest(g.mu[i][j]);
            if (q == 0) continue;
            Rational qr(q);
            b[i] = b[i] - qr * b[j];
            for (std::size_t c = 0; c < k; ++c) U(i, c) -= qr * U(j, c);
            for (std::size_t l = 0; l < j; ++l) g.mu[i][l] -= qr * g.mu[j][l];
            g.mu[i][j] -= qr;
        }
        const Rational& m = g.mu[i][i - 1];
        if (g.norms[i] >= (lovasz - m * m) * g.norms[i - 1]) {
            ++i;
        } else {
            std::swap(b[i], b[i - 1]);
            for (std::size_t c = 0; c < k; ++c) std::swap(U(i, c), U(i - 1, c));
            g = gram_schmidt(b);
            i = i > 1 ? i - 1 : 1;
        }
    }
    return {b, U};
}

bool is_lll_reduced(const std::vector<RVector>& basis) {
    if (basis.empty()) return true;
    GramSchmidt g = gram_schmidt(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (abs(g.mu[i][j]) > Rational(1, 2)) return false;
        if (i > 0) {
            const Rational& m = g.mu[i][i - 1];
            if (g.norms[i] < (Rational(3, 4) - m * m) * g.norms[i - 1]) return false;
        }
    }
    return true;
}

bool flat_width_bound(const RVector& d, const Rational& delta, std::size_t p, const Rational& scale) {
    Rational lhs = 4 * delta * delta * norm2(d) * scale * scale;
    long e = static_cast<long>(p * (p - (p > 0 ? 1 : 0)) / 2);
    Rational rhs = Rational(static_cast<long>(p * p)) * pow2(e);
    return lhs <= rhs;
}

bool is_lattice_direction(const RVector& d, const MixedLattice& lattice) {
    if (is_zero(d)) return false;
    for (std::size_t i = 0; i < lattice.dim(); ++i) {
        Rational v = dot(d, lattice.B.col(i));
        if (i < lattice.p ? !is_integer(v) : v != 0) return false;
    }
    return true;
}

FlatDichotomy flat_or_point(const RVector& a, const Rational& delta, const MixedLattice& lattice) {
    if (delta < 0) throw InvalidArgument("flat_or_point: negative radius");
    const std::size_t n = lattice.dim();
    const std::size_t p = lattice.p;
    if (a.size() != n) throw InvalidArgument("flat_or_point: dimension mismatch");
    if (p == 0) return LatticePoint{a};

    // projection onto the orthogonal complement of the continuous directions
    RMatrix R = lattice.B.block(0, p, n, n - p);
    std::optional<RMatrix> gramInv;
    if (n > p) gramInv = inverse(R.transpose() * R);
    auto project = [&](const RVector& v) {
        if (!gramInv) return v;
        return v - R * (*gramInv * (R.transpose() * v));
    };

    std::vector<RVector> proj;
    for (std::size_t i = 0; i < p; ++i) proj.push_back(project(lattice.B.col(i)));
    RVector t = project(a - lattice.c);

    LllResult red = lll_reduce(proj);
    GramSchmidt g = gram_schmidt(red.basis);

    RVector r = t;
    for (std::size_t i = p; i-- > 0;) {
        Integer k = round_half_down(dot(r, g.star[i]) / g.norms[i]);
        if (k != 0) r = r - Rational(k) * red.basis[i];
    }
    if (norm2(r) <= delta * delta) {
        RVector x = a - r;
        if (!lattice.contains(x)) throw std::logic_error("flat_or_point: rounding left the lattice");
        return LatticePoint{x};
    }
    RVector d = (1 / g.norms[p - 1]) * g.star[p - 1];
    if (!flat_width_bound(d, delta, p)) throw std::logic_error("flat_or_point: width bound violated");
    return FlatDirection{d};
}

namespace {

// Unimodular V (k×k) with rowᵀ V = (g, 0, ..., 0), g = gcd > 0; row must be nonzero.
RMatrix euclid_columns(RVector row) {
    const std::size_t k = row.size();
    RMatrix V = RMatrix::identity(k);
    auto colop = [&](std::size_t dst, std::size_t src, const Rational& q) {
        row[dst] -= q * row[src];
        for (std::size_t i = 0; i < k; ++i) V(i, dst) -= q * V(i, src);
    };
    while (true) {
        std::size_t piv = k;
        for (std::size_t j = 0; j < k; ++j)
            if (row[j] != 0 && (piv == k || abs(row[j]) < abs(row[piv]))) piv = j;
        if (piv == k) throw InvalidArgument("euclid_columns: zero row");
        bool done = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == piv || row[j] == 0) continue;
            colop(j, piv, Rational(floor(row[j] / row[piv])));
            done = false;
        }
        if (done) {
            if (piv != 0) {
                std::swap(row[0], row[piv]);
                for (std::size_t i = 0; i < k; ++i) std::swap(V(i, 0), V(i, piv));
            }
            if (row[0] < 0) {
                row[0] = -row[0];
                for (std::size_t i = 0; i < k; ++i) V(i, 0) = -V(i, 0);
            }
            return V;
        }
    }
}

}  // namespace

std::optional<HyperplaneMap> hyperplane_lattice_map(const RVector& d, const Rational& beta, std::size_t p) {
    const std::size_t n = d.size();
    if (p < 1 || p > n) throw InvalidArgument("hyperplane_lattice_map: need 1 <= p <= n");
    if (is_zero(d)) throw InvalidArgument("hyperplane_lattice_map: zero direction");
    for (std::size_t j = p; j < n; ++j)
        if (d[j] != 0) throw InvalidArgument("hyperplane_lattice_map: continuous entry in direction");
    Integer l = common_denominator(d);
    Integer g = 0;
    for (const auto& v : d) {
        Integer z = Rational(v * l).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    Rational scale = Rational(l) / Rational(g);
    RVector dn = scale * d;
    Rational bn = scale * beta;
    if (!is_integer(bn)) return std::nullopt;

    RMatrix V = euclid_columns(RVector(dn.begin(), dn.begin() + static_cast<long>(p)));
    RMatrix T = RMatrix::identity(n);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) T(i, j) = V(i, j);
    RVector xbar = bn * T.col(0);
    return HyperplaneMap{dn, bn, xbar, T};
}

RVector pull_back_direction(const RMatrix& B, const RVector& dprime, std::size_t p) {
    RVector d = B.transpose() * dprime;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i < p ? !is_integer(d[i]) : d[i] != 0)
            throw InvalidArgument("pull_back_direction: direction is not a lattice direction");
    }
    return d;
}

std::optional<IntegerSolutionSet> integer_solutions(const RMatrix& C, const RVector& e) {
    const std::size_t m = C.rows();
    const std::size_t k = C.cols();
    if (e.size() != m) throw InvalidArgument("integer_solutions: shape mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_integer(e[i])) throw InvalidArgument("integer_solutions: non-integer data");
        for (std::size_t j = 0; j < k; ++j)
            if (!is_integer(C(i, j))) throw InvalidArgument("integer_solutions: non-integer data");
    }
    RMatrix A = C;
    RMatrix V = RMatrix::identity(k);
    std::vector<long> pivotOf(m, -1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m && r < k; ++i) {
        RVector tail(k - r);
        for (std::size_t j = r; j < k; ++j) tail[j - r] = A(i, j);
        if (is_zero(tail)) continue;
        RMatrix W = euclid_columns(tail);
        // apply to the trailing columns of A and V
        RMatrix Ablk = A.block(0, r, m, k - r) * W;
        RMatrix Vblk = V.block(0, r, k, k - r) * W;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t j = r; j < k; ++j) A(a, j) = Ablk(a, j - r);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t j = r; j < k; ++j) V(a, j) = Vblk(a, j - r);
        pivotOf[i] = static_cast<long>(r);
        ++r;
    }
    RVector y(k);
    for (std::size_t i = 0; i < m; ++i) {
        Rational s = e[i];
        for (std::size_t j = 0; j < r; ++j)
            if (static_cast<long>(j) != pivotOf[i]) s -= A(i, j) * y[j];
        if (pivotOf[i] < 0) {
            if (s != 0) return std::nullopt;
            continue;
        }
        auto q = static_cast<std::size_t>(pivotOf[i]);
        Rational v = s / A(i, q);
        if (!is_integer(v)) return std::nullopt;
        y[q] = v;
    }
    return IntegerSolutionSet{V * y, V.block(0, r, k, k - r)};
}

bool is_unimodular(const RMatrix& T) {
    if (!T.square()) return false;
    for (std::size_t i = 0; i < T.rows(); ++i)
        for (std::size_t j = 0; j < T.cols(); ++j)
            if (!is_integer(T(i, j))) return false;
    Rational det = determinant(T);
    return det == 1 || det == -1;
}

}  // namespace emiqp
