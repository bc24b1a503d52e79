#pragma once

#include "emiqp/generators.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <random>

namespace testing {

using namespace emiqp;
using Quad = boost::multiprecision::cpp_bin_float_quad;
using QuadVector = std::vector<Quad>;
using QuadMatrix = std::vector<QuadVector>;

inline Rational q(const char* s) { return parse_rational(s); }

inline RVector vec(std::initializer_list<const char*> xs) {
    RVector v;
    for (auto* s : xs) v.push_back(parse_rational(s));
    return v;
}

inline bool canonical(const Rational& x) {
    Rational y = x;
    y.canonicalize();
    return y.get_num() == x.get_num() && y.get_den() == x.get_den() && x.get_den() > 0;
}

inline bool canonical(const RVector& v) {
    for (const auto& x : v)
        if (!canonical(x)) return false;
    return true;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    Rational rational(long range, long maxDen) {
        return make_rational(integer(-range * maxDen, range * maxDen), integer(1, maxDen));
    }
    Rational positive(long range, long maxDen) { return make_rational(integer(1, range * maxDen), integer(1, maxDen)); }
    RVector vector(std::size_t n, long range, long maxDen = 1) {
        RVector v(n);
        for (auto& x : v) x = rational(range, maxDen);
        return v;
    }
    RMatrix symmetric(std::size_t n, long range, long maxDen = 1) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = rational(range, maxDen);
        return m;
    }
    RMatrix matrix(std::size_t r, std::size_t c, long range, long maxDen = 1) {
        RMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(range, maxDen);
        return m;
    }
    RMatrix invertible(std::size_t n, long range, long maxDen = 1) {
        while (true) {
            RMatrix m = matrix(n, n, range, maxDen);
            if (determinant(m) != 0) return m;
        }
    }
    RMatrix positive_definite(std::size_t n, long range) {
        RMatrix a = matrix(n, n, range);
        return a.transpose() * a + RMatrix::identity(n);
    }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline Quad to_quad(const Rational& x) {
    return Quad(x.get_num().get_str()) / Quad(x.get_den().get_str());
}

inline QuadMatrix to_quad(const RMatrix& m) {
    QuadMatrix out(m.rows(), QuadVector(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_quad(m(i, j));
    return out;
}

inline QuadVector to_quad(const RVector& v) {
    QuadVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_quad(v[i]);
    return out;
}

struct QuadEigen {
    QuadVector values;   // ascending
    QuadMatrix vectors;  // vectors[k] is the eigenvector of values[k]
};

// Cyclic Jacobi rotations.
inline QuadEigen quad_eigen(const RMatrix& m) {
    const std::size_t n = m.rows();
    QuadMatrix a = to_quad(m);
    QuadMatrix v(n, QuadVector(n, Quad(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
    for (int sweep = 0; sweep < 100; ++sweep) {
        Quad off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < Quad("1e-66")) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r) {
                if (a[p][r] == 0) continue;
                Quad theta = (a[r][r] - a[p][p]) / (2 * a[p][r]);
                Quad t = (theta >= 0 ? Quad(1) : Quad(-1)) /
                         (boost::multiprecision::abs(theta) + boost::multiprecision::sqrt(theta * theta + 1));
                Quad c = 1 / boost::multiprecision::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    Quad akp = a[k][p], akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Quad apk = a[p][k], ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Quad vkp = v[k][p], vkr = v[k][r];
                    v[k][p] = c * vkp - s * vkr;
                    v[k][r] = s * vkp + c * vkr;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
    QuadEigen out;
    for (auto k : order) {
        out.values.push_back(a[k][k]);
        QuadVector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
        out.vectors.push_back(col);
    }
    return out;
}

// min xᵀHx + hᵀx over ‖x‖ <= 1 from an eigendecomposition in quad precision.
inline Quad tr_oracle(const RMatrix& H, const RVector& h) {
    const std::size_t n = h.size();
    if (n == 0) return 0;
    QuadEigen es = quad_eigen(H);
    const QuadVector& lam = es.values;
    QuadVector hq = to_quad(h);
    QuadVector g(n, Quad(0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) g[k] += es.vectors[k][i] * hq[i];
    auto norm2_at = [&](const Quad& mu) {
        Quad s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Quad den = 2 * (lam[i] + mu);
            if (den == 0) continue;
            s += g[i] * g[i] / (den * den);
        }
        return s;
    };
    auto value_at = [&](const Quad& mu, const Quad& fill) {
        Quad v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Quad den = 2 * (lam[i] + mu);
            if (den == 0) continue;
            Quad y = -g[i] / den;
            v += lam[i] * y * y + g[i] * y;
        }
        return v - mu * fill;
    };
    const Quad lmin = lam[0];
    if (lmin > 0 && norm2_at(0) <= 1) return value_at(0, 0);
    Quad lo = lmin < 0 ? Quad(-lmin) : Quad(0);
    Quad bottom = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (boost::multiprecision::abs(lam[i] - lmin) <= Quad("1e-25")) bottom += g[i] * g[i];
    if (bottom <= Quad("1e-30") && norm2_at(lo) <= 1) return value_at(lo, 1 - norm2_at(lo));
    Quad hi = lo + 1;
    while (norm2_at(hi) > 1) hi = 2 * hi;
    for (int it = 0; it < 400; ++it) {
        Quad mid = (lo + hi) / 2;
        if (norm2_at(mid) > 1) lo = mid;
        else hi = mid;
    }
    return value_at(hi, 0);
}

inline Quad spectral_norm_quad(const RMatrix& H) {
    if (H.rows() == 0) return 0;
    QuadVector lam = quad_eigen(H).values;
    Quad a = boost::multiprecision::abs(lam.front()), b = boost::multiprecision::abs(lam.back());
    return a > b ? a : b;
}

inline double dbl(const Quad& x) { return static_cast<double>(x); }

}  // namespace testing
