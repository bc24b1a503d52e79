#include "emiqp/trust_region.hpp"

#include <optional>
#include <stdexcept>

namespace emiqp {

namespace {

thread_local unsigned long g_trCalls = 0;

RMatrix shifted(const RMatrix& H, const Rational& lambda) {
    RMatrix a = H;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += lambda;
    return a;
}

Rational evaluate(const RMatrix& H, const RVector& h, const RVector& x) {
    return quadratic_form(H, x) + dot(h, x);
}

RVector truncate(const RVector& x, long bits) {
    RVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = truncate_dyadic(x[i], bits);
    return r;
}

struct Candidate {
    RVector point;
    Rational value;
    Rational lower;
    Rational lambda;
};

// f(x) - g(lambda) for a feasible x, with g the Lagrangian dual.
std::optional<Candidate> certify(const RMatrix& H, const RVector& h, const RVector& x,
                                 const Rational& lambda, const RVector& xLambda,
                                 const Rational& gap) {
    if (norm2(x) > 1) return std::nullopt;
    Rational value = evaluate(H, h, x);
    Rational lower = dot(h, xLambda) / 2 - lambda;
    if (value - lower > gap) return std::nullopt;
    return Candidate{x, value, lower, lambda};
}

RVector start_vector(std::size_t n, std::size_t variant) {
    RVector v(n);
    if (variant == 0) {
        for (std::size_t i = 0; i < n; ++i) v[i] = Rational(static_cast<long>(2 * i + 3), static_cast<long>(i + 2));
    } else {
        v[(variant - 1) % n] = 1;
    }
    return v;
}

std::optional<Candidate> attempt(const RMatrix& H, const RVector& h, const Rational& gap, long P) {
    const std::size_t n = h.size();
    const Rational eps = pow2(-P);
    const RVector rhs = Rational(-1, 2) * h;
    Interval ev = smallest_eigenvalue(H, P);

    if (ev.lo > 0) {
        RVector x0 = *solve(H, rhs);
        if (norm2(x0) <= 1) {
            Rational v = evaluate(H, h, x0);
            return Candidate{x0, v, v, 0};
        }
    }

    Rational lambda = (ev.lo > 0 ? Rational(0) : Rational(-ev.lo)) + eps;
    RMatrix A = shifted(H, lambda);
    auto xs = solve(A, rhs);
    if (!xs) return std::nullopt;
    RVector x = *xs;
    Rational nx2 = norm2(x);

    if (nx2 >= 1) {
        // Newton on 1/‖x(λ)‖ - 1 from the left never overshoots the root
        for (int iter = 0; iter < 400; ++iter) {
            Rational s = sqrt_lower(1 / nx2, P + 8);
            while (s * s * nx2 > 1) s -= pow2(-(P + 8));
            RVector point = truncate(s * x, P + 8);
            if (auto c = certify(H, h, point, lambda, x, gap)) return c;
            RVector y = *solve(A, x);
            Rational xAx = dot(x, y);
            Rational nlo = sqrt_lower(nx2, P + 8);
            Rational step = (nlo - 1) * nx2 / xAx;
            Rational next = round_down_dyadic(lambda + step, P + 8);
            if (next <= lambda) return std::nullopt;
            lambda = next;
            A = shifted(H, lambda);
            x = *solve(A, rhs);
            nx2 = norm2(x);
            if (nx2 < 1) return std::nullopt;
        }
        return std::nullopt;
    }

    if (auto c = certify(H, h, x, lambda, x, gap)) return c;

    // hard case: move along an approximate bottom eigenvector to the boundary
    for (std::size_t variant = 0; variant <= n; ++variant) {
        RVector v = start_vector(n, variant);
        for (int it = 0; it < 3; ++it) {
            v = *solve(A, v);
            Rational m = 0;
            for (const auto& e : v)
                if (abs(e) > m) m = abs(e);
            if (m == 0) break;
            v = truncate((1 / m) * v, P + 8);
        }
        if (is_zero(v)) continue;
        Rational a = norm2(v);
        Rational b = dot(x, v);
        Rational c = 1 - nx2;
        Rational disc = sqrt_lower(b * b + a * c, P + 8);
        Rational tau = round_down_dyadic((disc - b) / a, P + 8);
        if (tau < 0) tau = 0;
        RVector point = truncate(x + tau * v, P + 8);
        if (auto cand = certify(H, h, point, lambda, x, gap)) return cand;
    }
    return std::nullopt;
}

long scale_bits(const RMatrix& H, const RVector& h) {
    Rational s = 1;
    for (std::size_t i = 0; i < H.rows(); ++i)
        for (std::size_t j = 0; j < H.cols(); ++j) s += abs(H(i, j));
    for (const auto& v : h) s += abs(v);
    return ceil_log2(s);
}

}  // namespace

unsigned long tr_call_count() { return g_trCalls; }

TrResult tr_minimize_gap(const RMatrix& H, const RVector& h, const Rational& gap) {
    if (!H.symmetric() || H.rows() != h.size()) throw InvalidArgument("tr_minimize: shape or symmetry");
    if (gap <= 0) throw InvalidArgument("tr_minimize: gap must be positive");
    ++g_trCalls;
    const std::size_t n = h.size();
    if (n == 0 || (H.is_zero() && is_zero(h))) return TrResult{zeros(n), {0, 0}, 1, 0};
    long P = std::max(0L, -floor_log2(gap)) + 2 * scale_bits(H, h) + 16;
    for (int round = 0; round < 10; ++round) {
        if (auto c = attempt(H, h, gap, P)) return TrResult{c->point, {c->lower, c->value}, 1, c->lambda};
        P = P + P / 2 + 16;
    }
    throw std::logic_error("tr_minimize: certificate not reached");
}

TrResult tr_minimize(const RMatrix& H, const RVector& h, long k) {
    if (k < 1) throw InvalidArgument("tr_minimize: k must be positive");
    return tr_minimize_gap(H, h, pow2(-k));
}

long encoding_size(const RMatrix& a) {
    long s = static_cast<long>(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += static_cast<long>(bit_size(a(i, j)));
    return s;
}

long encoding_size(const RVector& v) {
    long s = static_cast<long>(v.size());
    for (const auto& e : v) s += static_cast<long>(bit_size(e));
    return s;
}

Rational norm_lower_bound(const RMatrix& H, const RVector& h) {
    Rational best = 0;
    for (std::size_t j = 0; j < H.cols(); ++j) {
        Rational c = norm2(H.col(j));
        if (c > 0) {
            Rational l = sqrt_lower(c, 24);
            if (l > best) best = l;
        }
    }
    Rational hn = norm2(h);
    if (hn > 0) {
        Rational l = sqrt_lower(hn, 24);
        if (l > best) best = l;
    }
    return best;
}

TrResult tr_minimize_rel(const RMatrix& H, const RVector& h, const Rational& eps, GapPolicy policy) {
    if (eps <= 0) throw InvalidArgument("tr_minimize_rel: eps must be positive");
    if (H.is_zero() && is_zero(h)) {
        ++g_trCalls;
        return TrResult{zeros(h.size()), {0, 0}, 1, 0};
    }
    long k;
    if (policy == GapPolicy::EncodingSize) {
        k = ceil_log2(1 / eps) + encoding_size(H) + encoding_size(h);
    } else {
        k = ceil_log2(1 / (eps * norm_lower_bound(H, h)));
    }
    if (k < 1) k = 1;
    return tr_minimize(H, h, k);
}

TrResult tr_minimize_scaled(const RMatrix& H, const RVector& h, const Rational& delta,
                            const Rational& eps, GapPolicy policy) {
    if (delta < 0) throw InvalidArgument("tr_minimize_scaled: delta must be nonnegative");
    Rational r = 1 + delta;
    TrResult y = tr_minimize_rel((r * r) * H, r * h, eps, policy);
    return TrResult{r * y.point, y.valueBounds, r, y.multiplier};
}

RVector spectral_witness(const RMatrix& H, const Rational& eps, const RVector* orient) {
    if (eps <= 0) throw InvalidArgument("spectral_witness: eps must be positive");
    const std::size_t n = H.rows();
    if (H.is_zero()) return zeros(n);
    RVector zero = zeros(n);
    TrResult lo = tr_minimize_rel(H, zero, eps);
    TrResult hi = tr_minimize_rel(Rational(-1) * H, zero, eps);
    Rational a = quadratic_form(H, lo.point);
    Rational b = quadratic_form(H, hi.point);
    RVector v = abs(a) >= abs(b) ? lo.point : hi.point;
    if (orient) {
        Rational q = quadratic_form(H, v);
        Rational s = dot(*orient, v);
        if ((q >= 0 && s < 0) || (q < 0 && s > 0)) v = -v;
    }
    return v;
}

}  // namespace emiqp
