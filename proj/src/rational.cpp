#include "emiqp/rational.hpp"

#include <cmath>

namespace emiqp {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    std::size_t first = s.find_first_not_of(" \t");
    if (first == std::string::npos) throw InvalidArgument("empty rational");
    s = s.substr(first);
    auto digits = [](std::string_view t, bool sign) {
        if (sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char ch : t)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw InvalidArgument("malformed rational: " + s);
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den, 10);
    if (d == 0) throw InvalidArgument("zero denominator: " + s);
    return make_rational(Integer(num, 10), d);
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow2(long e) {
    Integer p = 1;
    if (e >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return Rational(Integer(1), p);
}

namespace {

// ceil(log2(z+1)) for z >= 0, i.e. the number of bits of z.
std::size_t bits_of(const Integer& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

Integer shifted(const Integer& z, long e) {
    Integer r;
    if (e >= 0)
        mpz_mul_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpz_fdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

}  // namespace

std::size_t bit_size(const Rational& q) {
    Integer a = abs(q.get_num());
    return 1 + bits_of(a) + bits_of(q.get_den());
}

long floor_log2(const Rational& q) {
    if (q <= 0) throw InvalidArgument("floor_log2 of nonpositive value");
    long e = static_cast<long>(bits_of(q.get_num())) - static_cast<long>(bits_of(q.get_den()));
    // 2^(e-1) < q < 2^(e+1)
    if (q >= pow2(e)) return e;
    return e - 1;
}

long ceil_log2(const Rational& q) {
    long e = floor_log2(q);
    return q == pow2(e) ? e : e + 1;
}

Rational round_down_dyadic(const Rational& q, long bits) {
    Integer num = q.get_num();
    Integer scaled;
    if (bits >= 0) {
        mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
        mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    } else {
        Integer den;
        mpz_mul_2exp(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
        mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return make_rational(scaled, 1) * pow2(-bits);
}

Rational round_up_dyadic(const Rational& q, long bits) {
    return -round_down_dyadic(-q, bits);
}

Rational truncate_dyadic(const Rational& q, long bits) {
    return q >= 0 ? round_down_dyadic(q, bits) : round_up_dyadic(q, bits);
}

Rational sqrt_lower(const Rational& a, long bits) {
    if (a < 0) throw InvalidArgument("sqrt of negative value");
    if (a == 0) return 0;
    long e = bits - floor_log2(a) / 2;
    // floor(sqrt(a * 4^e)) / 2^e
    Integer scaled = shifted(a.get_num(), 2 * e > 0 ? 2 * e : 0);
    Integer den = shifted(a.get_den(), 2 * e < 0 ? -2 * e : 0);
    Integer v = scaled / den;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return Rational(r) * pow2(-e);
}

Rational sqrt_upper(const Rational& a, long bits) {
    Rational l = sqrt_lower(a, bits);
    if (l * l == a) return l;
    Rational step = a == 0 ? Rational(0) : pow2(floor_log2(a) / 2 - bits);
    Rational u = l + step;
    while (u * u < a) u += step;
    return u;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite double");
    Rational q(x);
    q.canonicalize();
    return q;
}

std::pair<Rational, Rational> sqrt_bounds(const Rational& alpha, long k) {
    if (alpha <= 0) throw InvalidArgument("sqrt_bounds: alpha must be positive");
    if (k < 1) throw InvalidArgument("sqrt_bounds: k must be positive");
    // Work on the grid of step max{1,alpha}/2^k with integer endpoints lo, hi.
    Rational top = alpha > 1 ? alpha : Rational(1);
    Integer lo = 0;
    Integer hi = 1;
    mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    // m^2 <= alpha  <=>  mid^2 * top^2 <= alpha * 4^k
    Integer rhsNum = alpha.get_num() * top.get_den() * top.get_den();
    mpz_mul_2exp(rhsNum.get_mpz_t(), rhsNum.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * k));
    Integer rhsDen = alpha.get_den();
    Integer lhsScale = top.get_num() * top.get_num();
    for (long i = 0; i < k; ++i) {
        Integer mid = (lo + hi) / 2;
        if (mid * mid * lhsScale * rhsDen <= rhsNum) lo = mid;
        else hi = mid;
    }
    Rational step = top * pow2(-k);
    return {Rational(lo) * step, Rational(hi) * step};
}

Rational sqrt_lower_multiplicative(const Rational& alpha, const Rational& eps) {
    if (alpha <= 0) throw InvalidArgument("sqrt_lower_multiplicative: alpha must be positive");
    if (eps <= 0) throw InvalidArgument("sqrt_lower_multiplicative: eps must be positive");
    // k = ceil(log2(1/eps) + 3 size(alpha)/2 + 1) is the least K with
    // 4^K eps^2 >= 2^(3 size(alpha) + 2).
    long s = static_cast<long>(bit_size(alpha));
    Rational target = pow2(3 * s + 2) / (eps * eps);
    long k = (ceil_log2(target) + 1) / 2;
    while (k > 1 && pow2(2 * (k - 1)) >= target) --k;
    while (pow2(2 * k) < target) ++k;
    if (k < 1) k = 1;
    return sqrt_bounds(alpha, k).first;
}

}  // namespace emiqp
