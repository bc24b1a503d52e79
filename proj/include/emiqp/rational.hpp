#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emiqp {

using Integer = mpz_class;
using Rational = mpq_class;

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefinite : std::domain_error {
    NotPositiveDefinite() : std::domain_error("not positive definite") {}
};

// "num/den" or "num", base 10.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational make_rational(const Integer& num, const Integer& den);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);

Rational abs(const Rational& q);
Rational pow2(long e);

// Encoding length: 1 + ceil(log2(|num|+1)) + ceil(log2(den+1)).
std::size_t bit_size(const Rational& q);

// floor(log2 q) for q > 0.
long floor_log2(const Rational& q);
// Least j with 2^j >= q, q > 0.
long ceil_log2(const Rational& q);

// Largest multiple of 2^-bits that is <= q (resp. smallest >= q).
Rational round_down_dyadic(const Rational& q, long bits);
Rational round_up_dyadic(const Rational& q, long bits);
// Rounds toward zero.
Rational truncate_dyadic(const Rational& q, long bits);

// Dyadic bounds lo <= sqrt(a) <= hi with about `bits` significant bits, a >= 0.
Rational sqrt_lower(const Rational& a, long bits);
Rational sqrt_upper(const Rational& a, long bits);

double to_double(const Rational& q);
// Exact binary value of a finite double.
Rational from_double(double x);

// Bisection of the interval [0, max{1,alpha}] k times.
std::pair<Rational, Rational> sqrt_bounds(const Rational& alpha, long k);

// l > 0 with l^2 <= alpha <= (1+eps)^2 l^2.
Rational sqrt_lower_multiplicative(const Rational& alpha, const Rational& eps);

}  // namespace emiqp
