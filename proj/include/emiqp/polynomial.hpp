#pragma once

#include "emiqp/linalg.hpp"

namespace emiqp {

// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const;
    int sign_at(const Rational& x) const { return sgn((*this)(x)); }
    Polynomial derivative() const;
    Polynomial monic() const;

    friend Polynomial operator-(const Polynomial& a);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    // a = q b + r
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    static Polynomial gcd(Polynomial a, Polynomial b);

private:
    void trim();
    std::vector<Rational> c_;
};

// det(tI - A)
Polynomial characteristic_polynomial(const RMatrix& a);

class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& p);
    // Number of distinct real roots in (a, b].
    long count(const Rational& a, const Rational& b) const;
    long sign_changes(const Rational& x) const;
    const Polynomial& squarefree() const { return seq_.front(); }

private:
    std::vector<Polynomial> seq_;
};

struct Interval {
    Rational lo;
    Rational hi;
};

// Bracket of width <= 2^-bits around the smallest eigenvalue of a symmetric matrix.
Interval smallest_eigenvalue(const RMatrix& a, long bits);
Interval largest_eigenvalue(const RMatrix& a, long bits);

// Interval containing the spectral norm squared.
Interval spectral_norm_squared(const RMatrix& a, long bits);

}  // namespace emiqp
