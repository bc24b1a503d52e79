#pragma once

#include "emiqp/rational.hpp"

#include <optional>

namespace emiqp {

using RVector = std::vector<Rational>;

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RMatrix identity(std::size_t n);
    static RMatrix diagonal(const RVector& d);
    static RMatrix from_columns(const std::vector<RVector>& cols, std::size_t rows);
    static RMatrix from_rows(const std::vector<RVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RVector row(std::size_t i) const;
    RVector col(std::size_t j) const;
    void set_col(std::size_t j, const RVector& v);
    void set_row(std::size_t i, const RVector& v);

    RMatrix transpose() const;
    RMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    bool symmetric() const;
    bool is_zero() const;

    bool operator==(const RMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

RVector zeros(std::size_t n);
RVector unit_vector(std::size_t n, std::size_t i);
Rational dot(const RVector& a, const RVector& b);
Rational norm2(const RVector& a);
RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator-(const RVector& a);
RVector operator*(const Rational& s, const RVector& a);
bool is_zero(const RVector& a);

RMatrix operator*(const RMatrix& a, const RMatrix& b);
RVector operator*(const RMatrix& a, const RVector& x);
RMatrix operator+(const RMatrix& a, const RMatrix& b);
RMatrix operator-(const RMatrix& a, const RMatrix& b);
RMatrix operator*(const Rational& s, const RMatrix& a);

// xᵀ A y
Rational bilinear(const RVector& x, const RMatrix& a, const RVector& y);
Rational quadratic_form(const RMatrix& a, const RVector& x);

std::optional<RVector> solve(const RMatrix& a, const RVector& b);
std::optional<RMatrix> inverse(const RMatrix& a);
Rational determinant(const RMatrix& a);
std::size_t rank(const RMatrix& a);

// Reduced row echelon form; pivot columns in `pivots`, row operations in `ops`
// (ops * a == rref).
struct Echelon {
    RMatrix rref;
    RMatrix ops;
    std::vector<std::size_t> pivots;
};
Echelon row_echelon(const RMatrix& a);

// Columns form a basis of {x : a x = 0}.
RMatrix nullspace(const RMatrix& a);

// Q = Mᵀ D M with M unit upper triangular and D diagonal positive.
struct Ldlt {
    RMatrix M;
    RMatrix D;
};
Ldlt ldlt_decompose(const RMatrix& q);
bool is_positive_definite(const RMatrix& q);

// Least common multiple of all denominators.
Integer common_denominator(const RVector& v);
std::string to_string(const RVector& v);

}  // namespace emiqp
