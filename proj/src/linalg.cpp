#include "emiqp/linalg.hpp"

#include <numeric>

namespace emiqp {

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
        for (const auto& v : r) data_.push_back(v);
    }
}

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::diagonal(const RVector& d) {
    RMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& cols, std::size_t rows) {
    RMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows, std::size_t cols) {
    RMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

RVector RMatrix::row(std::size_t i) const {
    return RVector(data_.begin() + static_cast<long>(i * cols_),
                   data_.begin() + static_cast<long>((i + 1) * cols_));
}

RVector RMatrix::col(std::size_t j) const {
    RVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void RMatrix::set_col(std::size_t j, const RVector& v) {
    if (v.size() != rows_) throw InvalidArgument("set_col: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void RMatrix::set_row(std::size_t i, const RVector& v) {
    if (v.size() != cols_) throw InvalidArgument("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

RMatrix RMatrix::transpose() const {
    RMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RMatrix RMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    RMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

bool RMatrix::symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RMatrix::is_zero() const {
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

RVector zeros(std::size_t n) { return RVector(n); }

RVector unit_vector(std::size_t n, std::size_t i) {
    RVector e(n);
    e[i] = 1;
    return e;
}

Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw InvalidArgument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Rational norm2(const RVector& a) { return dot(a, a); }

RVector operator+(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw InvalidArgument("vector +: size mismatch");
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RVector operator-(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw InvalidArgument("vector -: size mismatch");
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RVector operator-(const RVector& a) {
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

RVector operator*(const Rational& s, const RVector& a) {
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

bool is_zero(const RVector& a) {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix *: shape mismatch");
    RMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RVector operator*(const RMatrix& a, const RVector& x) {
    if (a.cols() != x.size()) throw InvalidArgument("matrix-vector *: shape mismatch");
    RVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix +: shape mismatch");
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix -: shape mismatch");
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

RMatrix operator*(const Rational& s, const RMatrix& a) {
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

Rational bilinear(const RVector& x, const RMatrix& a, const RVector& y) { return dot(x, a * y); }

Rational quadratic_form(const RMatrix& a, const RVector& x) { return dot(x, a * x); }

Echelon row_echelon(const RMatrix& a) {
    Echelon e{a, RMatrix::identity(a.rows()), {}};
    RMatrix& r = e.rref;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t piv = row;
        while (piv < r.rows() && r(piv, col) == 0) ++piv;
        if (piv == r.rows()) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
            for (std::size_t j = 0; j < e.ops.cols(); ++j) std::swap(e.ops(piv, j), e.ops(row, j));
        }
        Rational inv = 1 / r(row, col);
        for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
        for (std::size_t j = 0; j < e.ops.cols(); ++j) e.ops(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            Rational f = r(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j)
                if (r(row, j) != 0) r(i, j) -= f * r(row, j);
            for (std::size_t j = 0; j < e.ops.cols(); ++j)
                if (e.ops(row, j) != 0) e.ops(i, j) -= f * e.ops(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

std::optional<RVector> solve(const RMatrix& a, const RVector& b) {
    if (!a.square() || a.rows() != b.size()) throw InvalidArgument("solve: shape mismatch");
    const std::size_t n = a.rows();
    RMatrix m = a;
    RVector x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(piv, j), m(col, j));
            std::swap(x[piv], x[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col + 1; j < n; ++j)
                if (m(col, j) != 0) m(i, j) -= f * m(col, j);
            m(i, col) = 0;
            x[i] -= f * x[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Rational s = x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != 0) s -= m(i, j) * x[j];
        x[i] = s / m(i, i);
    }
    return x;
}

std::optional<RMatrix> inverse(const RMatrix& a) {
    if (!a.square()) throw InvalidArgument("inverse: matrix not square");
    Echelon e = row_echelon(a);
    if (e.pivots.size() != a.rows()) return std::nullopt;
    return e.ops;
}

Rational determinant(const RMatrix& a) {
    if (!a.square()) throw InvalidArgument("determinant: matrix not square");
    const std::size_t n = a.rows();
    RMatrix m = a;
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col + 1; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

std::size_t rank(const RMatrix& a) { return row_echelon(a).pivots.size(); }

RMatrix nullspace(const RMatrix& a) {
    Echelon e = row_echelon(a);
    std::vector<bool> isPivot(a.cols(), false);
    for (auto p : e.pivots) isPivot[p] = true;
    std::vector<RVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (isPivot[f]) continue;
        RVector v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
        basis.push_back(std::move(v));
    }
    return RMatrix::from_columns(basis, a.cols());
}

Ldlt ldlt_decompose(const RMatrix& q) {
    if (!q.symmetric()) throw InvalidArgument("ldlt_decompose: matrix not symmetric");
    const std::size_t n = q.rows();
    RMatrix m = RMatrix::identity(n);
    RVector d(n);
    RMatrix work = q;
    for (std::size_t k = 0; k < n; ++k) {
        if (work(k, k) <= 0) throw NotPositiveDefinite();
        d[k] = work(k, k);
        for (std::size_t j = k + 1; j < n; ++j) m(k, j) = work(k, j) / d[k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(k, i) == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j)
                if (work(k, j) != 0) work(i, j) -= m(k, i) * work(k, j);
        }
    }
    return {m, RMatrix::diagonal(d)};
}

bool is_positive_definite(const RMatrix& q) {
    try {
        ldlt_decompose(q);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

Integer common_denominator(const RVector& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

std::string to_string(const RVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace emiqp
