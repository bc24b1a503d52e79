#pragma once

#include "emiqp/linalg.hpp"

namespace emiqp {

// f(x) = xᵀHx + hᵀx + gamma
struct QuadraticObjective {
    RMatrix H;
    RVector h;
    Rational gamma = 0;

    QuadraticObjective() = default;
    QuadraticObjective(RMatrix H_, RVector h_, Rational gamma_ = 0);

    std::size_t dim() const { return h.size(); }
    Rational operator()(const RVector& x) const;
    QuadraticObjective negated() const;

    // g(y) = f(shift + T y)
    QuadraticObjective compose(const RVector& shift, const RMatrix& T) const;
};

}  // namespace emiqp
