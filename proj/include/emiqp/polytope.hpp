#pragma once

#include "emiqp/geometry.hpp"

namespace emiqp {

// {x : W x <= w}
struct Polytope {
    RMatrix W;
    RVector w;

    std::size_t dim() const { return W.cols(); }
    bool contains(const RVector& x) const;
    Polytope with_rows(const RMatrix& extraW, const RVector& extraw) const;
};

std::vector<RVector> enumerate_vertices(const Polytope& P);
bool is_bounded(const RMatrix& W);

// E(c, (n+1/2)^2 Q) ⊆ P ⊆ E(c, Q); P bounded and full-dimensional.
Ellipsoid round_polytope(const Polytope& P);

// Exact containment checks used by round_polytope.
bool ellipsoid_inside_polytope(const Ellipsoid& E, const Polytope& P);
bool polytope_inside_ellipsoid(const Polytope& P, const Ellipsoid& E);

struct FullDimensional {
    AffineMap tau;  // x = xbar + M y
    Polytope reduced;
    std::size_t p = 0;
    std::size_t n = 0;
};

// nullopt iff P is empty or its affine hull carries no mixed-integer point.
std::optional<FullDimensional> make_full_dimensional(const Polytope& P, std::size_t p);

}  // namespace emiqp
