#pragma once

#include "emiqp/lattice.hpp"
#include "emiqp/objective.hpp"

namespace emiqp {

// {x : (x-c)ᵀQ(x-c) <= 1}
struct Ellipsoid {
    RVector c;
    RMatrix Q;

    Ellipsoid() = default;
    Ellipsoid(RVector c_, RMatrix Q_);

    std::size_t dim() const { return c.size(); }
    Rational level(const RVector& x) const { return quadratic_form(Q, x - c); }
    bool contains(const RVector& x) const { return level(x) <= 1; }
    // (max dᵀx - dᵀc)^2 = dᵀQ⁻¹d
    Rational support_squared(const RVector& d) const;
};

struct Ball {
    RVector a;
    Rational radius;
    bool contains(const RVector& x) const { return norm2(x - a) <= radius * radius; }
};

struct Hyperplane {
    RVector d;
    Rational beta;
};

struct AffineMap {
    enum class Kind {
        Centered,  // x ↦ L (x - s)
        Embedding, // y ↦ s + L y
    };
    RMatrix L;
    RVector s;
    Kind kind = Kind::Embedding;

    RVector operator()(const RVector& x) const;
};

struct Sandwich {
    AffineMap tau;   // B (x - c)
    RMatrix B;
    RMatrix Binv;
    RMatrix M;
    RMatrix D;
    RVector l;
    Rational delta;
};

// B(0,1) ⊆ tau(E) ⊆ B(0,1+delta)
Sandwich sandwich_ellipsoid(const Ellipsoid& E, const Rational& delta);

struct SliceSingleton {
    RVector point;
};
struct SliceEmpty {};
using SlicePreimage = std::variant<Ellipsoid, SliceSingleton, SliceEmpty>;

struct HyperplaneReduction {
    AffineMap eta;  // y ↦ xbar + T y, T is n×(n-1)
    HyperplaneMap map;
    SlicePreimage preimage;
};

// nullopt when the hyperplane carries no mixed-lattice point.
std::optional<HyperplaneReduction> ellipsoid_hyperplane_reduce(const Ellipsoid& E, const Hyperplane& hp,
                                                                std::size_t p);

struct EmiqpForm {
    QuadraticObjective objective;
    Ellipsoid ellipsoid;
    std::size_t p = 0;
    AffineMap back;  // x = c + B y
};

EmiqpForm mitr_to_emiqp(const QuadraticObjective& f, const MixedLattice& lattice);

struct MitrForm {
    QuadraticObjective objective;
    MixedLattice lattice;
    AffineMap back;  // x = c + B⁻¹ y
};

// Requires BᵀB == Q.
MitrForm emiqp_to_mitr(const QuadraticObjective& f, const Ellipsoid& E, std::size_t p, const RMatrix& B);

}  // namespace emiqp
