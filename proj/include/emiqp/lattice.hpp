#pragma once

#include "emiqp/linalg.hpp"

#include <variant>

namespace emiqp {

// Π_p(b¹..bⁿ) + {c}: images B z + c with z in ℤ^p × ℝ^(n-p).
struct MixedLattice {
    RMatrix B;
    RVector c;
    std::size_t p = 0;

    MixedLattice() = default;
    MixedLattice(RMatrix B_, RVector c_, std::size_t p_);

    std::size_t dim() const { return c.size(); }
    // B⁻¹(x - c)
    RVector coordinates(const RVector& x) const;
    bool contains(const RVector& x) const;
};

struct LllResult {
    std::vector<RVector> basis;
    // basis[i] = Σ_j transform(i, j) * input[j]
    RMatrix transform;
};

LllResult lll_reduce(const std::vector<RVector>& basis);
bool is_lll_reduced(const std::vector<RVector>& basis);

struct LatticePoint {
    RVector x;
};

struct FlatDirection {
    RVector d;
};

using FlatDichotomy = std::variant<LatticePoint, FlatDirection>;

FlatDichotomy flat_or_point(const RVector& a, const Rational& delta, const MixedLattice& lattice);

// (2 delta)^2 dᵀd <= p^2 2^(p(p-1)/2) / scale^2
bool flat_width_bound(const RVector& d, const Rational& delta, std::size_t p, const Rational& scale = 1);

// dᵀbⁱ ∈ ℤ for i < p and dᵀbʲ = 0 for j >= p.
bool is_lattice_direction(const RVector& d, const MixedLattice& lattice);

struct HyperplaneMap {
    RVector d;       // normalized integer direction
    Rational beta;   // normalized right-hand side, an integer
    RVector xbar;    // integer point with dᵀxbar = beta
    RMatrix T;       // unimodular, dᵀ T e_j = 0 for j >= 2
};

std::optional<HyperplaneMap> hyperplane_lattice_map(const RVector& d, const Rational& beta, std::size_t p);

RVector pull_back_direction(const RMatrix& B, const RVector& dprime, std::size_t p);

// Integer points of {z : C z = e}: z = particular + kernel * y with y integer.
struct IntegerSolutionSet {
    RVector particular;
    RMatrix kernel;
};
std::optional<IntegerSolutionSet> integer_solutions(const RMatrix& C, const RVector& e);

bool is_unimodular(const RMatrix& T);

}  // namespace emiqp
