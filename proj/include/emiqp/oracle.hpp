#pragma once

#include "emiqp/polynomial.hpp"
#include "emiqp/solver.hpp"

namespace emiqp {

struct FiberCapExceeded : std::runtime_error {
    FiberCapExceeded() : std::runtime_error("fiber cap exceeded") {}
};

constexpr std::size_t kDefaultFiberCap = 100000;

struct Fiber {
    RVector z;  // integer part
    // slice of the continuous part: an ellipsoid in n-p variables or a single point
    std::variant<Ellipsoid, RVector> slice;
};

std::vector<Fiber> enumerate_integer_fibers(const Ellipsoid& E, std::size_t p,
                                            std::size_t cap = kDefaultFiberCap);

struct OracleBounds {
    bool feasible = false;
    Interval fInf;
    Interval fSup;
    RVector witnessMin;
    RVector witnessMax;
    std::size_t fibers = 0;
};

OracleBounds oracle_solve(const EmiqpInstance& inst, long bits, std::size_t cap = kDefaultFiberCap);
// The polytope must be bounded.
OracleBounds oracle_solve(const MiqpInstance& inst, long bits, std::size_t cap = kDefaultFiberCap);

// Exact minimum and maximum of a quadratic over a nonempty bounded polytope.
struct PolytopeExtrema {
    Rational min;
    Rational max;
    RVector argmin;
    RVector argmax;
};
std::optional<PolytopeExtrema> polytope_extrema(const QuadraticObjective& f, const Polytope& P);

struct VerifyReport {
    bool pass = false;
    bool feasible = false;
    Rational value;
    // eps (fSup.lo - fInf.hi) + slack - (f(x) - fInf.lo); pass iff >= 0
    Rational margin;
    std::string reason;
};

VerifyReport verify_approx(const QuadraticObjective& f, bool feasible, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack = 0);
VerifyReport verify_approx(const EmiqpInstance& inst, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack = 0);
VerifyReport verify_approx(const MiqpInstance& inst, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack = 0);

}  // namespace emiqp
