#pragma once

#include "emiqp/lattice.hpp"
#include "emiqp/objective.hpp"

namespace emiqp {

// min f over B(0,1) ∩ (Π_p(B) + {c})
struct MitrInstance {
    QuadraticObjective objective;
    MixedLattice lattice;
};

struct PointPair {
    RVector high;  // f(high) >= f(low)
    RVector low;
};

using DistantPointsOutcome = std::variant<PointPair, FlatDirection>;

// eps in (0, 1/3]
DistantPointsOutcome distant_points(const MitrInstance& inst, const Rational& eps);

bool is_mitr_feasible(const MitrInstance& inst, const RVector& x);

}  // namespace emiqp
