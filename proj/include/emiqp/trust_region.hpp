#pragma once

#include "emiqp/objective.hpp"
#include "emiqp/polynomial.hpp"

namespace emiqp {

struct TrResult {
    RVector point;
    // lower <= min over the ball, f(point) == upper
    Interval valueBounds;
    Rational radiusFactor = 1;
    // multiplier of the dual bound
    Rational multiplier = 0;
};

// min xᵀHx + hᵀx over xᵀx <= 1 with gap <= 2^-k.
TrResult tr_minimize(const RMatrix& H, const RVector& h, long k);

// Same with an explicit additive gap target > 0.
TrResult tr_minimize_gap(const RMatrix& H, const RVector& h, const Rational& gap);

enum class GapPolicy {
    // 2^-k <= eps * (rational lower bound on max{‖H‖,‖h‖})
    NormBound,
    // k = ceil(log2(1/eps) + size(H) + size(h))
    EncodingSize,
};

long encoding_size(const RMatrix& a);
long encoding_size(const RVector& v);

// Lower bound on max{‖H‖, ‖h‖}; zero iff both vanish.
Rational norm_lower_bound(const RMatrix& H, const RVector& h);

// gap <= eps max{‖H‖,‖h‖}
TrResult tr_minimize_rel(const RMatrix& H, const RVector& h, const Rational& eps,
                         GapPolicy policy = GapPolicy::NormBound);

// min over xᵀx <= (1+delta)^2 with gap <= eps (1+delta)^2 max{‖H‖,‖h‖}
TrResult tr_minimize_scaled(const RMatrix& H, const RVector& h, const Rational& delta,
                            const Rational& eps, GapPolicy policy = GapPolicy::NormBound);

// vᵀv <= 1 and (1-eps)‖H‖ <= |vᵀHv|. With `orient`, v is flipped so that
// orientᵀv >= 0 when vᵀHv >= 0 and orientᵀv <= 0 otherwise.
RVector spectral_witness(const RMatrix& H, const Rational& eps, const RVector* orient = nullptr);

// Number of kernel solves performed by the calling thread.
unsigned long tr_call_count();

}  // namespace emiqp
