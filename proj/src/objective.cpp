#include "emiqp/objective.hpp"

namespace emiqp {

QuadraticObjective::QuadraticObjective(RMatrix H_, RVector h_, Rational gamma_)
    : H(std::move(H_)), h(std::move(h_)), gamma(std::move(gamma_)) {
    if (!H.square() || H.rows() != h.size()) throw InvalidArgument("objective: shape mismatch");
    if (!H.symmetric()) throw InvalidArgument("objective: H not symmetric");
}

Rational QuadraticObjective::operator()(const RVector& x) const {
    return quadratic_form(H, x) + dot(h, x) + gamma;
}

QuadraticObjective QuadraticObjective::negated() const {
    return QuadraticObjective(Rational(-1) * H, -h, -gamma);
}

QuadraticObjective QuadraticObjective::compose(const RVector& shift, const RMatrix& T) const {
    RMatrix Tt = T.transpose();
    RVector Hs = H * shift;
    RMatrix H2 = Tt * H * T;
    RVector h2 = Tt * (h + Rational(2) * Hs);
    Rational g2 = dot(shift, Hs) + dot(h, shift) + gamma;
    return QuadraticObjective(std::move(H2), std::move(h2), std::move(g2));
}

}  // namespace emiqp
