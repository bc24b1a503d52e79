#include "emiqp/mitr.hpp"

#include "emiqp/trust_region.hpp"

namespace emiqp {

namespace {

enum class Case { Quadratic, Linear, Both };

Case choose_case(const RMatrix& H, const RVector& h) {
    Rational hn = norm2(h);
    if (H.is_zero()) return hn == 0 ? Case::Quadratic : Case::Linear;
    for (long bits : {32L, 96L, 192L}) {
        Interval s = spectral_norm_squared(H, bits);
        if (s.lo >= hn) return Case::Quadratic;
        if (s.hi < hn) return Case::Linear;
    }
    return Case::Both;
}

std::optional<PointPair> make_pair(const QuadraticObjective& f, const FlatDichotomy& a, const FlatDichotomy& b,
                                   std::optional<FlatDirection>& dir) {
    if (auto* d = std::get_if<FlatDirection>(&a)) {
        if (!dir) dir = *d;
        return std::nullopt;
    }
    if (auto* d = std::get_if<FlatDirection>(&b)) {
        if (!dir) dir = *d;
        return std::nullopt;
    }
    const RVector& x = std::get<LatticePoint>(a).x;
    const RVector& y = std::get<LatticePoint>(b).x;
    if (f(x) >= f(y)) return PointPair{x, y};
    return PointPair{y, x};
}

}  // namespace

bool is_mitr_feasible(const MitrInstance& inst, const RVector& x) {
    return norm2(x) <= 1 && inst.lattice.contains(x);
}

DistantPointsOutcome distant_points(const MitrInstance& inst, const Rational& eps) {
    if (eps <= 0 || eps > Rational(1, 3)) throw InvalidArgument("distant_points: eps must lie in (0, 1/3]");
    const QuadraticObjective& f = inst.objective;
    const RMatrix& H = f.H;
    const RVector& h = f.h;
    const std::size_t n = h.size();
    if (inst.lattice.dim() != n) throw InvalidArgument("distant_points: dimension mismatch");

    Case which = choose_case(H, h);
    std::optional<FlatDirection> dir;
    std::optional<PointPair> best;
    auto keep = [&](std::optional<PointPair> pr) {
        if (!pr) return;
        if (!best || f(pr->high) - f(pr->low) > f(best->high) - f(best->low)) best = std::move(pr);
    };

    if (which != Case::Linear) {
        RVector v = spectral_witness(H, eps, &h);
        FlatDichotomy u = flat_or_point(zeros(n), eps, inst.lattice);
        FlatDichotomy w = flat_or_point((1 - eps) * v, eps, inst.lattice);
        keep(make_pair(f, w, u, dir));
    }
    if (which != Case::Quadratic) {
        Rational l = sqrt_lower_multiplicative(1 / norm2(h), eps);
        RVector center = ((1 - eps) * l) * h;
        FlatDichotomy s = flat_or_point(center, eps, inst.lattice);
        FlatDichotomy t = flat_or_point(-center, eps, inst.lattice);
        keep(make_pair(f, s, t, dir));
    }
    if (best) return *best;
    return *dir;
}

}  // namespace emiqp
