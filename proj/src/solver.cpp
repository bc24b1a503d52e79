#include "emiqp/solver.hpp"

#include "emiqp/mitr.hpp"
#include "emiqp/trust_region.hpp"

#include <algorithm>
#include <stdexcept>

namespace emiqp {

bool mixed_integral(const RVector& x, std::size_t p) {
    for (std::size_t i = 0; i < p && i < x.size(); ++i)
        if (!is_integer(x[i])) return false;
    return true;
}

bool EmiqpInstance::feasible(const RVector& x) const {
    return x.size() == dim() && ellipsoid.contains(x) && mixed_integral(x, p);
}

bool MiqpInstance::feasible(const RVector& x) const {
    return x.size() == dim() && polytope.contains(x) && mixed_integral(x, p);
}

Integer FlatCertificate::hyperplane_cap() const {
    Integer f = floor(capSquared);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    return r + 1;
}

Rational weak_epsilon(std::size_t n) {
    long m = static_cast<long>(n) + 1;
    return 1 - Rational(1, 8 * m * m);
}

RVector best_of(const QuadraticObjective& f, const std::vector<RVector>& candidates) {
    if (candidates.empty()) throw InvalidArgument("best_of: no candidates");
    std::size_t best = 0;
    Rational bestValue = f(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        Rational v = f(candidates[i]);
        if (v < bestValue || (v == bestValue && candidates[i] < candidates[best])) {
            best = i;
            bestValue = v;
        }
    }
    return candidates[best];
}

namespace {

// p^2 2^(p(p-1)/2)
Rational flat_constant_squared(std::size_t p) {
    long e = static_cast<long>(p * (p - 1) / 2);
    return Rational(static_cast<long>(p * p)) * pow2(e);
}

FlatCertificate slab_certificate(const RVector& d, const RVector& c, const RVector& dprime,
                                 const Rational& radius, const Rational& capSquared) {
    Rational u = sqrt_upper(norm2(dprime), 40);
    Rational half = radius * u;
    Rational center = dot(d, c);
    return FlatCertificate{d, center - half, 2 * half, capSquared};
}

RVector direction_of(const FlatDichotomy& r) { return std::get<FlatDirection>(r).d; }

}  // namespace

FlatOutcome emiqp_flat_or_approx(const EmiqpInstance& inst, const Rational& eps) {
    if (eps <= 0 || eps > 1) throw InvalidArgument("emiqp_flat_or_approx: eps must lie in (0, 1]");
    const Rational e1 = eps / 18;
    const std::size_t p = inst.p;
    const Ellipsoid& E = inst.ellipsoid;
    Sandwich S = sandwich_ellipsoid(E, e1);
    // x = c + B⁻¹ y with y in B(0,1) ⊆ τ(E) ⊆ B(0,1+e1)
    QuadraticObjective g = inst.objective.compose(E.c, S.Binv);
    MixedLattice lattice(S.B, -(S.B * E.c), p);

    TrResult tr = tr_minimize_scaled(g.H, g.h, e1, e1);
    RVector center = ((1 - e1) / (1 + e1)) * tr.point;
    FlatDichotomy near = flat_or_point(center, e1, lattice);

    std::optional<RVector> dprime;
    if (std::holds_alternative<FlatDirection>(near)) {
        dprime = direction_of(near);
    } else {
        MitrInstance mitr{QuadraticObjective(g.H, g.h), lattice};
        DistantPointsOutcome far = distant_points(mitr, e1);
        if (auto* dir = std::get_if<FlatDirection>(&far)) dprime = dir->d;
    }
    if (!dprime) {
        RVector x = E.c + S.Binv * std::get<LatticePoint>(near).x;
        return ApproxSolution{x, eps};
    }
    RVector d = pull_back_direction(S.B, *dprime, p);
    Rational cap = Rational(19) / eps;
    return slab_certificate(d, E.c, *dprime, 1 + e1, cap * cap * flat_constant_squared(p));
}

FlatOutcome miqp_flat_or_approx(const MiqpInstance& inst) {
    const std::size_t n = inst.dim();
    const std::size_t p = inst.p;
    if (n == 0) throw InvalidArgument("miqp_flat_or_approx: zero dimension");
    Ellipsoid outer = round_polytope(inst.polytope);
    Rational grow = Rational(2 * static_cast<long>(n) + 1, 2);
    Ellipsoid inner(outer.c, (grow * grow) * outer.Q);
    Rational delta(1, 2 * static_cast<long>(n) + 1);
    Sandwich S = sandwich_ellipsoid(inner, delta);
    QuadraticObjective g = inst.objective.compose(outer.c, S.Binv);
    MixedLattice lattice(S.B, -(S.B * outer.c), p);

    MitrInstance mitr{QuadraticObjective(g.H, g.h), lattice};
    DistantPointsOutcome far = distant_points(mitr, Rational(1, 14));
    if (auto* pair = std::get_if<PointPair>(&far)) {
        RVector x = outer.c + S.Binv * pair->low;
        return ApproxSolution{x, weak_epsilon(n)};
    }
    RVector dprime = std::get<FlatDirection>(far).d;
    RVector d = pull_back_direction(S.B, dprime, p);
    Rational cap = Rational(14 * (static_cast<long>(n) + 1));
    return slab_certificate(d, outer.c, dprime, Rational(static_cast<long>(n) + 1),
                            cap * cap * flat_constant_squared(p));
}

bool certificate_holds(const FlatCertificate& cert, const Ellipsoid& body) {
    if (is_zero(cert.d) || cert.width < 0) return false;
    if (cert.width * cert.width > cert.capSquared) return false;
    Rational s2 = body.support_squared(cert.d);
    Rational center = dot(cert.d, body.c);
    Rational below = center - cert.rho;
    Rational above = cert.rho + cert.width - center;
    return below >= 0 && above >= 0 && below * below >= s2 && above * above >= s2;
}

bool certificate_holds(const FlatCertificate& cert, const Polytope& body) {
    if (is_zero(cert.d) || cert.width < 0) return false;
    if (cert.width * cert.width > cert.capSquared) return false;
    for (const auto& v : enumerate_vertices(body)) {
        Rational t = dot(cert.d, v);
        if (t < cert.rho || t > cert.rho + cert.width) return false;
    }
    return true;
}

namespace {

void note_level(SolveStats& st, std::size_t level, std::size_t count) {
    if (st.hyperplanesPerLevel.size() <= level) st.hyperplanesPerLevel.resize(level + 1, 0);
    st.hyperplanesPerLevel[level] = std::max(st.hyperplanesPerLevel[level], count);
    st.depth = std::max(st.depth, level + 1);
}

std::size_t beta_count(const FlatCertificate& cert) {
    Integer lo = cert.first_beta(), hi = cert.last_beta();
    if (hi < lo) return 0;
    return static_cast<std::size_t>(Integer(hi - lo + 1).get_ui());
}

std::optional<RVector> solve_emiqp(const EmiqpInstance& inst, const Rational& eps, std::size_t level,
                                   SolveStats& st) {
    ++st.nodes;
    ++st.flatCalls;
    st.depth = std::max(st.depth, level);
    FlatOutcome out = emiqp_flat_or_approx(inst, eps);
    if (auto* a = std::get_if<ApproxSolution>(&out)) return a->x;
    const FlatCertificate& cert = std::get<FlatCertificate>(out);
    std::size_t count = beta_count(cert);
    note_level(st, level, count);
    if (st.recordCertificates)
        st.certificates.push_back(CertificateRecord{cert, inst.ellipsoid, level, inst.p, count});

    const std::size_t n = inst.dim();
    std::vector<RVector> candidates;
    for (Integer beta = cert.first_beta(); beta <= cert.last_beta(); ++beta) {
        Rational b(beta);
        if (n == 1) {
            RVector x{b / cert.d[0]};
            if (inst.feasible(x)) candidates.push_back(std::move(x));
            continue;
        }
        auto red = ellipsoid_hyperplane_reduce(inst.ellipsoid, Hyperplane{cert.d, b}, inst.p);
        if (!red) continue;
        if (std::holds_alternative<SliceEmpty>(red->preimage)) continue;
        if (auto* single = std::get_if<SliceSingleton>(&red->preimage)) {
            RVector x = red->eta(single->point);
            if (mixed_integral(x, inst.p)) candidates.push_back(std::move(x));
            continue;
        }
        const Ellipsoid& slice = std::get<Ellipsoid>(red->preimage);
        EmiqpInstance sub{inst.objective.compose(red->eta.s, red->eta.L), slice, inst.p - 1};
        if (auto y = solve_emiqp(sub, eps, level + 1, st)) candidates.push_back(red->eta(*y));
    }
    if (candidates.empty()) return std::nullopt;
    return best_of(inst.objective, candidates);
}

std::optional<RVector> solve_miqp(const MiqpInstance& inst, std::size_t level, SolveStats& st) {
    ++st.nodes;
    st.depth = std::max(st.depth, level);
    auto fd = make_full_dimensional(inst.polytope, inst.p);
    if (!fd) return std::nullopt;
    const AffineMap& tau = fd->tau;
    if (fd->n == 0) {
        RVector x = tau(RVector{});
        return inst.feasible(x) ? std::optional<RVector>(x) : std::nullopt;
    }
    MiqpInstance red{inst.objective.compose(tau.s, tau.L), fd->reduced, fd->p};
    ++st.flatCalls;
    FlatOutcome out = miqp_flat_or_approx(red);
    if (auto* a = std::get_if<ApproxSolution>(&out)) return tau(a->x);
    const FlatCertificate& cert = std::get<FlatCertificate>(out);
    std::size_t count = beta_count(cert);
    note_level(st, level, count);
    if (st.recordCertificates)
        st.certificates.push_back(CertificateRecord{cert, red.polytope, level, red.p, count});

    std::vector<RVector> candidates;
    RMatrix eq(2, fd->n);
    eq.set_row(0, cert.d);
    eq.set_row(1, -cert.d);
    for (Integer beta = cert.first_beta(); beta <= cert.last_beta(); ++beta) {
        Rational b(beta);
        MiqpInstance sub{red.objective, red.polytope.with_rows(eq, RVector{b, -b}), red.p};
        if (auto y = solve_miqp(sub, level + 1, st)) candidates.push_back(tau(*y));
    }
    if (candidates.empty()) return std::nullopt;
    return best_of(inst.objective, candidates);
}

}  // namespace

SolveOutcome approximate_emiqp(const EmiqpInstance& inst, const Rational& eps, const SolveOptions& opts) {
    if (eps <= 0 || eps > 1) throw InvalidArgument("approximate_emiqp: eps must lie in (0, 1]");
    if (inst.p > inst.dim()) throw InvalidArgument("approximate_emiqp: p exceeds dimension");
    SolveOutcome out;
    out.eps = eps;
    out.stats.recordCertificates = opts.recordCertificates;
    unsigned long tr0 = tr_call_count();
    auto x = solve_emiqp(inst, eps, 0, out.stats);
    out.stats.trCalls = tr_call_count() - tr0;
    if (x) {
        if (!inst.feasible(*x)) throw std::logic_error("approximate_emiqp: infeasible output");
        out.status = SolveStatus::ApproxSolution;
        out.value = inst.objective(*x);
        out.x = std::move(*x);
    }
    return out;
}

SolveOutcome approximate_miqp(const MiqpInstance& inst, long psi, const SolveOptions& opts) {
    if (psi < 1) throw InvalidArgument("approximate_miqp: psi must be positive");
    if (inst.p > inst.dim()) throw InvalidArgument("approximate_miqp: p exceeds dimension");
    const std::size_t n = inst.dim();
    RMatrix box(2 * n, n);
    RVector bound(2 * n, pow2(psi));
    for (std::size_t i = 0; i < n; ++i) {
        box(2 * i, i) = 1;
        box(2 * i + 1, i) = -1;
    }
    MiqpInstance bounded{inst.objective, inst.polytope.with_rows(box, bound), inst.p};
    SolveOutcome out;
    out.eps = weak_epsilon(n);
    out.stats.recordCertificates = opts.recordCertificates;
    unsigned long tr0 = tr_call_count();
    auto x = solve_miqp(bounded, 0, out.stats);
    out.stats.trCalls = tr_call_count() - tr0;
    if (x) {
        if (!inst.feasible(*x)) throw std::logic_error("approximate_miqp: infeasible output");
        out.status = SolveStatus::ApproxSolution;
        out.value = inst.objective(*x);
        out.x = std::move(*x);
    }
    return out;
}

}  // namespace emiqp
