#include "emiqp/oracle.hpp"

#include "emiqp/trust_region.hpp"

#include <algorithm>
#include <functional>

namespace emiqp {

namespace {

void fibers_rec(const Ellipsoid& E, std::size_t k, RVector& prefix, std::vector<Fiber>& out, std::size_t cap) {
    if (k == 0) {
        out.push_back(Fiber{prefix, E});
        if (out.size() > cap) throw FiberCapExceeded();
        return;
    }
    const std::size_t m = E.dim();
    RMatrix Qinv = *inverse(E.Q);
    Rational reach = sqrt_upper(Qinv(0, 0), 16);
    Integer lo = floor(E.c[0] - reach), hi = ceil(E.c[0] + reach);
    RMatrix Qt;
    RVector w;
    Rational schur = E.Q(0, 0);
    if (m > 1) {
        Qt = E.Q.block(1, 1, m - 1, m - 1);
        RVector qt(m - 1);
        for (std::size_t i = 0; i < m - 1; ++i) qt[i] = E.Q(i + 1, 0);
        w = *solve(Qt, qt);
        schur -= dot(qt, w);
    }
    for (Integer z = lo; z <= hi; ++z) {
        Rational t = Rational(z) - E.c[0];
        Rational zeta = 1 - t * t * schur;
        if (zeta < 0) continue;
        prefix.push_back(Rational(z));
        if (m == 1) {
            out.push_back(Fiber{prefix, RVector{}});
            if (out.size() > cap) throw FiberCapExceeded();
        } else {
            RVector center(m - 1);
            for (std::size_t i = 0; i < m - 1; ++i) center[i] = E.c[i + 1] - t * w[i];
            if (zeta > 0) {
                fibers_rec(Ellipsoid(center, (1 / zeta) * Qt), k - 1, prefix, out, cap);
            } else if (mixed_integral(center, k - 1)) {
                RVector full = prefix;
                full.insert(full.end(), center.begin(), center.begin() + static_cast<long>(k - 1));
                out.push_back(Fiber{full, RVector(center.begin() + static_cast<long>(k - 1), center.end())});
                if (out.size() > cap) throw FiberCapExceeded();
            }
        }
        prefix.pop_back();
    }
}

struct FiberBracket {
    Interval min, max;
    RVector argmin, argmax;
};

RVector join(const RVector& z, const RVector& y) {
    RVector x = z;
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

// Restriction of f to the fiber {(z, y)}.
QuadraticObjective restrict_to_fiber(const QuadraticObjective& f, const RVector& z) {
    const std::size_t n = f.dim();
    const std::size_t p = z.size();
    RMatrix T(n, n - p);
    for (std::size_t i = 0; i < n - p; ++i) T(p + i, i) = 1;
    return f.compose(join(z, zeros(n - p)), T);
}

Rational magnitude(const QuadraticObjective& g) {
    Rational s = 1;
    for (std::size_t i = 0; i < g.H.rows(); ++i)
        for (std::size_t j = 0; j < g.H.cols(); ++j) s += abs(g.H(i, j));
    for (const auto& v : g.h) s += abs(v);
    return s;
}

// [lower, upper] on min g over E and a feasible point attaining upper
std::pair<Interval, RVector> min_over_ellipsoid(const QuadraticObjective& g, const Ellipsoid& E, long bits) {
    Rational delta = pow2(-(bits + 3));
    Sandwich S = sandwich_ellipsoid(E, delta);
    QuadraticObjective gy = g.compose(E.c, S.Binv);
    Rational r = 1 + delta;
    TrResult tr = tr_minimize_gap((r * r) * gy.H, r * gy.h, pow2(-(bits + 3)) * magnitude(gy));
    RVector x = E.c + S.Binv * tr.point;
    return {Interval{tr.valueBounds.lo + gy.gamma, g(x)}, x};
}

OracleBounds aggregate(const std::vector<std::pair<RVector, FiberBracket>>& per) {
    OracleBounds b;
    b.fibers = per.size();
    if (per.empty()) return b;
    b.feasible = true;
    bool first = true;
    for (const auto& [x0, fb] : per) {
        (void)x0;
        if (first) {
            b.fInf = fb.min;
            b.fSup = fb.max;
            b.witnessMin = fb.argmin;
            b.witnessMax = fb.argmax;
            first = false;
            continue;
        }
        b.fInf.lo = std::min(b.fInf.lo, fb.min.lo);
        if (fb.min.hi < b.fInf.hi) {
            b.fInf.hi = fb.min.hi;
            b.witnessMin = fb.argmin;
        }
        b.fSup.hi = std::max(b.fSup.hi, fb.max.hi);
        if (fb.max.lo > b.fSup.lo) {
            b.fSup.lo = fb.max.lo;
            b.witnessMax = fb.argmax;
        }
    }
    return b;
}

}  // namespace

std::vector<Fiber> enumerate_integer_fibers(const Ellipsoid& E, std::size_t p, std::size_t cap) {
    if (p > E.dim()) throw InvalidArgument("enumerate_integer_fibers: p exceeds dimension");
    std::vector<Fiber> out;
    RVector prefix;
    fibers_rec(E, p, prefix, out, cap);
    return out;
}

OracleBounds oracle_solve(const EmiqpInstance& inst, long bits, std::size_t cap) {
    if (bits < 1) throw InvalidArgument("oracle_solve: bits must be positive");
    std::vector<std::pair<RVector, FiberBracket>> per;
    for (const Fiber& fb : enumerate_integer_fibers(inst.ellipsoid, inst.p, cap)) {
        FiberBracket br;
        if (auto* pt = std::get_if<RVector>(&fb.slice)) {
            RVector x = join(fb.z, *pt);
            Rational v = inst.objective(x);
            br = FiberBracket{{v, v}, {v, v}, x, x};
        } else {
            const Ellipsoid& E = std::get<Ellipsoid>(fb.slice);
            QuadraticObjective g = restrict_to_fiber(inst.objective, fb.z);
            auto [mn, ymin] = min_over_ellipsoid(g, E, bits);
            auto [mxNeg, ymax] = min_over_ellipsoid(g.negated(), E, bits);
            br = FiberBracket{mn, {-mxNeg.hi, -mxNeg.lo}, join(fb.z, ymin), join(fb.z, ymax)};
        }
        per.emplace_back(fb.z, std::move(br));
    }
    return aggregate(per);
}

std::optional<PolytopeExtrema> polytope_extrema(const QuadraticObjective& f, const Polytope& P) {
    const std::size_t d = P.dim();
    const std::size_t m = P.W.rows();
    if (d == 0) {
        if (!P.contains(RVector{})) return std::nullopt;
        Rational v = f(RVector{});
        return PolytopeExtrema{v, v, {}, {}};
    }
    std::optional<PolytopeExtrema> best;
    auto consider = [&](const RVector& x) {
        if (!P.contains(x)) return;
        Rational v = f(x);
        if (!best) {
            best = PolytopeExtrema{v, v, x, x};
            return;
        }
        if (v < best->min) {
            best->min = v;
            best->argmin = x;
        }
        if (v > best->max) {
            best->max = v;
            best->argmax = x;
        }
    };
    std::vector<std::size_t> F;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        const std::size_t k = F.size();
        RMatrix AF(k, d);
        RVector bF(k);
        for (std::size_t i = 0; i < k; ++i) {
            AF.set_row(i, P.W.row(F[i]));
            bF[i] = P.w[F[i]];
        }
        if (rank(AF) == k) {
            // [A_F 0; 2H -A_Fᵀ] (x, mu) = (b_F, -h)
            RMatrix S(k + d, d + k + 1);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < d; ++j) S(i, j) = AF(i, j);
                S(i, d + k) = bF[i];
            }
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) S(k + i, j) = 2 * f.H(i, j);
                for (std::size_t j = 0; j < k; ++j) S(k + i, d + j) = -AF(j, i);
                S(k + i, d + k) = -f.h[i];
            }
            Echelon e = row_echelon(S);
            bool consistent = e.pivots.empty() || e.pivots.back() != d + k;
            if (consistent) {
                RVector x0(d);
                for (std::size_t r = 0; r < e.pivots.size(); ++r)
                    if (e.pivots[r] < d) x0[e.pivots[r]] = e.rref(r, d + k);
                RMatrix N = nullspace(S.block(0, 0, k + d, d + k));
                RMatrix Nx = N.block(0, 0, d, N.cols());
                // independent columns of the x-part
                Echelon ce = row_echelon(Nx.transpose());
                std::size_t r = ce.pivots.size();
                RMatrix Nb = ce.rref.block(0, 0, r, d).transpose();
                if (r == 0) {
                    consider(x0);
                } else {
                    std::vector<std::size_t> G(r);
                    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t pos, std::size_t from) {
                        if (pos == r) {
                            RMatrix AG(r, d);
                            RVector bG(r);
                            for (std::size_t i = 0; i < r; ++i) {
                                AG.set_row(i, P.W.row(G[i]));
                                bG[i] = P.w[G[i]];
                            }
                            auto t = solve(AG * Nb, bG - AG * x0);
                            if (t) consider(x0 + Nb * *t);
                            return;
                        }
                        for (std::size_t i = from; i < m; ++i) {
                            G[pos] = i;
                            pick(pos + 1, i + 1);
                        }
                    };
                    pick(0, 0);
                }
            }
        }
        if (k == d) return;
        for (std::size_t i = start; i < m; ++i) {
            F.push_back(i);
            rec(i + 1);
            F.pop_back();
        }
    };
    rec(0);
    return best;
}

OracleBounds oracle_solve(const MiqpInstance& inst, long bits, std::size_t cap) {
    (void)bits;
    const std::size_t n = inst.dim();
    const std::size_t p = inst.p;
    if (!is_bounded(inst.polytope.W)) throw InvalidArgument("oracle_solve: polytope is unbounded");
    std::vector<RVector> verts = enumerate_vertices(inst.polytope);
    std::vector<std::pair<RVector, FiberBracket>> per;
    if (verts.empty()) return aggregate(per);
    std::vector<Integer> lo(p), hi(p);
    for (std::size_t i = 0; i < p; ++i) {
        Rational a = verts[0][i], b = verts[0][i];
        for (const auto& v : verts) {
            a = std::min(a, v[i]);
            b = std::max(b, v[i]);
        }
        lo[i] = ceil(a);
        hi[i] = floor(b);
        if (hi[i] < lo[i]) return aggregate(per);
    }
    Integer total = 1;
    for (std::size_t i = 0; i < p; ++i) total *= hi[i] - lo[i] + 1;
    if (total > static_cast<unsigned long>(cap)) throw FiberCapExceeded();

    RMatrix WI = inst.polytope.W.block(0, 0, inst.polytope.W.rows(), p);
    RMatrix WC = inst.polytope.W.block(0, p, inst.polytope.W.rows(), n - p);
    RVector z(p);
    for (std::size_t i = 0; i < p; ++i) z[i] = Rational(lo[i]);
    while (true) {
        Polytope fiber{WC, inst.polytope.w - WI * z};
        QuadraticObjective g = restrict_to_fiber(inst.objective, z);
        if (auto ex = polytope_extrema(g, fiber)) {
            per.emplace_back(z, FiberBracket{{ex->min, ex->min}, {ex->max, ex->max}, join(z, ex->argmin),
                                             join(z, ex->argmax)});
        }
        std::size_t i = 0;
        while (i < p) {
            z[i] += 1;
            if (z[i] <= Rational(hi[i])) break;
            z[i] = Rational(lo[i]);
            ++i;
        }
        if (i == p) break;
    }
    return aggregate(per);
}

VerifyReport verify_approx(const QuadraticObjective& f, bool feasible, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack) {
    VerifyReport r;
    r.feasible = feasible;
    if (!feasible) {
        r.reason = "point is not feasible";
        return r;
    }
    if (!bounds.feasible) {
        r.reason = "oracle reports an empty feasible set";
        return r;
    }
    r.value = f(x);
    Rational range = bounds.fSup.lo - bounds.fInf.hi;
    if (range < 0) range = 0;
    r.margin = eps * range + slack - (r.value - bounds.fInf.lo);
    r.pass = r.margin >= 0;
    if (!r.pass) r.reason = "objective gap exceeds eps times the range";
    return r;
}

VerifyReport verify_approx(const EmiqpInstance& inst, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack) {
    return verify_approx(inst.objective, inst.feasible(x), x, eps, bounds, slack);
}

VerifyReport verify_approx(const MiqpInstance& inst, const RVector& x, const Rational& eps,
                           const OracleBounds& bounds, const Rational& slack) {
    return verify_approx(inst.objective, inst.feasible(x), x, eps, bounds, slack);
}

}  // namespace emiqp
