#include "emiqp/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace emiqp {

void Graph::validate() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges) {
        if (e.u >= vertices || e.v >= vertices) throw InvalidArgument("graph: vertex out of range");
        if (e.u == e.v) throw InvalidArgument("graph: loop");
        if (e.weight < 0) throw InvalidArgument("graph: negative weight");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) throw InvalidArgument("graph: parallel edge");
    }
}

long cut_value(const Graph& g, const std::vector<int>& side) {
    long cut = 0;
    for (const auto& e : g.edges)
        if (side[e.u] != side[e.v]) cut += e.weight;
    return cut;
}

long brute_force_max_cut(const Graph& g) {
    long best = 0;
    std::vector<int> side(g.vertices);
    for (unsigned long mask = 0; mask < (1UL << g.vertices); ++mask) {
        for (std::size_t i = 0; i < g.vertices; ++i) side[i] = (mask >> i) & 1 ? 1 : -1;
        best = std::max(best, cut_value(g, side));
    }
    return best;
}

std::vector<Graph> connected_graphs(std::size_t maxVertices) {
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= maxVertices; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
        std::set<unsigned long> canon;
        std::vector<std::size_t> perm(n);
        for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
            // connectivity by union-find
            std::vector<std::size_t> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (std::size_t s = 0; s < slots.size(); ++s)
                if ((mask >> s) & 1) parent[find(slots[s].first)] = find(slots[s].second);
            bool connected = true;
            for (std::size_t i = 1; i < n; ++i)
                if (find(i) != find(0)) connected = false;
            if (!connected) continue;
            unsigned long best = ~0UL;
            std::iota(perm.begin(), perm.end(), 0);
            do {
                unsigned long m = 0;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    if (!((mask >> s) & 1)) continue;
                    auto a = perm[slots[s].first], b = perm[slots[s].second];
                    if (a > b) std::swap(a, b);
                    auto idx = std::find(slots.begin(), slots.end(), std::make_pair(a, b)) - slots.begin();
                    m |= 1UL << idx;
                }
                best = std::min(best, m);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!canon.insert(best).second) continue;
            Graph g;
            g.vertices = n;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if ((best >> s) & 1) g.edges.push_back({slots[s].first, slots[s].second, 1});
            out.push_back(std::move(g));
        }
    }
    return out;
}

MaxCutInstance gen_maxcut(const Graph& g) {
    g.validate();
    const std::size_t n = g.vertices;
    if (n == 0) throw InvalidArgument("gen_maxcut: empty graph");
    Rational u = sqrt_bounds(Rational(static_cast<long>(n)), static_cast<long>(n)).second;
    RMatrix H(n, n);
    Rational offset = 0;
    for (const auto& e : g.edges) {
        Rational coef = Rational(e.weight) * u * u / 4;
        H(e.u, e.v) += coef;
        H(e.v, e.u) += coef;
        offset += make_rational(e.weight, 2);
    }
    RMatrix B = (2 / u) * RMatrix::identity(n);
    RVector c(n, 1 / u);
    MitrInstance mitr{QuadraticObjective(H, zeros(n)), MixedLattice(B, c, n)};
    return MaxCutInstance{mitr, offset, u};
}

RVector maxcut_point(const MaxCutInstance& inst, const std::vector<int>& side) {
    RVector y(side.size());
    for (std::size_t i = 0; i < side.size(); ++i) y[i] = Rational(side[i]) / inst.u;
    return y;
}

CvpInstance gen_cvp(const std::vector<RVector>& basis, const RVector& target, const Rational& radius) {
    if (basis.empty()) throw InvalidArgument("gen_cvp: empty basis");
    if (radius <= 0) throw InvalidArgument("gen_cvp: radius must be positive");
    const std::size_t n = target.size();
    for (const auto& b : basis)
        if (b.size() != n) throw InvalidArgument("gen_cvp: dimension mismatch");
    if (basis.size() > n || rank(RMatrix::from_columns(basis, n)) != basis.size())
        throw InvalidArgument("gen_cvp: basis vectors are dependent");
    std::vector<RVector> full = basis;
    Rational reach = sqrt_upper(norm2(target), 16) + radius;
    while (full.size() < n) {
        RMatrix prior = RMatrix::from_rows(full, n);
        RVector v = nullspace(prior).col(0);
        v = Rational(common_denominator(v)) * v;
        Rational s = 1;
        while (s * s * norm2(v) <= reach * reach) s *= 2;
        full.push_back(s * v);
    }
    RMatrix B = RMatrix::from_columns(full, n);
    MitrInstance mitr{QuadraticObjective(RMatrix(n, n), zeros(n)),
                      MixedLattice((1 / radius) * B, (-1 / radius) * target, n)};
    return CvpInstance{mitr, full, target, radius};
}

bool cvp_brute_force(const std::vector<RVector>& basis, const RVector& target, const Rational& radius) {
    const std::size_t k = basis.size();
    const std::size_t n = target.size();
    RMatrix B = RMatrix::from_columns(basis, n);
    RMatrix Bt = B.transpose();
    RMatrix pinv = *inverse(Bt * B) * Bt;
    Rational reach = sqrt_upper(norm2(target), 16) + radius;
    std::vector<Integer> bound(k);
    for (std::size_t i = 0; i < k; ++i) bound[i] = ceil(sqrt_upper(norm2(pinv.row(i)), 16) * reach);
    std::vector<Integer> mu(k);
    for (std::size_t i = 0; i < k; ++i) mu[i] = -bound[i];
    const Rational r2 = radius * radius;
    while (true) {
        RVector y = zeros(n);
        for (std::size_t i = 0; i < k; ++i) y = y + Rational(mu[i]) * basis[i];
        if (norm2(y - target) <= r2) return true;
        std::size_t i = 0;
        while (i < k) {
            if (++mu[i] <= bound[i]) break;
            mu[i] = -bound[i];
            ++i;
        }
        if (i == k) return false;
    }
}

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
}

RMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long range) {
    RMatrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) H(i, j) = H(j, i) = Rational(draw(rng, -range, range));
    return H;
}

RVector random_vector(std::mt19937_64& rng, std::size_t n, long range) {
    RVector v(n);
    for (auto& x : v) x = Rational(draw(rng, -range, range));
    return v;
}

}  // namespace

EmiqpInstance gen_random_emiqp(const RandomSpec& spec) {
    if (spec.n == 0 || spec.p > spec.n || spec.range < 1) throw InvalidArgument("gen_random: bad shape");
    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n;
    RMatrix H = random_symmetric(rng, n, spec.range);
    RVector h = random_vector(rng, n, spec.range);
    RMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = Rational(draw(rng, -2, 2));
    RMatrix Q = A.transpose() * A + RMatrix::identity(n);
    RVector c(n);
    for (auto& x : c) x = make_rational(draw(rng, -2 * spec.range, 2 * spec.range), 2);
    return EmiqpInstance{QuadraticObjective(H, h), Ellipsoid(c, Q), spec.p};
}

MiqpInstance gen_random_miqp(const RandomSpec& spec) {
    if (spec.n == 0 || spec.p > spec.n || spec.range < 1) throw InvalidArgument("gen_random: bad shape");
    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n;
    RMatrix H = random_symmetric(rng, n, spec.range);
    RVector h = random_vector(rng, n, spec.range);
    RVector x0(n);
    for (auto& x : x0) x = make_rational(draw(rng, -2 * spec.range, 2 * spec.range), 2);
    std::vector<RVector> rows;
    RVector rhs;
    for (std::size_t i = 0; i < n; ++i) {
        Rational half = make_rational(draw(rng, 1, 2 * spec.range), 4);
        rows.push_back(unit_vector(n, i));
        rhs.push_back(x0[i] + half);
        rows.push_back(-unit_vector(n, i));
        rhs.push_back(-x0[i] + half);
    }
    long extra = draw(rng, 1, 3);
    for (long k = 0; k < extra; ++k) {
        RVector a = random_vector(rng, n, spec.range);
        if (is_zero(a)) a[0] = 1;
        rows.push_back(a);
        rhs.push_back(dot(a, x0) + make_rational(draw(rng, 1, 2 * spec.range), 4));
    }
    return MiqpInstance{QuadraticObjective(H, h), Polytope{RMatrix::from_rows(rows, n), rhs}, spec.p};
}

SolveOutcome solve_file(const InstanceFile& inst, const Rational& eps, long psi, const SolveOptions& opts) {
    if (auto* e = std::get_if<Ellipsoid>(&inst.region))
        return approximate_emiqp(EmiqpInstance{inst.objective, *e, inst.p}, eps, opts);
    if (auto* P = std::get_if<Polytope>(&inst.region))
        return approximate_miqp(MiqpInstance{inst.objective, *P, inst.p}, psi, opts);
    const auto& lattice = std::get<MixedLattice>(inst.region);
    EmiqpForm form = mitr_to_emiqp(inst.objective, lattice);
    SolveOutcome out = approximate_emiqp(EmiqpInstance{form.objective, form.ellipsoid, form.p}, eps, opts);
    if (out.status == SolveStatus::ApproxSolution) {
        out.x = form.back(out.x);
        out.value = inst.objective(out.x);
    }
    return out;
}

OracleBounds oracle_file(const InstanceFile& inst, long bits) {
    if (auto* e = std::get_if<Ellipsoid>(&inst.region))
        return oracle_solve(EmiqpInstance{inst.objective, *e, inst.p}, bits);
    if (auto* P = std::get_if<Polytope>(&inst.region))
        return oracle_solve(MiqpInstance{inst.objective, *P, inst.p}, bits);
    const auto& lattice = std::get<MixedLattice>(inst.region);
    EmiqpForm form = mitr_to_emiqp(inst.objective, lattice);
    OracleBounds b = oracle_solve(EmiqpInstance{form.objective, form.ellipsoid, form.p}, bits);
    if (b.feasible) {
        b.witnessMin = form.back(b.witnessMin);
        b.witnessMax = form.back(b.witnessMax);
    }
    return b;
}

}  // namespace emiqp
