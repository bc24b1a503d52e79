#include <doctest.h>

#include "support.hpp"

#include <cmath>
#include <filesystem>

using namespace testing;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::vector<int>> assignments(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? 1 : -1;
        out.push_back(s);
    }
    return out;
}

long cut_by_hand(const Graph& g, const std::vector<int>& side) {
    long total = 0;
    for (const auto& e : g.edges) total += e.weight * (1 - side[e.u] * side[e.v]) / 2;
    return total;
}

// ‖b‖ > ‖t‖ + r, exactly
bool longer_than(const RVector& b, const RVector& t, const Rational& r) {
    Rational s = norm2(b) - norm2(t) - r * r;
    return s > 0 && s * s > 4 * r * r * norm2(t);
}

// lattice vector within r of t, searching the coefficient box given by the Gram matrix
bool cvp_by_search(const std::vector<RVector>& basis, const RVector& t, const Rational& r) {
    const std::size_t p = basis.size();
    RMatrix G(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) G(i, j) = dot(basis[i], basis[j]);
    RMatrix Ginv = *inverse(G);
    double reach = std::sqrt(to_double(norm2(t))) + to_double(r);
    std::vector<long> bound(p);
    for (std::size_t i = 0; i < p; ++i) bound[i] = static_cast<long>(std::ceil(reach * std::sqrt(to_double(Ginv(i, i))))) + 1;
    std::vector<long> z(p);
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == p) {
            RVector y = zeros(t.size());
            for (std::size_t i = 0; i < p; ++i) y = y + Rational(z[i]) * basis[i];
            return norm2(y - t) <= r * r;
        }
        for (z[k] = -bound[k]; z[k] <= bound[k]; ++z[k])
            if (rec(k + 1)) return true;
        return false;
    };
    return rec(0);
}

Graph graph(std::size_t n, std::vector<Graph::Edge> edges) { return Graph{n, std::move(edges)}; }

}  // namespace

TEST_CASE("instance file round trip") {
    Rng rng(81);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        std::size_t p = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n)));
        std::vector<InstanceFile> files;
        files.push_back(make_file(gen_random_emiqp(RandomSpec{seed, n, p, 5})));
        files.push_back(make_file(gen_random_miqp(RandomSpec{seed, n, p, 5})));
        QuadraticObjective f(rng.symmetric(n, 3, 7), rng.vector(n, 3, 5), rng.rational(3, 9));
        files.push_back(make_file(MitrInstance{f, MixedLattice(rng.invertible(n, 3, 4), rng.vector(n, 2, 3), p)}));
        files.back().meta["note"] = "two words";
        for (const auto& file : files) {
            std::string text = serialize(file);
            InstanceFile back = parse_instance(text);
            CHECK(back == file);
            CHECK(serialize(back) == text);
        }
    }
}

TEST_CASE("instance file save and load") {
    auto path = std::filesystem::temp_directory_path() / "emiqp_roundtrip_test.miqp";
    InstanceFile file = make_file(gen_random_miqp(RandomSpec{5, 2, 1, 3}));
    save_instance(path, file);
    CHECK(load_instance(path) == file);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_instance(path), InvalidArgument);
}

TEST_CASE("instance file parse errors") {
    const std::string good =
        "miqp-instance v1\nn 1\np 1\nH 1\nh 0\ngamma 0\nregion ellipsoid\nc 1/2\nQ 1\nend\n";
    REQUIRE_NOTHROW(parse_instance(good));
    auto replace = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    CHECK_THROWS_AS(parse_instance(replace("miqp-instance v1", "miqp v1")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("v1", "v2")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("Q 1", "Q -1")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("Q 1", "Q 0")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("c 1/2", "c 0.5")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("c 1/2", "c 1/2 1")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("p 1", "p 2")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("end\n", "")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("ellipsoid", "sphere")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("H 1", "H 1 2")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("gamma 0\n", "")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(replace("h 0", "hh 0")), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(good + "n 1\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_instance(""), InvalidArgument);
}

TEST_CASE("parse_point") {
    CHECK(parse_point("1/2 -3 0") == vec({"1/2", "-3", "0"}));
    CHECK(parse_point("4/6") == vec({"2/3"}));
    CHECK_THROWS_AS(parse_point("0.5"), InvalidArgument);
}

TEST_CASE("graph validation") {
    CHECK_NOTHROW(graph(3, {{0, 1, 1}, {1, 2, 0}}).validate());
    CHECK_THROWS_AS(graph(2, {{0, 0, 1}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(graph(2, {{0, 1, -1}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(graph(2, {{0, 1, 1}, {1, 0, 2}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(graph(2, {{0, 2, 1}}).validate(), InvalidArgument);
}

TEST_CASE("connected_graphs counts") {
    // connected unlabeled graphs on 1..5 vertices: 1, 1, 2, 6, 21
    CHECK(connected_graphs(1).size() == 1);
    CHECK(connected_graphs(3).size() == 4);
    CHECK(connected_graphs(4).size() == 10);
    CHECK(connected_graphs(5).size() == 31);
}

TEST_CASE("gen_maxcut examples") {
    SUBCASE("triangle") {
        Graph k3 = graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
        MaxCutInstance mc = gen_maxcut(k3);
        Rational best = 0;
        for (const auto& s : assignments(3)) best = std::max<Rational>(best, mc.offset - mc.mitr.objective(maxcut_point(mc, s)));
        CHECK(best == 2);
        CHECK(brute_force_max_cut(k3) == 2);
    }
    SUBCASE("single edge") {
        MaxCutInstance mc = gen_maxcut(graph(2, {{0, 1, 1}}));
        std::set<Rational> values;
        for (const auto& s : assignments(2)) values.insert(mc.mitr.objective(maxcut_point(mc, s)));
        CHECK(values == std::set<Rational>{mc.offset, mc.offset - 1});
    }
    SUBCASE("no edges") {
        MaxCutInstance mc = gen_maxcut(graph(3, {}));
        CHECK(mc.mitr.objective.H.is_zero());
        CHECK(is_zero(mc.mitr.objective.h));
        CHECK(mc.offset == 0);
    }
    SUBCASE("u brackets sqrt(n)") {
        for (std::size_t n = 1; n <= 6; ++n) {
            MaxCutInstance mc = gen_maxcut(graph(n, {}));
            CHECK(mc.u * mc.u >= Rational(static_cast<long>(n)));
            CHECK(mc.u * mc.u < Rational(static_cast<long>(n + 8)));
        }
    }
}

TEST_CASE("gen_maxcut correspondence") {
    Rng rng(82);
    std::vector<Graph> graphs = connected_graphs(5);
    for (int i = 0; i < 20; ++i) {
        std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        Graph g{n, {}};
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (rng.integer(0, 1)) g.edges.push_back({u, v, rng.integer(0, 4)});
        graphs.push_back(g);
    }
    for (const auto& g : graphs) {
        MaxCutInstance mc = gen_maxcut(g);
        const std::size_t n = g.vertices;
        long best = 0;
        for (const auto& s : assignments(n)) {
            RVector x = maxcut_point(mc, s);
            CHECK(is_mitr_feasible(mc.mitr, x));
            long cut = cut_by_hand(g, s);
            CHECK(mc.offset - mc.mitr.objective(x) == Rational(cut));
            CHECK(cut_value(g, s) == cut);
            best = std::max(best, cut);
        }
        CHECK(brute_force_max_cut(g) == best);

        // the only lattice points in the unit ball are the assignments
        std::vector<long> z(n);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == n) {
                RVector x(n);
                bool pm = true;
                for (std::size_t j = 0; j < n; ++j) {
                    x[j] = Rational(2 * z[j] + 1) / mc.u;
                    pm = pm && (z[j] == 0 || z[j] == -1);
                }
                CHECK(is_mitr_feasible(mc.mitr, x) == pm);
                return;
            }
            for (z[k] = -2; z[k] <= 1; ++z[k]) rec(k + 1);
        };
        rec(0);
    }
}

TEST_CASE("gen_cvp examples") {
    auto feasible = [](const CvpInstance& c) {
        OracleBounds b = oracle_file(make_file(c.mitr), 20);
        return b.feasible;
    };
    SUBCASE("integers, target 0") {
        CvpInstance c = gen_cvp({vec({"1"})}, vec({"0"}), q("1/2"));
        CHECK(feasible(c));
        CHECK(is_mitr_feasible(c.mitr, vec({"0"})));
    }
    SUBCASE("integers, target 1/2") {
        CHECK_FALSE(feasible(gen_cvp({vec({"1"})}, vec({"1/2"}), q("1/4"))));
    }
    SUBCASE("2Z with completion, target (1, 0)") {
        CvpInstance c = gen_cvp({vec({"2", "0"})}, vec({"1", "0"}), q("1"));
        CHECK(feasible(c));
        REQUIRE(c.basis.size() == 2);
        CHECK(dot(c.basis[0], c.basis[1]) == 0);
        CHECK(longer_than(c.basis[1], c.target, c.radius));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(gen_cvp({vec({"1", "2"}), vec({"2", "4"})}, vec({"0", "0"}), q("1")), InvalidArgument);
        CHECK_THROWS_AS(gen_cvp({vec({"1"})}, vec({"0"}), q("0")), InvalidArgument);
        CHECK_THROWS_AS(gen_cvp({}, vec({"0"}), q("1")), InvalidArgument);
    }
}

TEST_CASE("gen_cvp matches lattice search") {
    Rng rng(83);
    int yes = 0, no = 0;
    for (int i = 0; i < 60; ++i) {
        std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        std::size_t p = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
        std::vector<RVector> basis;
        while (true) {
            basis.clear();
            for (std::size_t j = 0; j < p; ++j) basis.push_back(rng.vector(n, 3));
            if (rank(RMatrix::from_rows(basis, n)) == p) break;
        }
        RVector t = rng.vector(n, 3, 2);
        Rational r = make_rational(rng.integer(1, 8), 4);
        CvpInstance c = gen_cvp(basis, t, r);
        REQUIRE(c.basis.size() == n);
        for (std::size_t j = p; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) CHECK(dot(c.basis[j], c.basis[k]) == 0);
            CHECK(longer_than(c.basis[j], t, r));
        }
        bool expect = cvp_by_search(basis, t, r);
        CHECK(cvp_brute_force(basis, t, r) == expect);
        CHECK(oracle_file(make_file(c.mitr), 20).feasible == expect);
        if (expect) ++yes;
        else ++no;
    }
    CHECK(yes > 10);
    CHECK(no > 10);
}

TEST_CASE("random generators are deterministic") {
    for (std::uint64_t seed : {1, 2, 3}) {
        CHECK(serialize(make_file(gen_random_emiqp(RandomSpec{seed, 3, 2, 5}))) ==
              serialize(make_file(gen_random_emiqp(RandomSpec{seed, 3, 2, 5}))));
        CHECK(serialize(make_file(gen_random_miqp(RandomSpec{seed, 3, 2, 5}))) ==
              serialize(make_file(gen_random_miqp(RandomSpec{seed, 3, 2, 5}))));
    }
    CHECK(serialize(make_file(gen_random_emiqp(RandomSpec{1, 3, 2, 5}))) !=
          serialize(make_file(gen_random_emiqp(RandomSpec{2, 3, 2, 5}))));
}

TEST_CASE("random generator digests") {
    struct Fixed {
        std::uint64_t seed;
        std::uint64_t emiqp;
        std::uint64_t miqp;
    };
    const Fixed fixed[] = {
        {7, 10890822783344938437ull, 17620354582300782842ull},
        {42, 7529735341580656516ull, 5921760888811918842ull},
        {2024, 17139736238101340752ull, 15585470516665166336ull},
    };
    for (const auto& f : fixed) {
        std::uint64_t a = fnv1a(serialize(make_file(gen_random_emiqp(RandomSpec{f.seed, 3, 2, 5}))));
        std::uint64_t b = fnv1a(serialize(make_file(gen_random_miqp(RandomSpec{f.seed, 3, 2, 5}))));
        CHECK_MESSAGE(a == f.emiqp, "seed " << f.seed << " emiqp digest " << a);
        CHECK_MESSAGE(b == f.miqp, "seed " << f.seed << " miqp digest " << b);
    }
}

TEST_CASE("random generator shapes") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        EmiqpInstance e = gen_random_emiqp(RandomSpec{seed, 3, 1, 4});
        CHECK(e.dim() == 3);
        CHECK(e.p == 1);
        CHECK(e.objective.H.symmetric());
        CHECK(is_positive_definite(e.ellipsoid.Q));
        MiqpInstance m = gen_random_miqp(RandomSpec{seed, 3, 2, 4});
        CHECK(m.dim() == 3);
        CHECK(is_bounded(m.polytope.W));
        CHECK_FALSE(enumerate_vertices(m.polytope).empty());
    }
}

TEST_CASE("solve_file and oracle_file") {
    SUBCASE("ellipsoid") {
        InstanceFile f = make_file(EmiqpInstance{QuadraticObjective(RMatrix{{q("1")}}, vec({"0"})),
                                                 Ellipsoid(vec({"1/2"}), RMatrix{{q("1")}}), 1});
        SolveOutcome out = solve_file(f, q("1/2"), 62);
        REQUIRE(out.status == SolveStatus::ApproxSolution);
        CHECK(out.x == vec({"0"}));
        CHECK(oracle_file(f, 20).fInf.hi == 0);
    }
    SUBCASE("polytope") {
        InstanceFile f = make_file(gen_random_miqp(RandomSpec{9, 2, 1, 3}));
        SolveOutcome out = solve_file(f, q("1/2"), 62);
        OracleBounds b = oracle_file(f, 20);
        REQUIRE(out.status == (b.feasible ? SolveStatus::ApproxSolution : SolveStatus::Infeasible));
        if (b.feasible) CHECK(f.feasible(out.x));
    }
    SUBCASE("maxcut lattice") {
        Graph g = graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1}});
        MaxCutInstance mc = gen_maxcut(g);
        InstanceFile f = make_file(mc.mitr);
        Rational eps = make_rational(1, 2 * static_cast<long>(g.edges.size()) + 2);
        SolveOutcome out = solve_file(f, eps, 62);
        REQUIRE(out.status == SolveStatus::ApproxSolution);
        CHECK(f.feasible(out.x));
        Rational cut = mc.offset - mc.mitr.objective(out.x);
        CHECK(cut == Rational(brute_force_max_cut(g)));
        OracleBounds b = oracle_file(f, 20);
        CHECK(b.fInf.hi == mc.offset - brute_force_max_cut(g));
    }
}
