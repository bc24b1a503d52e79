#pragma once

#include "emiqp/instance_io.hpp"
#include "emiqp/oracle.hpp"

#include <cstdint>

namespace emiqp {

struct Graph {
    struct Edge {
        std::size_t u, v;
        long weight;
    };
    std::size_t vertices = 0;
    std::vector<Edge> edges;

    void validate() const;
};

// side[i] in {-1, +1}
long cut_value(const Graph& g, const std::vector<int>& side);
long brute_force_max_cut(const Graph& g);
// Connected simple graphs with unit weights, one per isomorphism class.
std::vector<Graph> connected_graphs(std::size_t maxVertices);

struct MaxCutInstance {
    MitrInstance mitr;
    // cut value = offset - f(x) at every feasible point
    Rational offset;
    Rational u;
};

MaxCutInstance gen_maxcut(const Graph& g);
RVector maxcut_point(const MaxCutInstance& inst, const std::vector<int>& side);

struct CvpInstance {
    MitrInstance mitr;
    std::vector<RVector> basis;  // completed to n vectors
    RVector target;
    Rational radius;
};

CvpInstance gen_cvp(const std::vector<RVector>& basis, const RVector& target, const Rational& radius);
// Is some lattice vector within radius of target?
bool cvp_brute_force(const std::vector<RVector>& basis, const RVector& target, const Rational& radius);

struct RandomSpec {
    std::uint64_t seed = 0;
    std::size_t n = 2;
    std::size_t p = 1;
    long range = 5;
};

EmiqpInstance gen_random_emiqp(const RandomSpec& spec);
MiqpInstance gen_random_miqp(const RandomSpec& spec);

// Solve or bound any instance file in its own coordinates.
SolveOutcome solve_file(const InstanceFile& inst, const Rational& eps, long psi, const SolveOptions& opts = {});
OracleBounds oracle_file(const InstanceFile& inst, long bits);

}  // namespace emiqp
