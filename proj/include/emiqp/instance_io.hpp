#pragma once

#include "emiqp/mitr.hpp"
#include "emiqp/solver.hpp"

#include <filesystem>
#include <map>

namespace emiqp {

constexpr int kInstanceFormatVersion = 1;

struct InstanceFile {
    int version = kInstanceFormatVersion;
    std::size_t p = 0;
    QuadraticObjective objective;
    std::variant<Ellipsoid, MixedLattice, Polytope> region;
    std::map<std::string, std::string> meta;

    std::size_t dim() const { return objective.dim(); }
    bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(region); }
    bool is_lattice() const { return std::holds_alternative<MixedLattice>(region); }
    bool is_polytope() const { return std::holds_alternative<Polytope>(region); }
    bool feasible(const RVector& x) const;

    bool operator==(const InstanceFile& o) const;
};

std::string serialize(const InstanceFile& inst);
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const InstanceFile& inst);

InstanceFile make_file(const EmiqpInstance& inst);
InstanceFile make_file(const MiqpInstance& inst);
InstanceFile make_file(const MitrInstance& inst);

RVector parse_point(std::string_view text);

}  // namespace emiqp
