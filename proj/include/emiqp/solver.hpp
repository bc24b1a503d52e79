#pragma once

#include "emiqp/geometry.hpp"
#include "emiqp/polytope.hpp"

namespace emiqp {

struct EmiqpInstance {
    QuadraticObjective objective;
    Ellipsoid ellipsoid;
    std::size_t p = 0;

    std::size_t dim() const { return ellipsoid.dim(); }
    bool feasible(const RVector& x) const;
};

struct MiqpInstance {
    QuadraticObjective objective;
    Polytope polytope;
    std::size_t p = 0;

    std::size_t dim() const { return polytope.dim(); }
    bool feasible(const RVector& x) const;
};

bool mixed_integral(const RVector& x, std::size_t p);

// {dᵀx : x in body} ⊆ [rho, rho + width], width^2 <= capSquared
struct FlatCertificate {
    RVector d;
    Rational rho;
    Rational width;
    Rational capSquared;

    Integer first_beta() const { return ceil(rho); }
    Integer last_beta() const { return floor(rho + width); }
    // floor(sqrt(capSquared)) + 1
    Integer hyperplane_cap() const;
};

struct ApproxSolution {
    RVector x;
    Rational eps;
};

using FlatOutcome = std::variant<ApproxSolution, FlatCertificate>;

FlatOutcome emiqp_flat_or_approx(const EmiqpInstance& inst, const Rational& eps);
FlatOutcome miqp_flat_or_approx(const MiqpInstance& inst);

// Exact slab check of a certificate against its body.
bool certificate_holds(const FlatCertificate& cert, const Ellipsoid& body);
bool certificate_holds(const FlatCertificate& cert, const Polytope& body);

struct CertificateRecord {
    FlatCertificate certificate;
    std::variant<Ellipsoid, Polytope> body;
    std::size_t level = 0;
    std::size_t p = 0;
    std::size_t hyperplanes = 0;
};

struct SolveStats {
    std::size_t depth = 0;
    std::size_t nodes = 0;
    std::size_t flatCalls = 0;
    unsigned long trCalls = 0;
    // largest number of hyperplanes enumerated at each recursion level
    std::vector<std::size_t> hyperplanesPerLevel;
    std::vector<CertificateRecord> certificates;
    bool recordCertificates = false;
};

enum class SolveStatus { ApproxSolution, Infeasible };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    RVector x;
    Rational value;
    Rational eps;
    SolveStats stats;
};

struct SolveOptions {
    bool recordCertificates = false;
};

SolveOutcome approximate_emiqp(const EmiqpInstance& inst, const Rational& eps, const SolveOptions& opts = {});
SolveOutcome approximate_miqp(const MiqpInstance& inst, long psi, const SolveOptions& opts = {});

// Lowest objective value, ties broken lexicographically.
RVector best_of(const QuadraticObjective& f, const std::vector<RVector>& candidates);

// 1 - 1/(8(n+1)^2)
Rational weak_epsilon(std::size_t n);

}  // namespace emiqp
