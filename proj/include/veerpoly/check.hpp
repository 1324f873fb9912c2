#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "veerpoly/report.hpp"

namespace veerpoly {

struct CheckItem {
    std::string name;
    std::string status;  // pass, fail or skip
    std::string detail;
};

struct CheckSummary {
    std::vector<CheckItem> items;
    bool ok() const;
    // Name of the first failing invariant, empty when everything passed.
    std::string first_failure() const;
};

struct CheckOptions {
    Budgets budgets;
    ThetaMode mode = ThetaMode::Auto;
    int reruns = 5;
    std::uint32_t seed = 1729;
};

// Relabels tetrahedra (old t becomes tet_perm[t]) and vertices (vertex v of old t becomes
// vertex_perm[t][v]; permutations must be even).
TriangulationRecord relabel(const TriangulationRecord& rec, const std::vector<int>& tet_perm,
                            const std::vector<Perm4>& vertex_perm);

// M with class_other(c) = M * class_base(c), where `other` is `base` relabeled as above.
std::vector<std::vector<long>> transfer_matrix(const Triangulation& base, const HomologyModel& base_hm,
                                               const Triangulation& other, const HomologyModel& other_hm,
                                               const std::vector<int>& tet_perm, const std::vector<Perm4>& vertex_perm);

// Basis-dependent invariants compared by the determinism re-runs.
struct InvariantSet {
    int b = 0;
    std::vector<mpz_class> torsion;
    LaurentPoly veering;
    LaurentPoly taut;
    LaurentPoly ab;
    std::vector<IVec> generators;
    Cone carried;
    bool layered = false;
};

InvariantSet compute_invariants(const Triangulation& tri, const HomologyModel& hm, const CheckOptions& opt);
// Empty string when `other` equals `base` after the change of basis m; otherwise the differing field.
std::string compare_invariants(const InvariantSet& base, const InvariantSet& other, const std::vector<std::vector<long>>& m);

CheckSummary check_all(const TriangulationRecord& rec, const CheckOptions& opt = {});

}  // namespace veerpoly
