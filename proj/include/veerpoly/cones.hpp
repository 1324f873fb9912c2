#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "veerpoly/homology.hpp"
#include "veerpoly/triangulation.hpp"

namespace veerpoly {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

ZVec primitive(const ZVec& v);
ZVec clear_denominators(const QVec& v);
ZVec to_zvec(const IVec& v);

// Cone given by generators: extreme rays (primitive, modulo lineality) and a lineality basis.
struct Cone {
    int dim = 0;
    std::vector<ZVec> rays;
    std::vector<ZVec> lineality;
};

inline constexpr std::size_t kDefaultRayCap = 200000;

// {x : a.x >= 0 for a in ineq, a.x = 0 for a in eq} by double description.
Cone dd_cone(int dim, const std::vector<ZVec>& ineq, const std::vector<ZVec>& eq, std::size_t ray_cap = kDefaultRayCap);

// Conic hull of generators with its extreme rays.
Cone cone_hull(int dim, const std::vector<ZVec>& gens, std::size_t ray_cap = kDefaultRayCap);

// The dual cone {y : y.g >= 0 for every generator g}.
Cone dual_cone(int dim, const std::vector<ZVec>& gens, std::size_t ray_cap = kDefaultRayCap);

// Canonical form: lineality in reduced echelon form, rays projected to its orthogonal
// complement, primitive and sorted. Equal cones have equal canonical forms.
Cone canonical(const Cone& c);
bool same_cone(const Cone& a, const Cone& b);
int cone_dimension(const Cone& c);

struct ConePresentation {
    int ambient = 0;
    Cone cone;                         // generators
    std::vector<ZVec> inequalities;    // y.z >= 0 (rays of the dual)
    std::vector<ZVec> equalities;      // y.z = 0
};

inline constexpr std::size_t kDefaultFaceBudget = 64;

struct CarriedCone {
    ConePresentation presentation;  // in Q^b
    std::vector<ZVec> weight_rays;  // extreme rays of {w >= 0, switch conditions} in Q^F
};

CarriedCone carried_cone(const Triangulation& tri, const HomologyModel& hm, std::size_t face_budget = kDefaultFaceBudget);

// Distinct primitive classes of simple directed cycles of the dual graph, sorted.
std::vector<IVec> homology_direction_generators(const Triangulation& tri, const HomologyModel& hm,
                                                std::size_t cap = 100000, std::size_t* cycle_count = nullptr);
// Same from the flow graph.
std::vector<IVec> flow_direction_generators(const Triangulation& tri, const HomologyModel& hm, std::size_t cap = 100000);

// Exact feasibility of {eta : g.eta >= 1}: either eta, or y >= 0 with sum y_i g_i = 0, sum y > 0.
struct HalfSpaceResult {
    bool feasible = false;
    ZVec eta;
    ZVec farkas;  // per generator
};
HalfSpaceResult open_half_space(int b, const std::vector<IVec>& gens);

struct LayerednessVerdict {
    bool layered = false;
    std::vector<IVec> generators;
    ZVec eta;
    ZVec farkas;
    std::vector<mpz_class> weights;  // strictly positive, carried (layered only)
    long scale = 0;                  // k with class(weights) = k * eta
};

LayerednessVerdict is_layered(const Triangulation& tri, const HomologyModel& hm, std::size_t cap = 100000);

// Certificate checks used by tests and the check command.
bool verify_eta(const std::vector<IVec>& gens, const ZVec& eta);
bool verify_farkas(const std::vector<IVec>& gens, const ZVec& y);

struct NormData {
    QVec y;
    mpq_class norm;
    mpq_class euler;  // -e_tau(y)
    int face_codimension = 0;
};

// face_codimension is the dimension of the largest linear subspace in the cone of
// homology directions (pass generators; empty skips it).
NormData norm_data(const Triangulation& tri, const HomologyModel& hm, const QVec& w,
                   const std::vector<IVec>& generators = {});

}  // namespace veerpoly
