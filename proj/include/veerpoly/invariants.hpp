#pragma once

#include <string>
#include <vector>

#include "veerpoly/graphs.hpp"
#include "veerpoly/homology.hpp"
#include "veerpoly/laurent.hpp"

namespace veerpoly {

LaurentPoly monomial_of(int b, const IVec& e, long coef = 1);

// Rows are edge classes; the column of tetrahedron t sits at its bottom edge.
LaurentMatrix edge_matrix(const Triangulation& tri, const HomologyModel& hm);
// Rows are edge classes, columns faces.
LaurentMatrix face_matrix(const Triangulation& tri, const HomologyModel& hm);
// I + A: the (A(f), f) entry is x^phi(A(f)).
LaurentMatrix ab_matrix(const Triangulation& tri, const HomologyModel& hm, const AbPermutation& ab);
// 0/1 matrix with a 1 at (bottom edge of f, f).
LaurentMatrix epsilon_matrix(const Triangulation& tri, int b);

// det(L), not normalized.
LaurentPoly veering_determinant(const Triangulation& tri, const HomologyModel& hm);
// Canonical det(L).
LaurentPoly veering_polynomial(const Triangulation& tri, const HomologyModel& hm);

// det(I - A) of an edge-labeled digraph via 1 + sum over cliques of disjoint simple cycles.
LaurentPoly clique_polynomial(const Digraph& g, const std::vector<IVec>& labels, int b,
                              std::size_t cap = kDefaultCycleCap, std::size_t* cycle_count = nullptr);
// det(I - A) computed directly from the labeled adjacency matrix.
LaurentPoly labeled_adjacency_det(const Digraph& g, const std::vector<IVec>& labels, int b);

LaurentPoly perron_clique_oracle(const FlowGraph& phi, const HomologyModel& hm,
                                 std::size_t cap = kDefaultCycleCap, std::size_t* cycle_count = nullptr);

struct AbCycle {
    std::vector<int> faces;
    int length = 0;
    IVec cls;
    int sign = 1;  // (-1)^(length+1)
};

struct AbPolynomial {
    LaurentPoly raw;        // prod (1 + sign x^g)
    LaurentPoly canonical;
    std::vector<AbCycle> cycles;
};

LaurentPoly ab_cycle_product(int b, const std::vector<AbCycle>& cycles);

// Cross-checks against det(L^AB); throws InternalMismatch if they differ.
AbPolynomial ab_polynomial(const Triangulation& tri, const HomologyModel& hm);

enum class ThetaMode { Exact, Division, Auto };
std::string to_string(ThetaMode m);

inline constexpr std::size_t kDefaultMinorBudget = 2000000;

struct TautResult {
    LaurentPoly theta;          // canonical; zero when division leaves several candidates
    ThetaMode mode = ThetaMode::Exact;
    bool rank_one_caveat = false;
    std::string factor = "1";   // factor c with V^AB * theta = c * V (rank one)
    std::vector<std::pair<std::string, LaurentPoly>> candidates;  // rank-one division candidates
    std::size_t minors = 0;
};

// gcd of all maximal minors (size = rows) of m.
LaurentPoly gcd_of_maximal_minors(const LaurentMatrix& m, std::size_t budget, std::size_t* count = nullptr);

// [L^tri(f_1) | ... | L^tri(f_n) | L] with f_i the first face of each AB-cycle.
LaurentMatrix reduced_face_presentation(const Triangulation& tri, const HomologyModel& hm, const AbPermutation& ab);

TautResult taut_polynomial(const Triangulation& tri, const HomologyModel& hm, ThetaMode mode = ThetaMode::Auto,
                           std::size_t minor_budget = kDefaultMinorBudget);

// Rank-one factor c in {1, 1-t, 1+t} with normalize(c V) = normalize(V^AB Theta); empty if none.
std::vector<std::string> rank_one_factors(const LaurentPoly& v, const LaurentPoly& vab, const LaurentPoly& theta);

struct IdentityVerdict {
    bool matrix_identity = true;   // L^tri * L^AB = L * eps
    bool face_sums = true;         // per bottom face
    bool ab_determinant = true;    // det(L^AB) = cycle product
    int matrix_checks = 0;
    int face_checks = 0;
    std::vector<std::string> failures;
    bool all() const { return matrix_identity && face_sums && ab_determinant; }
};

IdentityVerdict structural_identities(const Triangulation& tri, const HomologyModel& hm);

}  // namespace veerpoly
