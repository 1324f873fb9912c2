#pragma once

#include <array>
#include <vector>

#include <gmpxx.h>

#include "veerpoly/graphs.hpp"
#include "veerpoly/triangulation.hpp"

namespace veerpoly {

using IVec = std::vector<long>;

// Spanning tree choice: BFS from `root`, scanning dual-graph edges in `edge_order`
// (default: ascending index).
struct TreeChoice {
    int root = 0;
    std::vector<int> edge_order;
};

struct HomologyModel {
    int b = 0;
    std::vector<mpz_class> torsion;
    int root = 0;
    std::vector<char> in_tree;            // per dual-graph edge
    std::vector<int> nontree;             // non-tree edges in coordinate order
    std::vector<IVec> phi;                // per dual-graph edge, length b
    std::vector<IVec> basis_cycles;       // per basis vector, integer chain on dual-graph edges
    std::vector<std::array<IVec, 6>> h;   // path labels per tetrahedron and slot
    Digraph dual;
};

HomologyModel homology_basis(const Triangulation& tri, const Digraph& dual, const std::vector<Sector>& sectors,
                             const TreeChoice& tree = {});
HomologyModel homology_basis(const Triangulation& tri, const TreeChoice& tree = {});

IVec path_class(const HomologyModel& hm, const std::vector<int>& path);

// Label of the ascending path from v_t for the edge in the given slot.
IVec path_label_slot(const HomologyModel& hm, const Triangulation& tri, int t, int slot);
// Same, by edge class; throws NotIncident if e is not an edge of t. When e fills
// several slots of t the least slot is used.
IVec path_label(const HomologyModel& hm, const Triangulation& tri, int t, int e);

// Throws NotClosed unless consecutive edges chain head to tail and the path closes.
IVec cycle_class(const HomologyModel& hm, const std::vector<int>& cycle);

// Chain (integer coefficients on dual-graph edges) -> class; chain must be a cycle.
IVec chain_class(const HomologyModel& hm, const IVec& chain);

// Checks switch conditions; throws SwitchConditionViolated.
void check_switch_conditions(const Triangulation& tri, const std::vector<mpq_class>& w);
bool satisfies_switch_conditions(const Triangulation& tri, const std::vector<mpq_class>& w);

std::vector<mpq_class> weight_class(const HomologyModel& hm, const Triangulation& tri,
                                    const std::vector<mpq_class>& w);

// Sum of phi over all dual-graph edges (the class of the whole graph).
IVec total_class(const HomologyModel& hm);

// Integer matrix M (b x b) with phi_other(c) = M * phi(c) for every cycle c.
std::vector<std::vector<long>> basis_change(const HomologyModel& from, const HomologyModel& to);

}  // namespace veerpoly
