#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "veerpoly/triangulation.hpp"

namespace veerpoly {

struct Digraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // (tail, head)

    std::vector<std::vector<int>> out_edges() const;
    std::vector<int> in_degrees() const;
    std::vector<int> out_degrees() const;
};

bool strongly_connected(const Digraph& g);

// Vertices = tetrahedra, edge f = face class f, from the tetrahedron below to the one above.
Digraph build_dual_graph(const Triangulation& tri);

struct Sector {
    int edge = 0;
    int bottom_tet = 0;  // D(e)
    int top_tet = 0;     // U(e)
    std::array<std::vector<int>, 2> sides;  // ascending dual-graph edges
};

std::vector<Sector> build_sectors(const Triangulation& tri);

// Ascending side path from v_t to v_{U(e)} for the edge in slot `slot` of t:
// empty for the bottom slot, side 0 for the top slot (or `top_side`).
std::vector<int> ascending_path(const Triangulation& tri, int t, int slot, int top_side = 0);

// Slots of t: the two side slots whose veer differs from the top edge's (s) and the
// two whose veer agrees (r), each ascending.
std::array<int, 2> s_slots(const Triangulation& tri, int t);
std::array<int, 2> r_slots(const Triangulation& tri, int t);

struct FlowEdge {
    int tet = 0;
    int from = 0;  // bottom edge of tet
    int to = 0;
    int slot = 0;  // slot of `to` in tet
    std::vector<int> path;  // dual-graph edges
};

struct FlowGraph {
    int vertices = 0;
    std::vector<FlowEdge> edges;
    Digraph digraph() const;
};

// Per tetrahedron, in tetrahedron order: bottom -> top, bottom -> s1, bottom -> s2.
FlowGraph build_flow_graph(const Triangulation& tri);

enum class Turn { Branching, AntiBranching };

// f1 a bottom face and f2 a top face of t (local face numbers).
Turn classify_turn(const Triangulation& tri, int t, int f1, int f2);

struct AbPermutation {
    std::vector<int> image;                // A(f)
    std::vector<std::vector<int>> cycles;  // f, A(f), A(A(f)), ... from the least face
};

AbPermutation ab_permutation(const Triangulation& tri);

// All simple directed cycles as edge-index lists, each starting at its least vertex.
// Throws CycleBudgetExceeded past `cap`.
inline constexpr std::size_t kDefaultCycleCap = 100000;
std::vector<std::vector<int>> simple_cycles(const Digraph& g, std::size_t cap = kDefaultCycleCap);

}  // namespace veerpoly
