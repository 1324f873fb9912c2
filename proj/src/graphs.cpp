#include "veerpoly/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "veerpoly/error.hpp"

namespace veerpoly {

std::vector<std::vector<int>> Digraph::out_edges() const {
    std::vector<std::vector<int>> out(vertices);
    for (int i = 0; i < int(edges.size()); ++i) out[edges[i].first].push_back(i);
    return out;
}

std::vector<int> Digraph::in_degrees() const {
    std::vector<int> d(vertices, 0);
    for (const auto& [a, b] : edges) ++d[b];
    return d;
}

std::vector<int> Digraph::out_degrees() const {
    std::vector<int> d(vertices, 0);
    for (const auto& [a, b] : edges) ++d[a];
    return d;
}

bool strongly_connected(const Digraph& g) {
    if (g.vertices == 0) return true;
    auto reach = [&](bool reverse) {
        std::vector<char> seen(g.vertices, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : g.edges) {
                int from = reverse ? b : a, to = reverse ? a : b;
                if (from == v && !seen[to]) {
                    seen[to] = 1;
                    stack.push_back(to);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
    };
    return reach(false) && reach(true);
}

Digraph build_dual_graph(const Triangulation& tri) {
    Digraph g;
    g.vertices = tri.size();
    for (const auto& f : tri.faces()) g.edges.emplace_back(f.below(), f.above());
    return g;
}

std::vector<Sector> build_sectors(const Triangulation& tri) {
    std::vector<Sector> out;
    for (const auto& e : tri.edges()) {
        Sector s;
        s.edge = e.id;
        s.bottom_tet = e.below.tet;
        s.top_tet = e.above.tet;
        s.sides = e.side_faces;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<int> ascending_path(const Triangulation& tri, int t, int slot, int top_side) {
    const SlotRole& role = tri.tet(t).role[slot];
    const EdgeClass& e = tri.edge(tri.tet(t).edge[slot]);
    switch (role.kind) {
        case SlotKind::Bottom: return {};
        case SlotKind::Top: return e.side_faces[top_side];
        case SlotKind::Side: {
            const auto& f = e.side_faces[role.side];
            return std::vector<int>(f.begin() + role.position, f.end());
        }
    }
    return {};
}

namespace {

std::array<int, 2> slots_with_veer(const Triangulation& tri, int t, bool same) {
    Veer top = tri.veer_of(t, tri.tet(t).top_slot);
    std::array<int, 2> out{-1, -1};
    int n = 0;
    for (int k = 0; k < 6; ++k) {
        if (!tri.is_side_slot(t, k)) continue;
        if ((tri.veer_of(t, k) == top) == same) out[n++] = k;
    }
    if (n != 2) throw Error(ErrorCode::InternalMismatch, "tet " + std::to_string(t), "side veers do not split 2+2");
    return out;
}

}  // namespace

std::array<int, 2> s_slots(const Triangulation& tri, int t) { return slots_with_veer(tri, t, false); }
std::array<int, 2> r_slots(const Triangulation& tri, int t) { return slots_with_veer(tri, t, true); }

Digraph FlowGraph::digraph() const {
    Digraph g;
    g.vertices = vertices;
    for (const auto& e : edges) g.edges.emplace_back(e.from, e.to);
    return g;
}

FlowGraph build_flow_graph(const Triangulation& tri) {
    FlowGraph g;
    g.vertices = int(tri.edges().size());
    for (int t = 0; t < tri.size(); ++t) {
        const TetInfo& ti = tri.tet(t);
        auto s = s_slots(tri, t);
        for (int slot : {ti.top_slot, s[0], s[1]}) {
            FlowEdge fe;
            fe.tet = t;
            fe.from = ti.edge[ti.bottom_slot];
            fe.to = ti.edge[slot];
            fe.slot = slot;
            fe.path = ascending_path(tri, t, slot);
            g.edges.push_back(std::move(fe));
        }
    }
    return g;
}

Turn classify_turn(const Triangulation& tri, int t, int f1, int f2) {
    if (t < 0 || t >= tri.size() || f1 < 0 || f1 > 3 || f2 < 0 || f2 > 3 || f1 == f2)
        throw Error(ErrorCode::FacesNotAdjacent, "tet " + std::to_string(t), "bad face pair");
    const auto& co = tri.record().coorientations[t];
    if (co[f1] != -1 || co[f2] != 1)
        throw Error(ErrorCode::FacesNotAdjacent, "tet " + std::to_string(t),
                    "expected a bottom face followed by a top face");
    int s = 5 - slot_of(f1, f2);
    return tri.veer_of(t, s) != tri.veer_of(t, tri.tet(t).top_slot) ? Turn::Branching : Turn::AntiBranching;
}

AbPermutation ab_permutation(const Triangulation& tri) {
    int nf = int(tri.faces().size());
    AbPermutation ab;
    ab.image.assign(nf, -1);
    for (const auto& f : tri.faces()) {
        int t = f.upper.tet, i = f.upper.face;
        auto r = r_slots(tri, t);
        int rs = face_contains_slot(i, r[0]) ? r[0] : r[1];
        int c = kSlotVertices[5 - rs][0], d = kSlotVertices[5 - rs][1];
        int j = c == i ? d : c;
        ab.image[f.id] = tri.tet(t).face[j];
    }
    std::vector<char> seen(nf, 0);
    for (int f = 0; f < nf; ++f) {
        if (seen[f]) continue;
        std::vector<int> cyc;
        for (int x = f; !seen[x]; x = ab.image[x]) {
            seen[x] = 1;
            cyc.push_back(x);
        }
        if (ab.image[cyc.back()] != f)
            throw Error(ErrorCode::InternalMismatch, "face " + std::to_string(f), "A is not a bijection");
        ab.cycles.push_back(std::move(cyc));
    }
    return ab;
}

std::vector<std::vector<int>> simple_cycles(const Digraph& g, std::size_t cap) {
    int n = g.vertices;
    auto out = g.out_edges();
    std::vector<std::vector<int>> result;
    std::vector<char> blocked(n, 0);
    std::vector<std::set<int>> bset(n);
    std::vector<int> estack;
    int s = 0;

    std::function<void(int)> unblock = [&](int v) {
        blocked[v] = 0;
        auto b = std::move(bset[v]);
        bset[v].clear();
        for (int w : b)
            if (blocked[w]) unblock(w);
    };
    std::function<bool(int)> circuit = [&](int v) {
        bool found = false;
        blocked[v] = 1;
        for (int e : out[v]) {
            int w = g.edges[e].second;
            if (w < s) continue;
            estack.push_back(e);
            if (w == s) {
                result.push_back(estack);
                if (result.size() > cap)
                    throw Error(ErrorCode::CycleBudgetExceeded, "simple_cycles", "more than " + std::to_string(cap) + " cycles");
                found = true;
            } else if (!blocked[w]) {
                if (circuit(w)) found = true;
            }
            estack.pop_back();
        }
        if (found) {
            unblock(v);
        } else {
            for (int e : out[v]) {
                int w = g.edges[e].second;
                if (w >= s) bset[w].insert(v);
            }
        }
        return found;
    };
    for (s = 0; s < n; ++s) {
        for (int v = s; v < n; ++v) {
            blocked[v] = 0;
            bset[v].clear();
        }
        circuit(s);
    }
    return result;
}

}  // namespace veerpoly
