#include "veerpoly/homology.hpp"

#include <deque>
#include <numeric>

#include "veerpoly/error.hpp"
#include "veerpoly/smith.hpp"

namespace veerpoly {

namespace {

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error(ErrorCode::InternalMismatch, "homology", "label entry overflows");
    return z.get_si();
}

}  // namespace

HomologyModel homology_basis(const Triangulation& tri, const TreeChoice& tree) {
    return homology_basis(tri, build_dual_graph(tri), build_sectors(tri), tree);
}

HomologyModel homology_basis(const Triangulation& tri, const Digraph& dual, const std::vector<Sector>& sectors,
                             const TreeChoice& tree) {
    int nv = dual.vertices, ne = int(dual.edges.size());
    HomologyModel hm;
    hm.dual = dual;
    hm.root = tree.root;
    std::vector<int> order = tree.edge_order;
    if (order.empty()) {
        order.resize(ne);
        std::iota(order.begin(), order.end(), 0);
    }

    // BFS spanning tree; pot[v] = signed chain of the tree path root -> v.
    hm.in_tree.assign(ne, 0);
    std::vector<IVec> pot(nv);
    std::vector<char> seen(nv, 0);
    std::deque<int> queue{tree.root};
    seen[tree.root] = 1;
    pot[tree.root].assign(ne, 0);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : order) {
            auto [a, b] = dual.edges[e];
            int other = -1, sign = 0;
            if (a == v && !seen[b]) { other = b; sign = 1; }
            else if (b == v && !seen[a]) { other = a; sign = -1; }
            if (other < 0) continue;
            seen[other] = 1;
            hm.in_tree[e] = 1;
            pot[other] = pot[v];
            pot[other][e] += sign;
            queue.push_back(other);
        }
    }
    for (int v = 0; v < nv; ++v)
        if (!seen[v]) throw Error(ErrorCode::InternalMismatch, "homology", "dual graph not connected");
    for (int e = 0; e < ne; ++e)
        if (!hm.in_tree[e]) hm.nontree.push_back(e);
    int m = int(hm.nontree.size());
    std::vector<int> coord(ne, -1);
    for (int j = 0; j < m; ++j) coord[hm.nontree[j]] = j;

    // Boundary of each sector in fundamental-cycle coordinates.
    int ns = int(sectors.size());
    IntMatrix d(m, std::vector<mpz_class>(ns, 0));
    for (int s = 0; s < ns; ++s) {
        for (int e : sectors[s].sides[0])
            if (coord[e] >= 0) d[coord[e]][s] += 1;
        for (int e : sectors[s].sides[1])
            if (coord[e] >= 0) d[coord[e]][s] -= 1;
    }
    SmithForm snf = smith_normal_form(d, m, ns);
    for (const auto& x : snf.diagonal)
        if (x > 1) hm.torsion.push_back(x);
    int r = snf.rank;
    hm.b = m - r;

    hm.phi.assign(ne, IVec(hm.b, 0));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < hm.b; ++k) hm.phi[hm.nontree[j]][k] = to_long(snf.U[r + k][j]);

    for (int k = 0; k < hm.b; ++k) {
        IVec chain(ne, 0);
        for (int j = 0; j < m; ++j) {
            long x = to_long(snf.Uinv[j][r + k]);
            if (x == 0) continue;
            auto [a, bb] = dual.edges[hm.nontree[j]];
            chain[hm.nontree[j]] += x;
            for (int e = 0; e < ne; ++e) chain[e] += x * (pot[a][e] - pot[bb][e]);
        }
        hm.basis_cycles.push_back(std::move(chain));
    }

    hm.h.resize(tri.size());
    for (int t = 0; t < tri.size(); ++t)
        for (int k = 0; k < 6; ++k) hm.h[t][k] = path_class(hm, ascending_path(tri, t, k));
    return hm;
}

IVec path_class(const HomologyModel& hm, const std::vector<int>& path) {
    IVec s(hm.b, 0);
    for (int e : path)
        for (int k = 0; k < hm.b; ++k) s[k] += hm.phi[e][k];
    return s;
}

IVec path_label_slot(const HomologyModel& hm, const Triangulation& tri, int t, int slot) {
    if (t < 0 || t >= tri.size() || slot < 0 || slot > 5)
        throw Error(ErrorCode::NotIncident, "tet " + std::to_string(t), "slot out of range");
    return hm.h[t][slot];
}

IVec path_label(const HomologyModel& hm, const Triangulation& tri, int t, int e) {
    if (t < 0 || t >= tri.size()) throw Error(ErrorCode::NotIncident, "tet " + std::to_string(t), "no such tetrahedron");
    for (int k = 0; k < 6; ++k)
        if (tri.tet(t).edge[k] == e) return hm.h[t][k];
    throw Error(ErrorCode::NotIncident, "tet " + std::to_string(t), "edge " + std::to_string(e) + " is not incident");
}

IVec cycle_class(const HomologyModel& hm, const std::vector<int>& cycle) {
    const auto& E = hm.dual.edges;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int e = cycle[i];
        if (e < 0 || e >= int(E.size())) throw Error(ErrorCode::NotClosed, "edge " + std::to_string(e), "no such edge");
        int nxt = cycle[(i + 1) % cycle.size()];
        if (nxt < 0 || nxt >= int(E.size()) || E[e].second != E[nxt].first)
            throw Error(ErrorCode::NotClosed, "position " + std::to_string(i), "edges do not chain");
    }
    return path_class(hm, cycle);
}

IVec chain_class(const HomologyModel& hm, const IVec& chain) {
    IVec s(hm.b, 0);
    for (std::size_t e = 0; e < chain.size(); ++e)
        for (int k = 0; k < hm.b; ++k) s[k] += chain[e] * hm.phi[e][k];
    return s;
}

bool satisfies_switch_conditions(const Triangulation& tri, const std::vector<mpq_class>& w) {
    if (w.size() != tri.faces().size()) return false;
    for (const auto& e : tri.edges()) {
        mpq_class a = 0, b = 0;
        for (int f : e.side_faces[0]) a += w[f];
        for (int f : e.side_faces[1]) b += w[f];
        if (a != b) return false;
    }
    return true;
}

void check_switch_conditions(const Triangulation& tri, const std::vector<mpq_class>& w) {
    if (w.size() != tri.faces().size())
        throw Error(ErrorCode::SwitchConditionViolated, "weights", "expected one weight per face");
    for (const auto& e : tri.edges()) {
        mpq_class a = 0, b = 0;
        for (int f : e.side_faces[0]) a += w[f];
        for (int f : e.side_faces[1]) b += w[f];
        if (a != b)
            throw Error(ErrorCode::SwitchConditionViolated, "edge " + std::to_string(e.id),
                        "side sums " + a.get_str() + " and " + b.get_str());
    }
}

std::vector<mpq_class> weight_class(const HomologyModel& hm, const Triangulation& tri, const std::vector<mpq_class>& w) {
    check_switch_conditions(tri, w);
    std::vector<mpq_class> y(hm.b, 0);
    for (int k = 0; k < hm.b; ++k)
        for (std::size_t e = 0; e < w.size(); ++e)
            if (hm.basis_cycles[k][e]) y[k] += w[e] * hm.basis_cycles[k][e];
    return y;
}

IVec total_class(const HomologyModel& hm) {
    IVec s(hm.b, 0);
    for (const auto& p : hm.phi)
        for (int k = 0; k < hm.b; ++k) s[k] += p[k];
    return s;
}

std::vector<std::vector<long>> basis_change(const HomologyModel& from, const HomologyModel& to) {
    std::vector<std::vector<long>> m(to.b, std::vector<long>(from.b, 0));
    for (int k = 0; k < from.b; ++k) {
        IVec c = chain_class(to, from.basis_cycles[k]);
        for (int i = 0; i < to.b; ++i) m[i][k] = c[i];
    }
    return m;
}

}  // namespace veerpoly
