#include "veerpoly/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "veerpoly/error.hpp"

namespace veerpoly {

std::string to_string(const FaceSlot& f) {
    return "tet " + std::to_string(f.tet) + " face " + std::to_string(f.face);
}

std::string to_string(const EdgeSlot& e) {
    return "tet " + std::to_string(e.tet) + " edge " + std::to_string(kSlotVertices[e.slot][0]) +
           std::to_string(kSlotVertices[e.slot][1]);
}

const std::vector<ModelRow>& model_table() {
    static const std::vector<ModelRow> table = [] {
        // Reference: faces 0,1 on top (top edge 23, bottom edge 01), pair {02,13} left, {03,12} right.
        const std::array<int, 4> coor{1, 1, -1, -1};
        const std::array<int, 6> veer{-1, 0, 1, 1, 0, -1};
        std::vector<ModelRow> rows;
        std::array<int, 4> v{0, 1, 2, 3};
        do {
            Perm4 s(v[0], v[1], v[2], v[3]);
            if (s.sign() != 1) continue;
            ModelRow r;
            r.relabel = s;
            for (int i = 0; i < 4; ++i) r.coorientation[s[i]] = coor[i];
            for (int k = 0; k < 6; ++k)
                r.veer[slot_of(s[kSlotVertices[k][0]], s[kSlotVertices[k][1]])] = veer[k];
            bool dup = false;
            for (const auto& o : rows)
                if (o.coorientation == r.coorientation && o.veer == r.veer) dup = true;
            if (!dup) rows.push_back(r);
        } while (std::next_permutation(v.begin(), v.end()));
        return rows;
    }();
    return table;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

bool slot_is_pi(const std::array<int, 4>& coor, int k) {
    int c = kSlotVertices[5 - k][0], d = kSlotVertices[5 - k][1];
    return coor[c] == coor[d];
}

void check_gluings(const TriangulationRecord& rec) {
    int n = rec.tetrahedra;
    if (n < 1 || int(rec.gluings.size()) != n || int(rec.coorientations.size()) != n ||
        (rec.veers && int(rec.veers->size()) != n))
        throw Error(ErrorCode::CountMismatch, "record", "table lengths disagree with tetrahedron count");
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = rec.gluings[t][f];
            FaceSlot here{t, f};
            if (g.tet < 0 || g.tet >= n || g.face < 0 || g.face > 3 || !g.perm.is_valid())
                throw Error(ErrorCode::GluingNotInvolutive, to_string(here), "partner out of range");
            if (g.perm[f] != g.face)
                throw Error(ErrorCode::GluingNotInvolutive, to_string(here), "permutation does not carry the face to its partner");
            if (g.tet == t && g.face == f)
                throw Error(ErrorCode::GluingNotInvolutive, to_string(here), "face glued to itself");
            const Gluing& back = rec.gluings[g.tet][g.face];
            if (back.tet != t || back.face != f || !(back.perm == g.perm.inverse()))
                throw Error(ErrorCode::GluingNotInvolutive, to_string(here), "partner does not glue back");
        }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            if (rec.gluings[t][f].perm.sign() != -1)
                throw Error(ErrorCode::NotOriented, to_string(FaceSlot{t, f}), "even gluing permutation");
}

void check_coorientations(const TriangulationRecord& rec) {
    int n = rec.tetrahedra;
    for (int t = 0; t < n; ++t) {
        int plus = 0;
        for (int f = 0; f < 4; ++f) {
            int c = rec.coorientations[t][f];
            if (c != 1 && c != -1)
                throw Error(ErrorCode::CoorientationMismatch, to_string(FaceSlot{t, f}), "sign must be +1 or -1");
            if (c == 1) ++plus;
        }
        if (plus != 2)
            throw Error(ErrorCode::CoorientationMismatch, "tet " + std::to_string(t), "needs two top and two bottom faces");
    }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = rec.gluings[t][f];
            if (rec.coorientations[t][f] == rec.coorientations[g.tet][g.face])
                throw Error(ErrorCode::CoorientationMismatch, to_string(FaceSlot{t, f}), "glued faces carry equal signs");
        }
}

// Edge classes from slots, ordered by least incident slot.
std::vector<std::vector<EdgeSlot>> edge_slot_classes(const TriangulationRecord& rec) {
    int n = rec.tetrahedra;
    UnionFind uf(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = rec.gluings[t][f];
            for (int k = 0; k < 6; ++k) {
                if (!face_contains_slot(f, k)) continue;
                int k2 = slot_of(g.perm[kSlotVertices[k][0]], g.perm[kSlotVertices[k][1]]);
                uf.unite(6 * t + k, 6 * g.tet + k2);
            }
        }
    std::map<int, std::vector<EdgeSlot>> groups;
    for (int i = 0; i < 6 * n; ++i) groups[uf.find(i)].push_back(EdgeSlot{i / 6, i % 6});
    std::vector<std::vector<EdgeSlot>> out;
    for (auto& [root, v] : groups) out.push_back(std::move(v));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

struct Walk {
    std::vector<EdgeSlot> slots;
    std::vector<FaceSlot> crossed;  // crossed[i] leaves slots[i]
};

Walk walk_around(const TriangulationRecord& rec, EdgeSlot start) {
    Walk w;
    int t = start.tet;
    std::array<int, 4> v{kSlotVertices[start.slot][0], kSlotVertices[start.slot][1],
                         kSlotVertices[5 - start.slot][0], kSlotVertices[5 - start.slot][1]};
    for (int guard = 0; guard < 6 * rec.tetrahedra + 1; ++guard) {
        w.slots.push_back(EdgeSlot{t, slot_of(v[0], v[1])});
        w.crossed.push_back(FaceSlot{t, v[3]});
        const Gluing& g = rec.gluings[t][v[3]];
        std::array<int, 4> nv{g.perm[v[0]], g.perm[v[1]], g.perm[v[3]], g.perm[v[2]]};
        t = g.tet;
        v = nv;
        if (t == start.tet && slot_of(v[0], v[1]) == start.slot) return w;
    }
    throw Error(ErrorCode::InternalMismatch, to_string(start), "edge walk did not close");
}

}  // namespace

Triangulation Triangulation::validate(const TriangulationRecord& rec) { return build(rec, true); }

Triangulation Triangulation::validate_without_veer_checks(const TriangulationRecord& rec) { return build(rec, false); }

Triangulation Triangulation::build(const TriangulationRecord& rec, bool check_veers) {
    check_gluings(rec);
    check_coorientations(rec);
    int n = rec.tetrahedra;

    Triangulation tri;
    tri.rec_ = rec;
    tri.tets_.resize(n);
    for (int t = 0; t < n; ++t) {
        TetInfo& ti = tri.tets_[t];
        int nt = 0, nb = 0;
        for (int f = 0; f < 4; ++f) {
            if (rec.coorientations[t][f] == 1) ti.top_faces[nt++] = f;
            else ti.bottom_faces[nb++] = f;
        }
        ti.top_slot = 5 - slot_of(ti.top_faces[0], ti.top_faces[1]);
        ti.bottom_slot = 5 - slot_of(ti.bottom_faces[0], ti.bottom_faces[1]);
    }

    auto classes = edge_slot_classes(rec);
    int ne = int(classes.size());
    tri.edges_.resize(ne);
    for (int e = 0; e < ne; ++e)
        for (const auto& s : classes[e]) tri.tets_[s.tet].edge[s.slot] = e;

    // Angle sums.
    for (int e = 0; e < ne; ++e) {
        int pis = 0;
        for (const auto& s : classes[e])
            if (slot_is_pi(rec.coorientations[s.tet], s.slot)) ++pis;
        if (pis != 2)
            throw Error(ErrorCode::AngleSumViolation, "edge " + std::to_string(e) + " (" + to_string(classes[e].front()) + ")",
                        std::to_string(pis) + " pi-incidences");
    }
    if (ne != n)
        throw Error(ErrorCode::AngleSumViolation, "triangulation", "edge count differs from tetrahedron count");

    // Veers.
    if (!rec.veers)
        throw Error(ErrorCode::VeerSlotConflict, "record", "veers not assigned; run inference first");
    for (int e = 0; e < ne; ++e) {
        Veer v = (*rec.veers)[classes[e].front().tet][classes[e].front().slot];
        for (const auto& s : classes[e])
            if (check_veers && (*rec.veers)[s.tet][s.slot] != v)
                throw Error(ErrorCode::VeerSlotConflict, "edge " + std::to_string(e) + " (" + to_string(s) + ")",
                            "slots of one edge carry different veers");
        tri.edges_[e].veer = v;
    }
    for (int t = 0; t < n; ++t) tri.tets_[t].veer = (*rec.veers)[t];
    const auto& model = model_table();
    for (int t = 0; t < n && check_veers; ++t) {
        bool match = false;
        for (const auto& row : model) {
            if (row.coorientation != rec.coorientations[t]) continue;
            bool ok = true;
            for (int k = 0; k < 6; ++k)
                if (row.veer[k] >= 0 && row.veer[k] != int(tri.edges_[tri.tets_[t].edge[k]].veer)) ok = false;
            if (ok) match = true;
        }
        if (!match)
            throw Error(ErrorCode::ModelTetrahedronViolation, "tet " + std::to_string(t),
                        "no orientation-preserving relabeling onto the model veering tetrahedron");
    }

    // Face classes.
    std::vector<std::pair<FaceSlot, FaceSlot>> fpairs;
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = rec.gluings[t][f];
            FaceSlot a{t, f}, b{g.tet, g.face};
            if (a < b) fpairs.emplace_back(a, b);
        }
    std::sort(fpairs.begin(), fpairs.end());
    for (int i = 0; i < int(fpairs.size()); ++i) {
        auto [a, b] = fpairs[i];
        FaceClass fc;
        fc.id = i;
        if (rec.coorientations[a.tet][a.face] == 1) {
            fc.lower = a;
            fc.upper = b;
        } else {
            fc.lower = b;
            fc.upper = a;
        }
        int j = 0;
        for (int k = 0; k < 6; ++k)
            if (face_contains_slot(fc.upper.face, k)) fc.edges[j++] = tri.tets_[fc.upper.tet].edge[k];
        fc.bottom_edge = tri.tets_[fc.upper.tet].edge[tri.tets_[fc.upper.tet].bottom_slot];
        tri.tets_[a.tet].face[a.face] = i;
        tri.tets_[b.tet].face[b.face] = i;
        tri.faces_.push_back(fc);
    }

    // Fans.
    for (int e = 0; e < ne; ++e) {
        EdgeClass& ec = tri.edges_[e];
        ec.id = e;
        ec.degree = int(classes[e].size());
        EdgeSlot d{-1, -1};
        for (const auto& s : classes[e])
            if (tri.tets_[s.tet].top_slot == s.slot) d = s;
        Walk w = walk_around(rec, d);
        if (int(w.slots.size()) != ec.degree)
            throw Error(ErrorCode::InternalMismatch, "edge " + std::to_string(e), "walk length differs from degree");
        int u = -1;
        for (int i = 1; i < ec.degree; ++i)
            if (tri.tets_[w.slots[i].tet].bottom_slot == w.slots[i].slot) u = i;
        if (u < 0) throw Error(ErrorCode::InternalMismatch, "edge " + std::to_string(e), "no bottom incidence on walk");
        ec.incidences = w.slots;
        ec.below = w.slots[0];
        ec.above = w.slots[u];
        std::array<std::vector<EdgeSlot>, 2> sides;
        std::array<std::vector<int>, 2> sfaces;
        for (int i = 1; i < u; ++i) sides[0].push_back(w.slots[i]);
        for (int i = 0; i < u; ++i) sfaces[0].push_back(tri.tets_[w.crossed[i].tet].face[w.crossed[i].face]);
        for (int i = ec.degree - 1; i > u; --i) sides[1].push_back(w.slots[i]);
        for (int i = ec.degree - 1; i >= u; --i) sfaces[1].push_back(tri.tets_[w.crossed[i].tet].face[w.crossed[i].face]);
        auto least = [](const std::vector<EdgeSlot>& v) {
            return v.empty() ? EdgeSlot{1 << 30, 0} : *std::min_element(v.begin(), v.end());
        };
        if (least(sides[1]) < least(sides[0])) {
            std::swap(sides[0], sides[1]);
            std::swap(sfaces[0], sfaces[1]);
        }
        ec.sides = std::move(sides);
        ec.side_faces = std::move(sfaces);
        TetInfo& dt = tri.tets_[ec.below.tet];
        dt.role[ec.below.slot] = SlotRole{SlotKind::Top, 0, 0};
        TetInfo& ut = tri.tets_[ec.above.tet];
        ut.role[ec.above.slot] = SlotRole{SlotKind::Bottom, 0, 0};
        for (int s = 0; s < 2; ++s)
            for (int i = 0; i < int(ec.sides[s].size()); ++i) {
                const EdgeSlot& es = ec.sides[s][i];
                tri.tets_[es.tet].role[es.slot] = SlotRole{SlotKind::Side, s, i + 1};
            }
    }
    for (int e = 0; e < ne; ++e)
        for (int s = 0; s < 2; ++s)
            if (tri.edges_[e].sides[s].empty())
                throw Error(ErrorCode::EmptyFanSide, "edge " + std::to_string(e), "side " + std::to_string(s) + " has no tetrahedra");
    return tri;
}

std::vector<EdgeClass> edge_fans(const Triangulation& tri) { return tri.edges(); }

VeerInference infer_veers(const TriangulationRecord& rec_in) {
    TriangulationRecord rec = rec_in;
    rec.veers.reset();
    check_gluings(rec);
    check_coorientations(rec);
    auto classes = edge_slot_classes(rec);
    int n = rec.tetrahedra, ne = int(classes.size());
    std::vector<std::array<int, 6>> cls(n);
    for (int e = 0; e < ne; ++e)
        for (const auto& s : classes[e]) cls[s.tet][s.slot] = e;
    for (int e = 0; e < ne; ++e) {
        int pis = 0;
        for (const auto& s : classes[e])
            if (slot_is_pi(rec.coorientations[s.tet], s.slot)) ++pis;
        if (pis != 2)
            throw Error(ErrorCode::AngleSumViolation, "edge " + std::to_string(e), std::to_string(pis) + " pi-incidences");
    }
    VeerInference out;
    std::vector<int> forced(ne, -1);
    const auto& model = model_table();
    for (int t = 0; t < n; ++t) {
        const ModelRow* row = nullptr;
        for (const auto& r : model)
            if (r.coorientation == rec.coorientations[t]) row = &r;
        for (int k = 0; k < 6; ++k) {
            if (row->veer[k] < 0) continue;
            int e = cls[t][k];
            if (forced[e] >= 0 && forced[e] != row->veer[k]) {
                out.unsatisfiable = true;
                return out;
            }
            forced[e] = row->veer[k];
        }
    }
    for (int e = 0; e < ne; ++e)
        if (forced[e] < 0) out.undetermined.push_back(e);
    if (!out.undetermined.empty()) return out;
    out.ok = true;
    for (int e = 0; e < ne; ++e) out.veers.push_back(forced[e] == 0 ? Veer::L : Veer::R);
    out.per_slot.resize(n);
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 6; ++k) out.per_slot[t][k] = out.veers[cls[t][k]];
    return out;
}

TriangulationRecord with_inferred_veers(const TriangulationRecord& rec) {
    VeerInference inf = infer_veers(rec);
    if (inf.unsatisfiable)
        throw Error(ErrorCode::Unsatisfiable, "record", "taut structure admits no veering");
    if (!inf.ok) {
        std::string s;
        for (int e : inf.undetermined) s += (s.empty() ? "" : ",") + std::to_string(e);
        throw Error(ErrorCode::Ambiguous, "edges " + s, "veer not forced by any tetrahedron");
    }
    TriangulationRecord out = rec;
    out.veers = inf.per_slot;
    return out;
}

}  // namespace veerpoly
